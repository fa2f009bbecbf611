// Copyright 2026 The nonrecip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <string>

#include "nonrecip/units.hpp"

namespace nonrecip {

/// Auxiliary angles of the invariant and their time derivatives at one instant.
///
/// `beta_dot_over_sin_gamma` is the one combination that is singular-looking
/// at the endpoints (gamma -> 0); trajectories supply it in a cancellation-free
/// form so that both the pulses and the phase integrand stay accurate there.
struct TrajectoryPoint {
  double gamma = 0.0;
  double beta = 0.0;
  double gamma_dot = 0.0;
  double beta_dot = 0.0;
  double beta_dot_over_sin_gamma = 0.0;
};

template <class T>
concept AuxiliaryTrajectory = requires(const T& tr, double t) {
  { tr.duration() } -> std::convertible_to<double>;
  { tr.at(t) } -> std::same_as<TrajectoryPoint>;
};

/// gamma(t) = lambda * t^2 (t - tau)^2 / (tau/2)^4
/// beta(t)  = pi * (-10 s^7 + 35 s^6 - 42 s^5 + 35/2 s^4),  s = t / tau
///
/// Boundary values: gamma(0) = gamma(tau) = 0, beta(0) = 0, beta(tau) = pi/2,
/// and gamma_dot, beta_dot vanish at both ends.
class PolynomialTrajectory {
 public:
  PolynomialTrajectory(double lambda, double tau_ns) : lambda_(lambda), tau_(tau_ns) {
    if (!(tau_ns > 0.0) || !std::isfinite(tau_ns)) throw DomainError("trajectory: tau must be positive");
    // lambda is the peak of gamma, so gamma > 0 on (0, tau) iff lambda > 0.
    // Beyond lambda = pi, sin(gamma) changes sign and the pulses diverge.
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw DomainError("trajectory: lambda must be positive, got " + std::to_string(lambda));
    }
  }

  double lambda() const { return lambda_; }
  double duration() const { return tau_; }

  TrajectoryPoint at(double t) const {
    const double slack = 1e-12 * tau_;
    if (!(t >= -slack && t <= tau_ + slack)) {
      throw DomainError("trajectory: t = " + std::to_string(t) + " ns outside [0, " + std::to_string(tau_) + "]");
    }
    const double s = std::clamp(t / tau_, 0.0, 1.0);
    const double r = 1.0 - s;
    const double u = s * r;  // t(tau - t) / tau^2

    TrajectoryPoint p;
    p.gamma = 16.0 * lambda_ * u * u;
    p.gamma_dot = 32.0 * lambda_ * u * (r - s) / tau_;
    p.beta = kPi * s * s * s * s * (17.5 + s * (-42.0 + s * (35.0 - 10.0 * s)));
    p.beta_dot = 70.0 * kPi * u * u * u / tau_;
    // beta_dot / sin(gamma) = 70 pi u / (16 lambda tau) * gamma / sin(gamma)
    p.beta_dot_over_sin_gamma = 70.0 * kPi * u / (16.0 * lambda_ * tau_) * gamma_over_sin(p.gamma);
    return p;
  }

 private:
  static double gamma_over_sin(double g) {
    if (std::abs(g) < 1e-4) return 1.0 + g * g / 6.0;
    return g / std::sin(g);
  }

  double lambda_;
  double tau_;
};

static_assert(AuxiliaryTrajectory<PolynomialTrajectory>);

}  // namespace nonrecip
