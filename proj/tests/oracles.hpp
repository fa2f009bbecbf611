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

// Reference implementations used only by the tests. None of these share code
// paths with the library routines they check.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// J1 by its ascending series, summed until terms drop below 1e-18.
inline double j1_series(double x) {
  const double h = 0.5 * x;
  double term = h;  // k = 0
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= -h * h / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

/// exp(A) by scaling and squaring with a long Taylor series.
inline Matrix expm_taylor(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Matrix x = a * scale;
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

/// gamma(t) and beta(t) written out in expanded, unfactored form.
inline double gamma_expanded(double lambda, double tau, double t) {
  return lambda * t * t * (t - tau) * (t - tau) / std::pow(tau / 2.0, 4);
}

inline double beta_expanded(double tau, double t) {
  const double pi = std::numbers::pi;
  return -10.0 * pi * std::pow(t, 7) / std::pow(tau, 7) + 35.0 * pi * std::pow(t, 6) / std::pow(tau, 6) -
         42.0 * pi * std::pow(t, 5) / std::pow(tau, 5) + 35.0 * pi * std::pow(t, 4) / (2.0 * std::pow(tau, 4));
}

/// Five-point central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// theta_+ = int_0^tau beta_dot / sin(gamma) dt by composite Simpson on
/// [0, tau/2] (the integrand is symmetric about tau/2), with beta_dot from
/// the expanded polynomial derivative.
inline double theta_plus_simpson(double lambda, double tau, int intervals = 20000) {
  const double pi = std::numbers::pi;
  auto f = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double s = t / tau;
    const double beta_dot = pi * (-70 * std::pow(s, 6) + 210 * std::pow(s, 5) - 210 * std::pow(s, 4) + 70 * std::pow(s, 3)) / tau;
    return beta_dot / std::sin(gamma_expanded(lambda, tau, t));
  };
  const double a = 0.0, b = tau / 2.0;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int k = 1; k < intervals; ++k) sum += f(a + k * h) * ((k % 2) ? 4.0 : 2.0);
  return 2.0 * sum * h / 3.0;
}

/// Plain bisection on a decreasing function.
inline double bisect_decreasing(const std::function<double(double)>& f, double target, double lo, double hi) {
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (lo + hi);
    (f(m) > target ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
