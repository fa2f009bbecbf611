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

#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "nonrecip/device.hpp"
#include "nonrecip/statespace.hpp"

namespace nonrecip {

/// Anything callable as h(t) -> Matrix, with t in ns and H in rad/ns.
template <class H>
concept HamiltonianFunction =
    std::invocable<const H&, double> && std::convertible_to<std::invoke_result_t<const H&, double>, Matrix>;

enum class Integrator {
  RungeKutta4,           ///< classical fixed-step RK4
  PiecewiseExponential,  ///< exp(-i H(t + dt/2) dt) per step; closed systems only
};

struct PropagationConfig {
  double step = 0.05;  ///< ns
  Integrator method = Integrator::RungeKutta4;
  std::size_t record_stride = 100;

  void validate() const {
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("propagation step must be positive");
    if (record_stride == 0) throw DomainError("record stride must be at least 1");
  }

  /// The step must sample the fastest phase in H at least 20 times per period.
  void validate_resolution(double max_phase_rate) const {
    validate();
    if (max_phase_rate > 0.0 && step > kTwoPi / max_phase_rate / 20.0) {
      throw DomainError("propagation step " + std::to_string(step) + " ns does not resolve phases at " +
                        std::to_string(max_phase_rate) + " rad/ns (need <= " +
                        std::to_string(kTwoPi / max_phase_rate / 20.0) + " ns)");
    }
  }
};

template <class State>
struct Trajectory {
  Basis basis;
  std::vector<double> times;
  std::vector<State> states;

  const State& final() const { return states.back(); }
  double final_time() const { return times.back(); }
};

using PureTrajectory = Trajectory<Vector>;
using DensityTrajectory = Trajectory<Matrix>;

namespace detail {

inline std::size_t step_count(double tau, double step) {
  if (!(tau > 0.0)) throw DomainError("propagation time must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::ceil(tau / step - 1e-9))));
}

inline bool should_record(std::size_t k, std::size_t n, std::size_t stride) { return k % stride == 0 || k == n; }

}  // namespace detail

/// i d(psi)/dt = H(t) psi over [0, tau] with a fixed step (adjusted down so
/// that an integer number of steps lands exactly on tau).
template <HamiltonianFunction H>
PureTrajectory propagate_schrodinger(const H& h, const PureState& psi0, double tau, const PropagationConfig& cfg) {
  cfg.validate();
  const std::size_t n = detail::step_count(tau, cfg.step);
  const double dt = tau / static_cast<double>(n);

  PureTrajectory out{psi0.basis(), {}, {}};
  Vector psi = psi0.amplitudes();
  Vector k1, k2, k3, k4;
  for (std::size_t k = 0;; ++k) {
    const double t = (k == n) ? tau : dt * static_cast<double>(k);
    if (detail::should_record(k, n, cfg.record_stride)) {
      out.times.push_back(t);
      out.states.push_back(psi);
    }
    if (k == n) break;
    if (cfg.method == Integrator::PiecewiseExponential) {
      psi = exp_minus_i_h_dt(h(t + 0.5 * dt), dt) * psi;
    } else {
      const Matrix h_mid = h(t + 0.5 * dt);
      k1 = -kI * (Matrix(h(t)) * psi);
      k2 = -kI * (h_mid * (psi + 0.5 * dt * k1));
      k3 = -kI * (h_mid * (psi + 0.5 * dt * k2));
      k4 = -kI * (Matrix(h(t + dt)) * (psi + dt * k3));
      psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  const double drift = std::abs(psi.norm() - psi0.amplitudes().norm());
  if (drift > 1e-6) {
    throw IntegratorError("propagate_schrodinger: norm drift " + std::to_string(drift) + " (step too large)");
  }
  return out;
}

namespace detail {

/// d(rho)/dt = -i(A rho - rho A^dagger) + sum_k J_k rho J_k^dagger
/// with A = H - (i/2) sum_k J_k^dagger J_k and J_k = sqrt(Gamma_k) O_k.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const std::vector<LindbladChannel>& channels, Eigen::Index dim) {
    damping_ = Matrix::Zero(dim, dim);
    for (const auto& c : channels) {
      if (c.rate < 0.0) throw DomainError("negative Lindblad rate");
      if (c.rate == 0.0) continue;
      if (c.op.matrix().rows() != dim) throw DomainError("Lindblad operator dimension mismatch");
      const Matrix j = std::sqrt(c.rate) * c.op.matrix();
      damping_ += -0.5 * kI * (j.adjoint() * j);
      jumps_.push_back(j);
      jumps_adj_.push_back(j.adjoint());
    }
  }

  /// rho must be Hermitian; then (A rho)^dagger = rho A^dagger.
  void apply(const Matrix& h, const Matrix& rho, Matrix& out) {
    generator_ = h + damping_;
    scratch_.noalias() = generator_ * rho;
    out = -kI * scratch_;
    out += kI * scratch_.adjoint();
    for (std::size_t k = 0; k < jumps_.size(); ++k) {
      scratch_.noalias() = jumps_[k] * rho;
      out.noalias() += scratch_ * jumps_adj_[k];
    }
  }

 private:
  Matrix damping_;
  std::vector<Matrix> jumps_;
  std::vector<Matrix> jumps_adj_;
  Matrix generator_, scratch_;
};

}  // namespace detail

/// Lindblad master equation
///   d(rho)/dt = i[rho, H] + sum_k Gamma_k (O rho O^dagger - {O^dagger O, rho}/2)
/// integrated with fixed-step RK4 on the full density matrix. Every recorded
/// state is checked for trace, Hermiticity and positivity.
template <HamiltonianFunction H>
DensityTrajectory propagate_lindblad(const H& h, const std::vector<LindbladChannel>& channels,
                                     const DensityMatrix& rho0, double tau, const PropagationConfig& cfg) {
  cfg.validate();
  const std::size_t n = detail::step_count(tau, cfg.step);
  const double dt = tau / static_cast<double>(n);
  const auto dim = static_cast<Eigen::Index>(rho0.dim());
  detail::LindbladGenerator gen(channels, dim);

  DensityTrajectory out{rho0.basis(), {}, {}};
  Matrix rho = rho0.matrix();
  Matrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), probe(dim, dim);

  auto check = [&](double t) {
    const double trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
    const double herm = hermiticity_defect(rho);
    if (!rho.allFinite() || trace_error > 1e-6 || herm > 1e-6) {
      throw IntegratorError("propagate_lindblad: state lost trace/Hermiticity at t = " + std::to_string(t) + " ns");
    }
    const double lowest = DensityMatrix::min_eigenvalue(rho);
    if (lowest < -1e-6) {
      throw IntegratorError("propagate_lindblad: negative eigenvalue " + std::to_string(lowest) + " at t = " +
                            std::to_string(t) + " ns");
    }
  };

  for (std::size_t k = 0;; ++k) {
    const double t = (k == n) ? tau : dt * static_cast<double>(k);
    if (detail::should_record(k, n, cfg.record_stride)) {
      check(t);
      out.times.push_back(t);
      out.states.push_back(rho);
    }
    if (k == n) break;
    const Matrix h0 = h(t);
    const Matrix h_mid = h(t + 0.5 * dt);
    const Matrix h1 = h(t + dt);
    gen.apply(h0, rho, k1);
    probe = rho + 0.5 * dt * k1;
    gen.apply(h_mid, probe, k2);
    probe = rho + 0.5 * dt * k2;
    gen.apply(h_mid, probe, k3);
    probe = rho + dt * k3;
    gen.apply(h1, probe, k4);
    rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

/// Time-ordered product of exp(-i H(t_k + dt/2) dt) over [0, tau].
template <HamiltonianFunction H>
Operator evolution_operator_oracle(const H& h, const Basis& basis, double tau, const PropagationConfig& cfg) {
  cfg.validate();
  const std::size_t n = detail::step_count(tau, cfg.step);
  const double dt = tau / static_cast<double>(n);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Matrix u = Matrix::Identity(dim, dim);
  for (std::size_t k = 0; k < n; ++k) {
    u = exp_minus_i_h_dt(h(dt * (static_cast<double>(k) + 0.5)), dt) * u;
  }
  return Operator(basis, u);
}

}  // namespace nonrecip
