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
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nonrecip/parallel.hpp"
#include "nonrecip/quadrature.hpp"
#include "nonrecip/statespace.hpp"
#include "nonrecip/trajectory.hpp"

/// Invariant-based design of the two coupling pulses.
///
/// The invariant I(t) of the three-level Hamiltonian
///   H(t) = g'_A(t)/2 (|A><M| + h.c.) + g'_B(t)/2 (|B><M| + h.c.)
/// is parameterised by two angles gamma(t), beta(t). Choosing the angles fixes
/// the pulses, and the evolution over [0, tau] is
///   U(tau) = sum_n exp(-i theta_n) |mu_n(tau)><mu_n(0)|,
/// with theta_n the phase accumulated by eigenstate mu_n of I.
namespace nonrecip {

inline Basis three_level_basis() { return Basis({"A", "M", "B"}); }

struct PulseSample {
  double g_a = 0.0;
  double g_b = 0.0;
};

/// Effective couplings required by the trajectory at time t (rad/ns).
template <AuxiliaryTrajectory T>
PulseSample coupling_at(const T& traj, double t) {
  const TrajectoryPoint p = traj.at(t);
  const double beta_dot_cot_gamma = std::cos(p.gamma) * p.beta_dot_over_sin_gamma;
  const double sb = std::sin(p.beta);
  const double cb = std::cos(p.beta);
  return {2.0 * (beta_dot_cot_gamma * sb + p.gamma_dot * cb), 2.0 * (beta_dot_cot_gamma * cb - p.gamma_dot * sb)};
}

/// H = g_a/2 (|0><1| + h.c.) + g_b/2 (|2><1| + h.c.) in the ordering (A, M, B).
inline Matrix three_level_hamiltonian(const PulseSample& g) {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 1) = h(1, 0) = 0.5 * g.g_a;
  h(2, 1) = h(1, 2) = 0.5 * g.g_b;
  return h;
}

/// Sampled effective couplings g'_A(t), g'_B(t) on a uniform grid over [0, tau].
class PulsePair {
 public:
  PulsePair(std::vector<double> times, std::vector<double> g_a, std::vector<double> g_b)
      : times_(std::move(times)), g_a_(std::move(g_a)), g_b_(std::move(g_b)) {
    if (times_.size() < 2) throw DomainError("pulse table needs at least two samples");
    if (g_a_.size() != times_.size() || g_b_.size() != times_.size()) {
      throw DomainError("pulse table columns have different lengths");
    }
    if (times_.front() != 0.0) throw DomainError("pulse table must start at t = 0");
    step_ = times_.back() / static_cast<double>(times_.size() - 1);
    for (std::size_t k = 0; k < times_.size(); ++k) {
      if (std::abs(times_[k] - step_ * static_cast<double>(k)) > 1e-9 * times_.back()) {
        throw DomainError("pulse table grid is not uniform");
      }
      if (!std::isfinite(g_a_[k]) || !std::isfinite(g_b_[k])) throw DomainError("pulse table has non-finite samples");
    }
    for (std::size_t k : {std::size_t{0}, times_.size() - 1}) {
      if (std::abs(g_a_[k]) > 1e-9 || std::abs(g_b_[k]) > 1e-9) {
        throw DomainError("pulses must vanish at t = 0 and t = tau");
      }
    }
  }

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& g_a() const { return g_a_; }
  const std::vector<double>& g_b() const { return g_b_; }
  std::size_t size() const { return times_.size(); }
  double duration() const { return times_.back(); }
  double step() const { return step_; }

  /// Linear interpolation between samples.
  PulseSample at(double t) const {
    const double tau = duration();
    if (!(t >= -1e-9 * tau && t <= tau * (1.0 + 1e-9))) {
      throw DomainError("pulse table: t = " + std::to_string(t) + " ns outside [0, " + std::to_string(tau) + "]");
    }
    const double x = std::clamp(t / step_, 0.0, static_cast<double>(size() - 1));
    const std::size_t k = std::min(static_cast<std::size_t>(x), size() - 2);
    const double w = x - static_cast<double>(k);
    return {(1.0 - w) * g_a_[k] + w * g_a_[k + 1], (1.0 - w) * g_b_[k] + w * g_b_[k + 1]};
  }

  PulsePair scaled(double factor_a, double factor_b) const {
    std::vector<double> a = g_a_;
    std::vector<double> b = g_b_;
    for (auto& v : a) v *= factor_a;
    for (auto& v : b) v *= factor_b;
    return PulsePair(times_, std::move(a), std::move(b));
  }

 private:
  std::vector<double> times_;
  std::vector<double> g_a_;
  std::vector<double> g_b_;
  double step_ = 0.0;
};

inline constexpr std::size_t kDefaultPulseSamples = 2001;

template <AuxiliaryTrajectory T>
PulsePair synthesize_pulses(const T& traj, std::size_t n_samples = kDefaultPulseSamples) {
  if (n_samples < 2) throw DomainError("synthesize_pulses: need at least two samples");
  const double tau = traj.duration();
  std::vector<double> times(n_samples), g_a(n_samples), g_b(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double t = (k + 1 == n_samples) ? tau : tau * static_cast<double>(k) / static_cast<double>(n_samples - 1);
    times[k] = t;
    if (k != 0 && k + 1 != n_samples) {
      const TrajectoryPoint p = traj.at(t);
      if (!(p.gamma > 0.0)) {
        throw DomainError("synthesize_pulses: gamma is not positive at t = " + std::to_string(t) + " ns");
      }
    }
    const PulseSample g = coupling_at(traj, t);
    if (!std::isfinite(g.g_a) || !std::isfinite(g.g_b)) {
      throw DomainError("synthesize_pulses: pulses diverge at t = " + std::to_string(t) + " ns (sin gamma = 0)");
    }
    g_a[k] = g.g_a;
    g_b[k] = g.g_b;
  }
  return PulsePair(std::move(times), std::move(g_a), std::move(g_b));
}

struct InvariantSpec {
  double mu = 1.0;  ///< rad/ns

  void validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("invariant scale mu must be positive");
  }
};

/// I(t) = (mu/2) [[0, cg sb, -i sg], [cg sb, 0, cg cb], [i sg, cg cb, 0]] as a raw matrix.
inline Matrix invariant_matrix(const TrajectoryPoint& p, double mu) {
  const double cg = std::cos(p.gamma), sg = std::sin(p.gamma);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  Matrix m(3, 3);
  m << 0.0, cg * sb, -kI * sg,
       cg * sb, 0.0, cg * cb,
       kI * sg, cg * cb, 0.0;
  return 0.5 * mu * m;
}

/// dI/dt by differentiating the closed form.
inline Matrix invariant_rate_matrix(const TrajectoryPoint& p, double mu) {
  const double cg = std::cos(p.gamma), sg = std::sin(p.gamma);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  const double d_cgsb = -sg * p.gamma_dot * sb + cg * cb * p.beta_dot;
  const double d_sg = cg * p.gamma_dot;
  const double d_cgcb = -sg * p.gamma_dot * cb - cg * sb * p.beta_dot;
  Matrix m(3, 3);
  m << 0.0, d_cgsb, -kI * d_sg,
       d_cgsb, 0.0, d_cgcb,
       kI * d_sg, d_cgcb, 0.0;
  return 0.5 * mu * m;
}

template <AuxiliaryTrajectory T>
Operator invariant_at(const T& traj, const InvariantSpec& spec, double t) {
  spec.validate();
  return Operator(three_level_basis(), invariant_matrix(traj.at(t), spec.mu));
}

/// Eigenvectors of I(t) with eigenvalues 0, +mu/2, -mu/2 (in that order),
/// together with their time derivatives.
struct EigenFrame {
  std::array<Vector, 3> states;
  std::array<Vector, 3> rates;
};

inline EigenFrame eigen_frame(const TrajectoryPoint& p) {
  const double cg = std::cos(p.gamma), sg = std::sin(p.gamma);
  const double cb = std::cos(p.beta), sb = std::sin(p.beta);
  const double gd = p.gamma_dot, bd = p.beta_dot;
  const double r = 1.0 / std::sqrt(2.0);

  EigenFrame f;
  f.states[0] = Vector(3);
  f.states[0] << cg * cb, -kI * sg, -cg * sb;
  f.rates[0] = Vector(3);
  f.rates[0] << -sg * cb * gd - cg * sb * bd, -kI * cg * gd, sg * sb * gd - cg * cb * bd;

  for (int k : {1, 2}) {
    const double pm = (k == 1) ? 1.0 : -1.0;
    f.states[k] = Vector(3);
    f.states[k] << sg * cb + pm * kI * sb, kI * cg, -sg * sb + pm * kI * cb;
    f.states[k] *= r;
    f.rates[k] = Vector(3);
    f.rates[k] << cg * cb * gd - sg * sb * bd + pm * kI * cb * bd, -kI * sg * gd,
        -cg * sb * gd - sg * cb * bd - pm * kI * sb * bd;
    f.rates[k] *= r;
  }
  return f;
}

struct InvariantEigenstates {
  PureState zero;
  PureState plus;
  PureState minus;
};

template <AuxiliaryTrajectory T>
InvariantEigenstates invariant_eigenstates(const T& traj, double t) {
  const EigenFrame f = eigen_frame(traj.at(t));
  const Basis basis = three_level_basis();
  return {PureState(basis, f.states[0]), PureState(basis, f.states[1]), PureState(basis, f.states[2])};
}

/// Phases theta_n in U(tau) = sum_n exp(-i theta_n) |mu_n(tau)><mu_n(0)|.
struct LRPhaseResult {
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double theta_zero = 0.0;
};

/// theta reduced into [0, 2 pi).
inline double reduce_phase(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

/// Rate of theta_n: <mu_n| H - i d/dt |mu_n>. Real for an exact invariant.
inline double phase_rate(const EigenFrame& f, const Matrix& h, std::size_t n) {
  const Vector& mu = f.states[n];
  const Complex value = mu.dot(h * mu) - kI * mu.dot(f.rates[n]);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("lr_phase: non-finite phase integrand");
  }
  return value.real();
}

inline constexpr double kPhaseQuadratureTolerance = 1e-10;

/// Closed form of theta_+: integral of beta_dot / sin(gamma) over [0, tau].
template <AuxiliaryTrajectory T>
double lr_phase_closed_form(const T& traj, double tol = kPhaseQuadratureTolerance) {
  return adaptive_simpson([&](double t) { return traj.at(t).beta_dot_over_sin_gamma; }, 0.0, traj.duration(), tol)
      .value;
}

/// Integrates <mu_n| H - i d/dt |mu_n> for each eigenstate of the invariant.
/// H is rebuilt from the trajectory at every quadrature node; the pulse table
/// is required to be the sampled form of that same trajectory.
template <AuxiliaryTrajectory T>
LRPhaseResult lr_phase(const T& traj, const PulsePair& pulses, double tol = kPhaseQuadratureTolerance) {
  if (std::abs(pulses.duration() - traj.duration()) > 1e-9 * traj.duration()) {
    throw DomainError("lr_phase: pulse table and trajectory durations differ");
  }
  for (std::size_t k = 0; k < pulses.size(); ++k) {
    const PulseSample g = coupling_at(traj, pulses.times()[k]);
    if (std::abs(g.g_a - pulses.g_a()[k]) > 1e-9 || std::abs(g.g_b - pulses.g_b()[k]) > 1e-9) {
      throw DomainError("lr_phase: pulses were not synthesized from this trajectory");
    }
  }
  auto integrate = [&](std::size_t n) {
    return adaptive_simpson(
               [&](double t) {
                 const TrajectoryPoint p = traj.at(t);
                 return phase_rate(eigen_frame(p), three_level_hamiltonian(coupling_at(traj, t)), n);
               },
               0.0, traj.duration(), tol)
        .value;
  };
  return {integrate(1), integrate(2), integrate(0)};
}

/// Closed-form circulator family in basis (A, M, B):
///   [[0, -i sin th, cos th], [0, cos th, -i sin th], [-1, 0, 0]]
inline Operator target_unitary(double theta_plus) {
  const double c = std::cos(theta_plus), s = std::sin(theta_plus);
  Matrix u(3, 3);
  u << 0.0, -kI * s, c,
       0.0, c, -kI * s,
       -1.0, 0.0, 0.0;
  return Operator(three_level_basis(), u);
}

/// sum_n exp(-i theta_n) |mu_n(tau)><mu_n(0)|
template <AuxiliaryTrajectory T>
Operator lr_predicted_evolution(const T& traj, const PulsePair& pulses, const InvariantSpec& spec) {
  spec.validate();
  const LRPhaseResult phases = lr_phase(traj, pulses);
  const EigenFrame start = eigen_frame(traj.at(0.0));
  const EigenFrame end = eigen_frame(traj.at(traj.duration()));
  const std::array<double, 3> theta{phases.theta_zero, phases.theta_plus, phases.theta_minus};
  Matrix u = Matrix::Zero(3, 3);
  for (std::size_t n = 0; n < 3; ++n) {
    u += std::exp(-kI * theta[n]) * end.states[n] * start.states[n].adjoint();
  }
  return Operator(three_level_basis(), u);
}

struct BoundaryDiagnostics {
  double commutator_start = 0.0;  ///< ||[H(0), I(0)]||_F
  double commutator_end = 0.0;    ///< ||[H(tau), I(tau)]||_F
  double max_residual = 0.0;      ///< max_k ||dI/dt + i[H, I]||_F over the pulse grid
  double worst_time_ns = 0.0;
};

/// Checks the invariant condition dI/dt + i[H, I] = 0 at every sample of the
/// pulse table, using the tabulated couplings for H.
template <AuxiliaryTrajectory T>
BoundaryDiagnostics check_boundary(const T& traj, const PulsePair& pulses, const InvariantSpec& spec) {
  spec.validate();
  BoundaryDiagnostics d;
  for (std::size_t k = 0; k < pulses.size(); ++k) {
    const double t = pulses.times()[k];
    const TrajectoryPoint p = traj.at(std::min(t, traj.duration()));
    const Matrix h = three_level_hamiltonian({pulses.g_a()[k], pulses.g_b()[k]});
    const Matrix inv = invariant_matrix(p, spec.mu);
    const double residual = (invariant_rate_matrix(p, spec.mu) + kI * commutator(h, inv)).norm();
    if (residual > d.max_residual) {
      d.max_residual = residual;
      d.worst_time_ns = t;
    }
    if (k == 0) d.commutator_start = commutator(h, inv).norm();
    if (k + 1 == pulses.size()) d.commutator_end = commutator(h, inv).norm();
  }
  return d;
}

/// theta_+ for the polynomial family at given (lambda, tau).
inline double polynomial_phase(double lambda, double tau_ns) {
  return lr_phase_closed_form(PolynomialTrajectory(lambda, tau_ns));
}

inline constexpr int kMonotonicityScanPoints = 32;

/// Bisection for phase(lambda) = target on [lo, hi]. The bracket is scanned at
/// 32 points first; it must be strictly monotonic and contain the target.
template <class PhaseFn>
double solve_for_phase(PhaseFn&& phase, double target, double lo, double hi, double tol = 1e-9) {
  if (!(lo < hi)) throw RootFindingError("solve_lambda: empty bracket");
  std::vector<double> scan(kMonotonicityScanPoints);
  for (int k = 0; k < kMonotonicityScanPoints; ++k) {
    scan[k] = phase(lo + (hi - lo) * k / (kMonotonicityScanPoints - 1));
  }
  const bool increasing = scan.back() > scan.front();
  for (int k = 1; k < kMonotonicityScanPoints; ++k) {
    if ((scan[k] > scan[k - 1]) != increasing || scan[k] == scan[k - 1]) {
      throw RootFindingError("solve_lambda: phase is not monotonic on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
  }
  double f_lo = scan.front() - target;
  const double f_hi = scan.back() - target;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw RootFindingError("solve_lambda: target phase " + std::to_string(target) + " not bracketed by [" +
                           std::to_string(scan.front()) + ", " + std::to_string(scan.back()) + "]");
  }
  double a = lo, b = hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double m = 0.5 * (a + b);
    const double f_m = phase(m) - target;
    if (std::abs(f_m) < tol || (b - a) < 1e-14) return m;
    if ((f_m > 0.0) == (f_lo > 0.0)) {
      a = m;
      f_lo = f_m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// lambda such that theta_+ of the polynomial family equals target_phase.
inline double solve_lambda(double target_phase, double tau_ns, std::pair<double, double> bracket = {0.1, 1.0}) {
  return solve_for_phase([&](double lambda) { return polynomial_phase(lambda, tau_ns); }, target_phase,
                         bracket.first, bracket.second);
}

struct PhaseSweepPoint {
  double lambda = 0.0;
  double theta_plus = 0.0;          ///< raw integral
  double theta_plus_reduced = 0.0;  ///< modulo 2 pi
};

struct PhaseSweep {
  std::vector<PhaseSweepPoint> points;
  bool monotonic_decreasing = false;
};

/// theta_+ over n evenly spaced lambda values; independent points run on `jobs` threads.
inline PhaseSweep lambda_sweep(double tau_ns, double lo, double hi, std::size_t n, std::size_t jobs = 1) {
  if (!(lo > 0.0) || !(lo < hi)) throw DomainError("lambda sweep needs 0 < lo < hi");
  if (n < 2) throw DomainError("lambda sweep needs at least two points");
  PhaseSweep sweep;
  sweep.points = parallel_map(n, jobs, [&](std::size_t k) {
    const double lambda = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    double theta = 0.0;
    try {
      theta = polynomial_phase(lambda, tau_ns);
    } catch (const Error& e) {
      throw DomainError("lambda sweep failed at lambda = " + std::to_string(lambda) + ": " + e.what());
    }
    return PhaseSweepPoint{lambda, theta, reduce_phase(theta)};
  });
  sweep.monotonic_decreasing = true;
  for (std::size_t k = 1; k < sweep.points.size(); ++k) {
    if (!(sweep.points[k].theta_plus < sweep.points[k - 1].theta_plus)) sweep.monotonic_decreasing = false;
  }
  return sweep;
}

}  // namespace nonrecip
