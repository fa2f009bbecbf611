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
#include <string>
#include <utility>
#include <vector>

#include "nonrecip/invariant.hpp"
#include "nonrecip/statespace.hpp"

/// Concrete Hamiltonians for a chain A - M - B of transmons in which A and B
/// are frequency-modulated and each couples only to M, plus the drive
/// synthesis that turns a requested effective coupling into a modulation
/// depth eta(t) through J1.
namespace nonrecip {

// First maximum of J1 and its value.
inline constexpr double kBesselJ1ArgMax = 1.8411837813406593;
inline constexpr double kBesselJ1Max = 0.58186522428159;

/// Requests above the J1 maximum by at most this relative amount saturate at
/// the maximum instead of failing.
inline constexpr double kDriveSaturationTolerance = 1e-3;

inline double bessel_j1(double x) {
  if (x < 0.0) return -std::cyl_bessel_j(1.0, -x);
  return std::cyl_bessel_j(1.0, x);
}

inline double bessel_j1_derivative(double x) {
  if (std::abs(x) < 1e-8) return 0.5;
  return std::cyl_bessel_j(0.0, std::abs(x)) - bessel_j1(x) / x;
}

/// eta in [0, argmax J1] with J1(eta) = y, for y in [0, max J1].
/// Safeguarded Newton: bisection keeps the bracket, Newton supplies the step.
inline double invert_bessel_j1(double y) {
  if (y < 0.0) return -invert_bessel_j1(-y);
  if (y == 0.0) return 0.0;
  if (y >= kBesselJ1Max) return kBesselJ1ArgMax;
  double lo = 0.0, hi = kBesselJ1ArgMax;
  double x = std::min(2.0 * y, 0.5 * (lo + hi));
  for (int iter = 0; iter < 100; ++iter) {
    const double f = bessel_j1(x) - y;
    if (f == 0.0) return x;
    (f > 0.0 ? hi : lo) = x;
    const double d = bessel_j1_derivative(x);
    double next = (d > 0.0) ? x - f / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-16 * std::max(1.0, x) || hi - lo < 4e-16) return next;
    x = next;
  }
  return x;
}

struct TransmonSpec {
  std::string label;
  double omega = 0.0;              ///< rad/ns
  double alpha = 0.0;              ///< anharmonicity, rad/ns
  double gamma_decoherence = 0.0;  ///< rad/ns

  void validate() const {
    if (!(alpha > 0.0)) throw DomainError("transmon " + label + ": anharmonicity must be positive");
    if (!(gamma_decoherence >= 0.0)) throw DomainError("transmon " + label + ": decoherence rate must be >= 0");
    if (!std::isfinite(omega)) throw DomainError("transmon " + label + ": frequency must be finite");
  }
};

struct ChainSpec {
  TransmonSpec a;
  TransmonSpec m;
  TransmonSpec b;
  double g_a = 0.0;   ///< static coupling A-M, rad/ns
  double g_b = 0.0;   ///< static coupling B-M, rad/ns
  double nu_a = 0.0;  ///< modulation frequency of A, rad/ns
  double nu_b = 0.0;
  int levels = 2;     ///< truncation per transmon, 2 or 3
  bool require_resonance = true;

  double delta_a() const { return a.omega - m.omega; }
  double delta_b() const { return b.omega - m.omega; }

  void validate() const {
    a.validate();
    m.validate();
    b.validate();
    if (levels != 2 && levels != 3) throw DomainError("chain truncation must be 2 or 3 levels");
    if (!(g_a > 0.0) || !(g_b > 0.0)) throw DomainError("chain couplings must be positive");
    if (require_resonance) {
      if (std::abs(delta_a() - nu_a) > 1e-9 * std::max(1.0, std::abs(nu_a)) ||
          std::abs(delta_b() - nu_b) > 1e-9 * std::max(1.0, std::abs(nu_b))) {
        throw DomainError("chain is not resonant: omega_j - omega_M must equal nu_j");
      }
    }
  }

  /// omega_M = 2 pi x 5 GHz, Delta = nu = 2 pi x 345 MHz, g = 2 pi x 10 MHz,
  /// alpha = 2 pi x {220, 210, 230} MHz, Gamma = 2 pi x {3, 4, 5} kHz.
  static ChainSpec defaults() {
    ChainSpec c;
    const double omega_m = ghz_to_rad_per_ns(5.0);
    const double delta = mhz_to_rad_per_ns(345.0);
    c.m = {"M", omega_m, mhz_to_rad_per_ns(210.0), khz_to_rad_per_ns(4.0)};
    c.a = {"A", omega_m + delta, mhz_to_rad_per_ns(220.0), khz_to_rad_per_ns(3.0)};
    c.b = {"B", omega_m + delta, mhz_to_rad_per_ns(230.0), khz_to_rad_per_ns(5.0)};
    c.g_a = c.g_b = mhz_to_rad_per_ns(10.0);
    c.nu_a = c.nu_b = delta;
    return c;
  }
};

/// Modulation depths eta_j(t) on the pulse grid; F_j(t) = eta_j(t) sin(nu_j t).
class DriveWaveform {
 public:
  DriveWaveform(std::vector<double> times, std::vector<double> eta_a, std::vector<double> eta_b, double nu_a,
                double nu_b)
      : times_(std::move(times)), eta_a_(std::move(eta_a)), eta_b_(std::move(eta_b)), nu_a_(nu_a), nu_b_(nu_b) {
    if (times_.size() < 2 || eta_a_.size() != times_.size() || eta_b_.size() != times_.size()) {
      throw DomainError("drive waveform: inconsistent sample counts");
    }
    for (std::size_t k = 0; k < times_.size(); ++k) {
      if (!(std::abs(eta_a_[k]) <= kBesselJ1ArgMax) || !(std::abs(eta_b_[k]) <= kBesselJ1ArgMax)) {
        throw DomainError("drive waveform: eta outside the principal branch of J1");
      }
    }
    step_ = times_.back() / static_cast<double>(times_.size() - 1);
  }

  /// Identically zero modulation over [0, tau].
  static DriveWaveform zero(double tau_ns, double nu_a, double nu_b) {
    return DriveWaveform({0.0, tau_ns}, {0.0, 0.0}, {0.0, 0.0}, nu_a, nu_b);
  }

  /// Constant modulation depth (used to probe the Jacobi-Anger reduction).
  static DriveWaveform constant(double tau_ns, double eta_a, double eta_b, double nu_a, double nu_b) {
    return DriveWaveform({0.0, tau_ns}, {eta_a, eta_a}, {eta_b, eta_b}, nu_a, nu_b);
  }

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& eta_a() const { return eta_a_; }
  const std::vector<double>& eta_b() const { return eta_b_; }
  double nu_a() const { return nu_a_; }
  double nu_b() const { return nu_b_; }
  double duration() const { return times_.back(); }

  /// Linearly interpolated (eta_a, eta_b).
  std::pair<double, double> eta_at(double t) const {
    const double tau = duration();
    if (!(t >= -1e-9 * tau && t <= tau * (1.0 + 1e-9))) {
      throw DomainError("drive waveform: t = " + std::to_string(t) + " ns outside [0, " + std::to_string(tau) + "]");
    }
    const std::size_t n = times_.size();
    const double x = std::clamp(t / step_, 0.0, static_cast<double>(n - 1));
    const std::size_t k = std::min(static_cast<std::size_t>(x), n - 2);
    const double w = x - static_cast<double>(k);
    return {(1.0 - w) * eta_a_[k] + w * eta_a_[k + 1], (1.0 - w) * eta_b_[k] + w * eta_b_[k + 1]};
  }

  /// (F_A(t), F_B(t))
  std::pair<double, double> phase_at(double t) const {
    const auto [ea, eb] = eta_at(t);
    return {ea * std::sin(nu_a_ * t), eb * std::sin(nu_b_ * t)};
  }

 private:
  std::vector<double> times_;
  std::vector<double> eta_a_;
  std::vector<double> eta_b_;
  double nu_a_ = 0.0;
  double nu_b_ = 0.0;
  double step_ = 0.0;
};

struct DriveSynthesis {
  DriveWaveform drives;
  double peak_ratio_a = 0.0;  ///< max_t g'_A / (2 g_A)
  double peak_ratio_b = 0.0;
  std::size_t saturated_samples = 0;
};

/// Solves 2 g_j J1(eta_j(t)) = g'_j(t) sample by sample. Requests above the
/// J1 maximum by less than kDriveSaturationTolerance (relative) are clamped
/// to the maximum and counted; anything larger throws UnattainableDriveError.
inline DriveSynthesis invert_bessel_drive(const PulsePair& pulses, const ChainSpec& chain) {
  if (!(chain.g_a > 0.0) || !(chain.g_b > 0.0)) throw DomainError("invert_bessel_drive: couplings must be positive");
  const std::size_t n = pulses.size();
  std::vector<double> eta_a(n), eta_b(n);
  DriveSynthesis out{DriveWaveform::zero(pulses.duration(), chain.nu_a, chain.nu_b), 0.0, 0.0, 0};

  double worst_ratio = 0.0, worst_time = 0.0;
  auto invert = [&](double g_prime, double g, double t, double& peak) {
    const double ratio = g_prime / (2.0 * g);
    peak = std::max(peak, std::abs(ratio));
    if (std::abs(ratio) > worst_ratio) {
      worst_ratio = std::abs(ratio);
      worst_time = t;
    }
    if (std::abs(ratio) > kBesselJ1Max) {
      if (std::abs(ratio) > kBesselJ1Max * (1.0 + kDriveSaturationTolerance)) return std::nan("");
      ++out.saturated_samples;
    }
    return invert_bessel_j1(ratio);
  };

  for (std::size_t k = 0; k < n; ++k) {
    const double t = pulses.times()[k];
    eta_a[k] = invert(pulses.g_a()[k], chain.g_a, t, out.peak_ratio_a);
    eta_b[k] = invert(pulses.g_b()[k], chain.g_b, t, out.peak_ratio_b);
  }
  auto is_nan = [](double v) { return std::isnan(v); };
  if (std::any_of(eta_a.begin(), eta_a.end(), is_nan) || std::any_of(eta_b.begin(), eta_b.end(), is_nan)) {
    throw UnattainableDriveError("requested effective coupling g'/(2g) = " + std::to_string(worst_ratio) +
                                     " exceeds max J1 = " + std::to_string(kBesselJ1Max) + " at t = " +
                                     std::to_string(worst_time) + " ns",
                                 worst_time, worst_ratio);
  }
  eta_a.front() = eta_a.back() = 0.0;
  eta_b.front() = eta_b.back() = 0.0;
  out.drives = DriveWaveform(pulses.times(), std::move(eta_a), std::move(eta_b), chain.nu_a, chain.nu_b);
  return out;
}

/// {|100>, |010>, |001>}: exactly one of A, M, B excited.
inline Basis single_excitation_basis() { return Basis({"100", "010", "001"}); }

/// (g'_A/2)|100><010| + (g'_B/2)|001><010| + h.c.
inline Operator ideal_hamiltonian(const PulsePair& pulses, double t) {
  return Operator(single_excitation_basis(), three_level_hamiltonian(pulses.at(t)));
}

/// Raw 3x3 form of single_excitation_hamiltonian.
inline Matrix single_excitation_matrix(const ChainSpec& chain, const DriveWaveform& drives, double t) {
  const auto [fa, fb] = drives.phase_at(t);
  Matrix h = Matrix::Zero(3, 3);
  h(0, 1) = chain.g_a * std::exp(kI * (chain.delta_a() * t - fa));
  h(2, 1) = chain.g_b * std::exp(kI * (chain.delta_b() * t - fb));
  h(1, 0) = std::conj(h(0, 1));
  h(1, 2) = std::conj(h(2, 1));
  return h;
}

/// g_A|100><010| e^{i Delta_A t - i F_A(t)} + g_B|001><010| e^{i Delta_B t - i F_B(t)} + h.c.
inline Operator single_excitation_hamiltonian(const ChainSpec& chain, const DriveWaveform& drives, double t) {
  return Operator(single_excitation_basis(), single_excitation_matrix(chain, drives, t));
}

/// Product basis |a m b> of three d-level transmons, A-major.
inline Basis chain_basis(int levels) {
  const Basis one = Basis::levels(static_cast<std::size_t>(levels));
  return tensor_basis(tensor_basis(one, one), one);
}

inline std::size_t chain_index(int levels, int a, int m, int b) {
  return static_cast<std::size_t>((a * levels + m) * levels + b);
}

/// Positions of |100>, |010>, |001> in chain_basis(levels).
inline std::array<std::size_t, 3> single_excitation_indices(int levels) {
  return {chain_index(levels, 1, 0, 0), chain_index(levels, 0, 1, 0), chain_index(levels, 0, 0, 1)};
}

/// Places a 3x3 single-excitation block into the product space; other entries are zero.
inline Matrix embed_single_excitation(const Matrix& block, int levels) {
  const auto idx = single_excitation_indices(levels);
  const auto n = static_cast<Eigen::Index>(chain_index(levels, levels - 1, levels - 1, levels - 1) + 1);
  Matrix out = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      out(static_cast<Eigen::Index>(idx[i]), static_cast<Eigen::Index>(idx[j])) =
          block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return out;
}

namespace detail {

inline Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  }
  return out;
}

inline Matrix kron3(const Matrix& a, const Matrix& m, const Matrix& b) { return kron(kron(a, m), b); }

/// sum_n sqrt(n+1) |n><n+1|
inline Matrix lowering(int levels) {
  Matrix l = Matrix::Zero(levels, levels);
  for (int n = 0; n + 1 < levels; ++n) l(n, n + 1) = std::sqrt(static_cast<double>(n + 1));
  return l;
}

}  // namespace detail

/// Rotating-frame Hamiltonian of the full chain, counter-rotating terms kept:
///   H(t) = sum_{j=A,B} g_j X_j(t) (x) X_M(t) - sum_j alpha_j |2><2|_j
/// with X_j = a_j e^{-i omega_j t + i F_j(t)} + h.c. and a_j the truncated
/// ladder operator (the |2> terms only exist for three levels).
///
/// The static pieces are assembled once; matrix(t) only combines them with
/// the time-dependent phase factors.
class ChainHamiltonian {
 public:
  ChainHamiltonian(ChainSpec chain, DriveWaveform drives) : chain_(std::move(chain)), drives_(std::move(drives)) {
    chain_.validate();
    const int d = chain_.levels;
    const Matrix l = detail::lowering(d);
    const Matrix id = Matrix::Identity(d, d);
    lower_lower_a_ = detail::kron3(l, l, id);
    lower_raise_a_ = detail::kron3(l, l.adjoint(), id);
    lower_lower_b_ = detail::kron3(id, l, l);
    lower_raise_b_ = detail::kron3(id, l.adjoint(), l);
    static_ = Matrix::Zero(lower_lower_a_.rows(), lower_lower_a_.cols());
    if (d == 3) {
      Matrix two = Matrix::Zero(3, 3);
      two(2, 2) = 1.0;
      static_ -= chain_.a.alpha * detail::kron3(two, id, id);
      static_ -= chain_.m.alpha * detail::kron3(id, two, id);
      static_ -= chain_.b.alpha * detail::kron3(id, id, two);
    }
  }

  Matrix matrix(double t) const {
    const auto [fa, fb] = drives_.phase_at(t);
    const Complex ca = std::exp(kI * (fa - chain_.a.omega * t));
    const Complex cb = std::exp(kI * (fb - chain_.b.omega * t));
    const Complex cm = std::exp(-kI * chain_.m.omega * t);
    Matrix upper = chain_.g_a * (ca * cm * lower_lower_a_ + ca * std::conj(cm) * lower_raise_a_) +
                   chain_.g_b * (cb * cm * lower_lower_b_ + cb * std::conj(cm) * lower_raise_b_);
    Matrix h = static_;
    h += upper;
    h += upper.adjoint();
    return h;
  }

  Operator at(double t) const { return Operator(chain_basis(chain_.levels), matrix(t)); }

  const ChainSpec& chain() const { return chain_; }

 private:
  ChainSpec chain_;
  DriveWaveform drives_;
  Matrix lower_lower_a_, lower_raise_a_, lower_lower_b_, lower_raise_b_;
  Matrix static_;
};

inline Operator full_chain_hamiltonian(const ChainSpec& chain, const DriveWaveform& drives, double t) {
  return ChainHamiltonian(chain, drives).at(t);
}

/// Total excitation number sum_k n_k on the chain space.
inline Matrix excitation_number(int levels) {
  Matrix n = Matrix::Zero(levels, levels);
  for (int k = 0; k < levels; ++k) n(k, k) = k;
  const Matrix id = Matrix::Identity(levels, levels);
  return detail::kron3(n, id, id) + detail::kron3(id, n, id) + detail::kron3(id, id, n);
}

struct LindbladChannel {
  std::string transmon;
  Operator op;
  double rate = 0.0;  ///< rad/ns
};

/// O = |0><1| + |0><0| - |1><1| on a single transmon; zero on |2> if present.
inline Matrix decoherence_operator(int levels) {
  Matrix o = Matrix::Zero(levels, levels);
  o(0, 1) = 1.0;
  o(0, 0) = 1.0;
  o(1, 1) = -1.0;
  return o;
}

/// One channel per transmon, embedded by identities on the other two.
inline std::vector<LindbladChannel> lindblad_channels(const ChainSpec& chain, int levels) {
  if (levels != 2 && levels != 3) throw DomainError("lindblad_channels: truncation must be 2 or 3");
  const Matrix o = decoherence_operator(levels);
  const Matrix id = Matrix::Identity(levels, levels);
  const Basis basis = chain_basis(levels);
  return {
      {"A", Operator(basis, detail::kron3(o, id, id)), chain.a.gamma_decoherence},
      {"M", Operator(basis, detail::kron3(id, o, id)), chain.m.gamma_decoherence},
      {"B", Operator(basis, detail::kron3(id, id, o)), chain.b.gamma_decoherence},
  };
}

}  // namespace nonrecip
