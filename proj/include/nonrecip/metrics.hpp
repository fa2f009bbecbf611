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
#include <vector>

#include "nonrecip/models.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/propagation.hpp"

namespace nonrecip {

struct TransferReport {
  std::string model;
  bool noise = false;
  std::string initial;
  PureState target;  ///< in single_excitation_basis()
  double fidelity = 0.0;
  double final_leakage = 0.0;
  std::vector<double> times;
  std::array<std::vector<double>, 3> populations;  ///< |100>, |010>, |001>
  std::vector<double> leakage;                     ///< 1 - sum of the three populations
  std::vector<double> fidelity_curve;
  Matrix final_rho;
};

struct EnsembleReport {
  std::string model;
  bool noise = false;
  std::size_t count = 0;
  double theta_min = 0.0;
  double theta_max = kTwoPi;
  double fidelity = 0.0;  ///< F_m
  std::vector<double> times;
  std::vector<double> fidelity_curve;
};

namespace detail {

/// Amplitudes of a single-excitation vector placed into the model basis.
inline Vector lift(const Model& model, const Vector& block) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(model.basis.size()));
  for (std::size_t i = 0; i < 3; ++i) v(static_cast<Eigen::Index>(model.single_excitation[i])) = block(i);
  return v;
}

/// rho(t) at the recorded times, from a pure or a Lindblad run as appropriate.
inline std::pair<std::vector<double>, std::vector<Matrix>> evolve(const Model& model, const Vector& psi0,
                                                                  const PropagationConfig& cfg) {
  const PureState start(model.basis, psi0);
  if (model.open()) {
    auto traj = propagate_lindblad(model, model.channels, DensityMatrix::from_pure(start), model.duration, cfg);
    return {std::move(traj.times), std::move(traj.states)};
  }
  auto traj = propagate_schrodinger(model, start, model.duration, cfg);
  std::vector<Matrix> rhos;
  rhos.reserve(traj.states.size());
  for (const auto& psi : traj.states) rhos.push_back(psi * psi.adjoint());
  return {std::move(traj.times), std::move(rhos)};
}

}  // namespace detail

/// F_s = <target| rho(tau) |target> after starting in basis state `initial`
/// ("100", "010" or "001"), with population and leakage curves.
inline TransferReport transfer_fidelity(const Model& model, const std::string& initial, const PureState& target,
                                        const PropagationConfig& cfg) {
  if (target.dim() != 3) throw DomainError("transfer_fidelity: target must live in the single-excitation basis");
  const Basis se = single_excitation_basis();
  Vector block = Vector::Zero(3);
  block(static_cast<Eigen::Index>(se.index_of(initial))) = 1.0;
  const Vector target_full = detail::lift(model, target.amplitudes());

  auto [times, rhos] = detail::evolve(model, detail::lift(model, block), cfg);
  TransferReport r{to_string(model.kind), model.open(), initial, target, 0.0, 0.0, times, {}, {}, {}, rhos.back()};
  for (const Matrix& rho : rhos) {
    double total = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto k = static_cast<Eigen::Index>(model.single_excitation[i]);
      r.populations[i].push_back(rho(k, k).real());
      total += rho(k, k).real();
    }
    r.leakage.push_back(1.0 - total);
    r.fidelity_curve.push_back(std::clamp(expectation(target_full, rho).real(), 0.0, 1.0));
  }
  r.fidelity = r.fidelity_curve.back();
  r.final_leakage = r.leakage.back();
  return r;
}

/// Initial and target states of ensemble member theta:
///   cos(theta)|010> + sin(theta)|001>  ->  i cos(theta)|100> + i sin(theta)|010>
inline std::pair<Vector, Vector> ensemble_member(double theta) {
  Vector in = Vector::Zero(3), out = Vector::Zero(3);
  in(1) = std::cos(theta);
  in(2) = std::sin(theta);
  out(0) = kI * std::cos(theta);
  out(1) = kI * std::sin(theta);
  return {in, out};
}

/// Trapezoidal weights for `count` points spanning [0, 2 pi] inclusive; they sum to 1.
inline std::vector<double> ensemble_weights(std::size_t count) {
  std::vector<double> w(count, 1.0 / static_cast<double>(count - 1));
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

/// F_m: trapezoidal average over theta in [0, 2 pi] of the member fidelities.
/// Members run independently on `jobs` threads; sums are taken in index order.
inline EnsembleReport ensemble_fidelity(const Model& model, std::size_t count, const PropagationConfig& cfg,
                                        std::size_t jobs = 1) {
  if (count < 2) throw DomainError("ensemble_fidelity: need at least two members");
  const auto curves = parallel_map(count, jobs, [&](std::size_t k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(count - 1);
    const auto [in, out] = ensemble_member(theta);
    const Vector target = detail::lift(model, out);
    auto [times, rhos] = detail::evolve(model, detail::lift(model, in), cfg);
    std::vector<double> f;
    f.reserve(rhos.size());
    for (const Matrix& rho : rhos) f.push_back(std::clamp(expectation(target, rho).real(), 0.0, 1.0));
    return std::make_pair(std::move(times), std::move(f));
  });

  const std::vector<double> w = ensemble_weights(count);
  EnsembleReport r{to_string(model.kind), model.open(), count, 0.0, kTwoPi, 0.0, curves.front().first, {}};
  r.fidelity_curve.assign(r.times.size(), 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < r.times.size(); ++i) r.fidelity_curve[i] += w[k] * curves[k].second[i];
  }
  r.fidelity = r.fidelity_curve.back();
  return r;
}

/// T(i, j) = |<i|u|j>|^2, the probability of j -> i.
struct TransmissionMatrix {
  Basis basis;
  Eigen::MatrixXd probabilities;

  double operator()(std::string_view to, std::string_view from) const {
    return probabilities(static_cast<Eigen::Index>(basis.index_of(to)), static_cast<Eigen::Index>(basis.index_of(from)));
  }
};

inline TransmissionMatrix transmission_matrix(const Operator& u) {
  if (unitarity_defect(u.matrix()) > 1e-6) throw DomainError("transmission_matrix: operator is not unitary");
  return {u.basis(), u.matrix().cwiseAbs2()};
}

inline constexpr double kIsolationFloorDb = -120.0;

/// 10 log10(T[from <- to] / T[to <- from]): backward over forward transmission,
/// so a good isolator reads strongly negative. Clamped to [-120, 120] dB.
inline double isolation_db(const TransmissionMatrix& t, std::string_view from, std::string_view to) {
  const double forward = t(to, from);
  const double backward = t(from, to);
  if (backward <= 0.0) return kIsolationFloorDb;
  if (forward <= 0.0) return -kIsolationFloorDb;
  return std::clamp(10.0 * std::log10(backward / forward), kIsolationFloorDb, -kIsolationFloorDb);
}

inline double isolation_db(const Operator& u, std::string_view from, std::string_view to) {
  return isolation_db(transmission_matrix(u), from, to);
}

}  // namespace nonrecip
