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
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nonrecip/device.hpp"
#include "nonrecip/invariant.hpp"
#include "nonrecip/propagation.hpp"

namespace nonrecip {

/// Which Hamiltonian drives a simulation.
enum class ModelKind {
  Ideal,             ///< effective three-level model with the designed pulses
  SingleExcitation,  ///< modulated chain restricted to one excitation, RWA
  FullQubit,         ///< full chain, two levels per transmon, counter-rotating terms kept
  FullThreeLevel,    ///< as FullQubit with three levels and anharmonicity
};

inline std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Ideal: return "ideal";
    case ModelKind::SingleExcitation: return "single_excitation";
    case ModelKind::FullQubit: return "full_qubit";
    case ModelKind::FullThreeLevel: return "full_three_level";
  }
  return "unknown";
}

inline ModelKind parse_model_kind(std::string_view name) {
  for (ModelKind k : {ModelKind::Ideal, ModelKind::SingleExcitation, ModelKind::FullQubit, ModelKind::FullThreeLevel}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected ideal, single_excitation, full_qubit or full_three_level)");
}

/// Default integration step per model (ns).
inline double default_step(ModelKind kind) {
  switch (kind) {
    case ModelKind::Ideal: return 0.05;
    case ModelKind::SingleExcitation: return 0.005;
    case ModelKind::FullQubit:
    case ModelKind::FullThreeLevel: return 0.004;
  }
  return 0.005;
}

/// Everything derived from one (lambda, tau): trajectory, pulse table, phases
/// and, when a chain is given, the modulation depths that realise the pulses.
struct CirculatorDesign {
  PolynomialTrajectory trajectory;
  PulsePair pulses;
  LRPhaseResult phases;
  std::optional<DriveSynthesis> drive;

  double lambda() const { return trajectory.lambda(); }
  double tau() const { return trajectory.duration(); }
};

inline CirculatorDesign design_circulator(double lambda, double tau_ns, std::size_t samples = kDefaultPulseSamples,
                                          const ChainSpec* chain = nullptr) {
  PolynomialTrajectory traj(lambda, tau_ns);
  PulsePair pulses = synthesize_pulses(traj, samples);
  std::optional<DriveSynthesis> drive;
  if (chain != nullptr) drive = invert_bessel_drive(pulses, *chain);
  LRPhaseResult phases = lr_phase(traj, pulses);
  return {traj, std::move(pulses), phases, std::move(drive)};
}

/// A ready-to-propagate system: basis, H(t), dissipators, and where the
/// single-excitation states live in the basis.
struct Model {
  ModelKind kind = ModelKind::Ideal;
  Basis basis;
  std::function<Matrix(double)> hamiltonian;
  std::vector<LindbladChannel> channels;
  std::array<std::size_t, 3> single_excitation{0, 1, 2};
  double duration = 0.0;
  double max_phase_rate = 0.0;  ///< rad/ns, fastest phase appearing in H(t)

  Matrix operator()(double t) const { return hamiltonian(t); }

  bool open() const {
    return std::any_of(channels.begin(), channels.end(), [](const LindbladChannel& c) { return c.rate > 0.0; });
  }

  PropagationConfig config(std::optional<double> step = std::nullopt, std::size_t record_stride = 100) const {
    PropagationConfig cfg{step.value_or(default_step(kind)), Integrator::RungeKutta4, record_stride};
    cfg.validate_resolution(max_phase_rate);
    return cfg;
  }
};

/// Builds the requested model. With noise on, the ideal and single-excitation
/// models are embedded in the two-level product space so that decay out of
/// the single-excitation subspace is representable.
inline Model make_model(ModelKind kind, const CirculatorDesign& design, const ChainSpec& chain, bool noise) {
  Model model;
  model.kind = kind;
  model.duration = design.tau();

  const bool needs_drive = kind != ModelKind::Ideal;
  if (needs_drive && !design.drive) throw DomainError("model " + to_string(kind) + " needs a drive synthesis");
  double eta_max = 0.0;
  if (design.drive) {
    for (double v : design.drive->drives.eta_a()) eta_max = std::max(eta_max, std::abs(v));
    for (double v : design.drive->drives.eta_b()) eta_max = std::max(eta_max, std::abs(v));
  }
  const double nu_max = std::max(std::abs(chain.nu_a), std::abs(chain.nu_b));

  int levels = 0;  // 0: the model lives in the three-dimensional single-excitation space
  std::function<Matrix(double)> block;
  switch (kind) {
    case ModelKind::Ideal: {
      const PulsePair pulses = design.pulses;
      block = [pulses](double t) { return three_level_hamiltonian(pulses.at(t)); };
      double g_max = 0.0;
      for (std::size_t k = 0; k < pulses.size(); ++k) g_max = std::max({g_max, std::abs(pulses.g_a()[k]), std::abs(pulses.g_b()[k])});
      model.max_phase_rate = g_max;
      if (noise) levels = 2;
      break;
    }
    case ModelKind::SingleExcitation: {
      const ChainSpec c = chain;
      const DriveWaveform drives = design.drive->drives;
      block = [c, drives](double t) { return single_excitation_matrix(c, drives, t); };
      model.max_phase_rate = std::max(std::abs(chain.delta_a()), std::abs(chain.delta_b())) + eta_max * nu_max;
      if (noise) levels = 2;
      break;
    }
    case ModelKind::FullQubit:
    case ModelKind::FullThreeLevel: {
      levels = (kind == ModelKind::FullQubit) ? 2 : 3;
      ChainSpec c = chain;
      c.levels = levels;
      auto h = std::make_shared<const ChainHamiltonian>(c, design.drive->drives);
      model.hamiltonian = [h](double t) { return h->matrix(t); };
      model.max_phase_rate = std::max(std::abs(c.a.omega), std::abs(c.b.omega)) + std::abs(c.m.omega) +
                             eta_max * nu_max + (levels == 3 ? 2.0 * std::max({c.a.alpha, c.m.alpha, c.b.alpha}) : 0.0);
      break;
    }
  }

  if (levels == 0) {
    model.basis = single_excitation_basis();
    model.hamiltonian = block;
    model.single_excitation = {0, 1, 2};
  } else {
    model.basis = chain_basis(levels);
    if (block) model.hamiltonian = [block, levels](double t) { return embed_single_excitation(block(t), levels); };
    model.single_excitation = single_excitation_indices(levels);
    if (noise) model.channels = lindblad_channels(chain, levels);
  }
  return model;
}

}  // namespace nonrecip
