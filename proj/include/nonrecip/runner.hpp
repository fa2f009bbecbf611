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
#include <cstdio>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nonrecip/io.hpp"
#include "nonrecip/metrics.hpp"
#include "nonrecip/models.hpp"
#include "nonrecip/scenario.hpp"

/// Command implementations behind the `nonrecip` executable. Each returns the
/// process exit code:
///   0  success, 1  any other failure, 2  unattainable drive, 3  root finding failed.
namespace nonrecip::runner {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUnattainableDrive = 2;
inline constexpr int kExitRootFinding = 3;

struct RunOptions {
  std::filesystem::path out_dir = "out";
  std::size_t jobs = 1;
};

/// Runs `body`, mapping library exceptions onto exit codes.
template <class Body>
int guarded(std::ostream& log, Body&& body) {
  try {
    return body();
  } catch (const UnattainableDriveError& e) {
    log << "error: " << e.what() << "\n";
    return kExitUnattainableDrive;
  } catch (const RootFindingError& e) {
    log << "error: " << e.what() << "\n";
    return kExitRootFinding;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

inline double resolve_lambda(const ScenarioConfig& cfg) {
  if (cfg.lambda) return *cfg.lambda;
  return solve_lambda(*cfg.target_phase_rad, cfg.tau_ns, {cfg.lambda_lo, cfg.lambda_hi});
}

/// "circulator" near 3pi/2, "reciprocal" near pi (mod 2pi), otherwise "generic".
inline std::string classify_phase(double theta_plus) {
  const double r = reduce_phase(theta_plus);
  if (std::abs(r - 1.5 * kPi) < 1e-3) return "circulator";
  if (std::abs(r - kPi) < 1e-3) return "reciprocal";
  return "generic";
}

inline io::ordered_json design_summary(const CirculatorDesign& d, const ChainSpec& chain) {
  io::ordered_json j;
  j["lambda"] = d.lambda();
  j["tau_ns"] = d.tau();
  j["theta_plus_rad"] = d.phases.theta_plus;
  j["theta_minus_rad"] = d.phases.theta_minus;
  j["theta_zero_rad"] = d.phases.theta_zero;
  j["theta_plus_reduced_rad"] = reduce_phase(d.phases.theta_plus);
  j["theta_plus_over_pi"] = d.phases.theta_plus / kPi;
  j["classification"] = classify_phase(d.phases.theta_plus);
  j["samples"] = d.pulses.size();
  if (d.drive) {
    j["g_a_rad_per_ns"] = chain.g_a;
    j["g_b_rad_per_ns"] = chain.g_b;
    j["peak_ratio_a"] = d.drive->peak_ratio_a;
    j["peak_ratio_b"] = d.drive->peak_ratio_b;
    j["bessel_j1_max"] = kBesselJ1Max;
    j["saturated_samples"] = d.drive->saturated_samples;
  }
  const BoundaryDiagnostics b = check_boundary(d.trajectory, d.pulses, InvariantSpec{});
  j["boundary"] = {{"commutator_start", b.commutator_start},
                   {"commutator_end", b.commutator_end},
                   {"max_invariant_residual", b.max_residual}};
  return j;
}

inline int cmd_design(const ScenarioConfig& cfg, const RunOptions& opt, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const double lambda = resolve_lambda(cfg);
    const ChainSpec chain = cfg.chain();
    const PolynomialTrajectory traj(lambda, cfg.tau_ns);
    const PulsePair pulses = synthesize_pulses(traj, cfg.samples);
    io::pulse_table(pulses).write(opt.out_dir / "pulses.csv");
    const CirculatorDesign d = design_circulator(lambda, cfg.tau_ns, cfg.samples, &chain);
    io::drive_table(d.drive->drives).write(opt.out_dir / "eta.csv");
    const auto summary = design_summary(d, chain);
    io::write_json(opt.out_dir / "design.json", summary);
    log << "lambda = " << io::format_number(lambda) << ", theta_+ = " << io::format_number(d.phases.theta_plus)
        << " rad (" << summary["classification"].get<std::string>() << ")\n";
    return kExitOk;
  });
}

inline int cmd_solve_lambda(const ScenarioConfig& cfg, double target_phase, const RunOptions& opt,
                            std::ostream& log) {
  return guarded(log, [&] {
    const double lambda = solve_lambda(target_phase, cfg.tau_ns, {cfg.lambda_lo, cfg.lambda_hi});
    const double theta = polynomial_phase(lambda, cfg.tau_ns);
    io::ordered_json j;
    j["target_phase_rad"] = target_phase;
    j["tau_ns"] = cfg.tau_ns;
    j["bracket"] = {cfg.lambda_lo, cfg.lambda_hi};
    j["lambda"] = lambda;
    j["theta_plus_rad"] = theta;
    j["residual_rad"] = theta - target_phase;
    io::write_json(opt.out_dir / "solve.json", j);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", lambda);
    log << "lambda = " << buf << "\n";
    return kExitOk;
  });
}

inline int cmd_sweep_lambda(const ScenarioConfig& cfg, double lo, double hi, std::size_t n, const RunOptions& opt,
                            std::ostream& log) {
  return guarded(log, [&] {
    const PhaseSweep sweep = lambda_sweep(cfg.tau_ns, lo, hi, n, opt.jobs);
    io::sweep_table(sweep).write(opt.out_dir / "sweep.csv");
    io::ordered_json j;
    j["tau_ns"] = cfg.tau_ns;
    j["lo"] = lo;
    j["hi"] = hi;
    j["n"] = n;
    j["monotonic_decreasing"] = sweep.monotonic_decreasing;
    io::write_json(opt.out_dir / "sweep.json", j);
    log << "swept " << n << " points, monotonic_decreasing = " << (sweep.monotonic_decreasing ? "true" : "false")
        << "\n";
    return kExitOk;
  });
}

/// Image of a single-excitation basis state under the ideal circulator
/// family at the design phase.
inline PureState transfer_target(const std::string& initial, double theta_plus) {
  const Basis se = single_excitation_basis();
  const Matrix u = target_unitary(theta_plus).matrix();
  return PureState(se, u.col(static_cast<Eigen::Index>(se.index_of(initial))));
}

struct SimulationSetup {
  CirculatorDesign design;
  Model model;
  PropagationConfig propagation;
};

inline SimulationSetup prepare_simulation(const ScenarioConfig& cfg) {
  cfg.validate();
  const ChainSpec chain = cfg.chain();
  CirculatorDesign d = design_circulator(resolve_lambda(cfg), cfg.tau_ns, cfg.samples, &chain);
  Model m = make_model(cfg.model, d, chain, cfg.noise);
  PropagationConfig p = m.config(cfg.step_ns, cfg.record_stride);
  return {std::move(d), std::move(m), p};
}

inline int cmd_simulate(const ScenarioConfig& cfg, const std::string& initial, const RunOptions& opt,
                        std::ostream& log) {
  return guarded(log, [&] {
    const SimulationSetup s = prepare_simulation(cfg);
    if (initial == "ensemble") {
      const EnsembleReport r = ensemble_fidelity(s.model, cfg.ensemble_count, s.propagation, opt.jobs);
      io::ensemble_table(r).write(opt.out_dir / "ensemble.csv");
      io::write_json(opt.out_dir / "ensemble.json", io::to_json(r));
      log << "F_m = " << io::format_number(r.fidelity) << " (" << r.model << ", noise "
          << (r.noise ? "on" : "off") << ")\n";
      return kExitOk;
    }
    if (!single_excitation_basis().contains(initial)) {
      throw ConfigError("initial state must be 100, 010, 001 or ensemble");
    }
    const TransferReport r =
        transfer_fidelity(s.model, initial, transfer_target(initial, s.design.phases.theta_plus), s.propagation);
    io::transfer_table(r).write(opt.out_dir / ("trajectory_" + initial + ".csv"));
    io::write_json(opt.out_dir / ("report_" + initial + ".json"), io::to_json(r));
    log << "F_s(" << initial << ") = " << io::format_number(r.fidelity) << " (" << r.model << ", noise "
        << (r.noise ? "on" : "off") << ")\n";
    return kExitOk;
  });
}

/// Reference values quoted for the default parameters.
struct PublishedValues {
  double lambda = 0.4974;
  double f_s_100 = 0.9908;
  double f_s_001 = 0.9925;
  double f_s_010 = 0.9928;
  double f_m = 0.9923;
  double lambda_tolerance = 5e-4;
  double fidelity_tolerance = 5e-3;
  /// Closed-system runs: every fidelity must reach 0.997 less 0.3 percentage points.
  double noiseless_floor = 0.997 - 3e-3;
};

/// Writes the six panel files and summary.json. A failing panel is recorded
/// and the remaining panels still run; the exit code is nonzero if any failed.
inline int cmd_reproduce_fig3(const ScenarioConfig& cfg, const RunOptions& opt, std::ostream& log) {
  const PublishedValues paper;
  io::ordered_json summary;
  summary["model"] = to_string(cfg.model);
  summary["noise"] = cfg.noise;
  summary["tau_ns"] = cfg.tau_ns;
  io::ordered_json panels = io::ordered_json::object();
  bool any_failed = false;

  auto panel = [&](const std::string& name, auto&& body) {
    const int code = guarded(log, [&] {
      body(panels[name]);
      return kExitOk;
    });
    if (code != kExitOk) {
      any_failed = true;
      panels[name]["status"] = "failed";
      log << "panel " << name << " failed\n";
    } else {
      panels[name]["status"] = "ok";
    }
  };

  auto compare = [&](io::ordered_json& j, double computed, double reference, double tol) {
    j["paper"] = reference;
    j["computed"] = computed;
    j["tolerance"] = tol;
    j["pass"] = std::abs(computed - reference) <= tol;
  };
  auto floor_check = [&](io::ordered_json& j, double computed) {
    j["computed"] = computed;
    j["floor"] = paper.noiseless_floor;
    j["pass"] = computed >= paper.noiseless_floor;
  };

  panel("a", [&](io::ordered_json& j) {
    const PhaseSweep sweep = lambda_sweep(cfg.tau_ns, 0.1, 1.0, 91, opt.jobs);
    io::sweep_table(sweep).write(opt.out_dir / "fig3a_lambda_sweep.csv");
    const double lambda = solve_lambda(1.5 * kPi, cfg.tau_ns, {cfg.lambda_lo, cfg.lambda_hi});
    j["file"] = "fig3a_lambda_sweep.csv";
    j["monotonic_decreasing"] = sweep.monotonic_decreasing;
    compare(j["lambda_for_3pi_2"], lambda, paper.lambda, paper.lambda_tolerance);
  });

  std::optional<SimulationSetup> setup;
  panel("b", [&](io::ordered_json& j) {
    setup = prepare_simulation(cfg);
    io::pulse_table(setup->design.pulses).write(opt.out_dir / "fig3b_pulses.csv");
    j["file"] = "fig3b_pulses.csv";
    j["design"] = design_summary(setup->design, cfg.chain());
  });

  panel("c", [&](io::ordered_json& j) {
    if (!setup) throw Error("no design available");
    const EnsembleReport r = ensemble_fidelity(setup->model, cfg.ensemble_count, setup->propagation, opt.jobs);
    io::ensemble_table(r).write(opt.out_dir / "fig3c_ensemble.csv");
    j["file"] = "fig3c_ensemble.csv";
    j["report"] = io::to_json(r);
    if (cfg.noise) {
      compare(j["f_m"], r.fidelity, paper.f_m, paper.fidelity_tolerance);
    } else {
      floor_check(j["f_m"], r.fidelity);
    }
  });

  const struct {
    const char* name;
    const char* initial;
    double reference;
  } transfers[] = {{"d", "100", paper.f_s_100}, {"e", "001", paper.f_s_001}, {"f", "010", paper.f_s_010}};
  for (const auto& t : transfers) {
    panel(t.name, [&](io::ordered_json& j) {
      if (!setup) throw Error("no design available");
      const TransferReport r = transfer_fidelity(setup->model, t.initial,
                                                 transfer_target(t.initial, setup->design.phases.theta_plus),
                                                 setup->propagation);
      const std::string file = std::string("fig3") + t.name + "_" + t.initial + ".csv";
      io::transfer_table(r).write(opt.out_dir / file);
      j["file"] = file;
      j["report"] = io::to_json(r);
      if (cfg.noise) {
        compare(j["f_s"], r.fidelity, t.reference, paper.fidelity_tolerance);
      } else {
        floor_check(j["f_s"], r.fidelity);
      }
    });
  }

  summary["panels"] = panels;
  try {
    io::write_json(opt.out_dir / "summary.json", summary);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return any_failed ? kExitFailure : kExitOk;
}

}  // namespace nonrecip::runner
