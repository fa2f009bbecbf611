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

#include <cstddef>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nonrecip/runner.hpp"

namespace {

using nonrecip::ScenarioConfig;

ScenarioConfig load(const std::string& path, const std::string& model, bool no_noise) {
  ScenarioConfig cfg = path.empty() ? ScenarioConfig{} : nonrecip::load_scenario(path);
  if (!model.empty()) cfg.model = nonrecip::parse_model_kind(model);
  if (no_noise) cfg.noise = false;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-based pulse design and simulation of a three-level quantum circulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  std::size_t jobs = 1;
  std::string model;
  bool no_noise = false;
  app.add_option("--config", config_path, "Scenario file (key = value text)")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", jobs, "Worker threads for sweeps and ensembles")->check(CLI::PositiveNumber);
  app.add_option("--model", model, "ideal | single_excitation | full_qubit | full_three_level");
  app.add_flag("--no-noise", no_noise, "Disable the Lindblad channels");

  auto* design = app.add_subcommand("design", "Synthesize pulses and drive envelopes");

  auto* solve = app.add_subcommand("solve-lambda", "Find lambda for a target phase");
  double target_phase = 1.5 * nonrecip::kPi;
  solve->add_option("--target-phase", target_phase, "Target theta_+ in rad (default: config or 3pi/2)");

  auto* sweep = app.add_subcommand("sweep-lambda", "Tabulate theta_+ against lambda");
  double lo = 0.1, hi = 1.0;
  std::size_t n = 91;
  sweep->add_option("--lo", lo, "Smallest lambda");
  sweep->add_option("--hi", hi, "Largest lambda");
  sweep->add_option("-n,--points", n, "Number of lambda values");

  auto* simulate = app.add_subcommand("simulate", "Propagate one initial state or the theta ensemble");
  std::string initial = "100";
  simulate->add_option("--initial", initial, "100 | 010 | 001 | ensemble");

  auto* reproduce = app.add_subcommand("reproduce-fig3", "Produce all panel data and a comparison summary");

  CLI11_PARSE(app, argc, argv);

  namespace runner = nonrecip::runner;
  ScenarioConfig cfg;
  try {
    cfg = load(config_path, model, no_noise);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return runner::kExitFailure;
  }
  const runner::RunOptions opt{out_dir, jobs};

  if (*design) return runner::cmd_design(cfg, opt, std::cerr);
  if (*solve) {
    if (solve->count("--target-phase") == 0 && cfg.target_phase_rad) target_phase = *cfg.target_phase_rad;
    return runner::cmd_solve_lambda(cfg, target_phase, opt, std::cerr);
  }
  if (*sweep) return runner::cmd_sweep_lambda(cfg, lo, hi, n, opt, std::cerr);
  if (*simulate) return runner::cmd_simulate(cfg, initial, opt, std::cerr);
  if (*reproduce) return runner::cmd_reproduce_fig3(cfg, opt, std::cerr);
  return runner::kExitFailure;
}
