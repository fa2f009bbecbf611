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

// Acceptance checks. Prints one PASS/FAIL line per check and exits nonzero if
// any check failed. INFO lines carry context and never affect the result.
//
//   nonrecip_acceptance [--only <criterion>] [--jobs <n>] [--list]

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "nonrecip/nonrecip.hpp"

namespace {

using namespace nonrecip;

// Pinned tolerances.
constexpr double kTau = 145.0;
constexpr double kPaperLambda = 0.4974;
constexpr double kLambdaTol = 5e-4;
constexpr double kLambdaSeconds = 10.0;
constexpr double kOperatorTol = 1e-3;
constexpr double kOracleStep = 0.001;
constexpr double kOperatorSeconds = 5.0;
constexpr double kFidelityTol = 5e-3;
constexpr double kTransferSeconds = 60.0;
constexpr double kPaperFs100 = 0.9908;
constexpr double kPaperFs001 = 0.9925;
constexpr double kPaperFs010 = 0.9928;
constexpr double kPaperFm = 0.9923;
constexpr std::size_t kEnsembleCount = 1001;
constexpr double kEnsembleStart = 0.125;
constexpr double kEnsembleStartTol = 0.01;
constexpr double kEnsembleSerialSeconds = 30 * 60.0;
constexpr double kEnsembleParallelSeconds = 5 * 60.0;
constexpr double kForwardMin = 0.999;
constexpr double kBackwardMax = 1e-3;
constexpr double kIsolationMaxDb = -30.0;
constexpr double kReciprocityTol = 1e-6;
constexpr double kNoiseDrop = 0.0052;
constexpr double kNoiseDropTol = 0.003;
constexpr std::size_t kBudgetMembers = 9;
constexpr double kLeakage = 0.0025;
constexpr double kLeakageTol = 0.002;

class Report {
 public:
  void check(const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << ": " << detail << std::endl;
    failed_ |= !pass;
  }
  void info(const std::string& name, const std::string& detail) {
    std::cout << "[INFO] " << name << ": " << detail << std::endl;
  }
  bool failed() const { return failed_; }

 private:
  bool failed_ = false;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Context {
  std::size_t jobs = 1;
};

const ChainSpec& paper_chain() {
  static const ChainSpec c = ChainSpec::defaults();
  return c;
}

const CirculatorDesign& paper_design() {
  static const CirculatorDesign d = design_circulator(kPaperLambda, kTau, kDefaultPulseSamples, &paper_chain());
  return d;
}

Operator oracle_unitary(const PulsePair& pulses) {
  auto h = [&](double t) { return three_level_hamiltonian(pulses.at(t)); };
  return evolution_operator_oracle(h, three_level_basis(), pulses.duration(),
                                   {kOracleStep, Integrator::PiecewiseExponential, 1});
}

struct TransferCase {
  const char* initial;
  double paper;
};
constexpr TransferCase kTransfers[] = {{"100", kPaperFs100}, {"001", kPaperFs001}, {"010", kPaperFs010}};

TransferReport run_transfer(ModelKind kind, bool noise, const std::string& initial, double* seconds = nullptr) {
  Stopwatch clock;
  const Model m = make_model(kind, paper_design(), paper_chain(), noise);
  TransferReport r = transfer_fidelity(m, initial, runner::transfer_target(initial, paper_design().phases.theta_plus),
                                       m.config());
  if (seconds) *seconds = clock.seconds();
  return r;
}

// ---------------------------------------------------------------------------

void lambda_anchor(const Context&, Report& rep) {
  Stopwatch clock;
  const double lambda = solve_lambda(1.5 * kPi, kTau, {0.1, 1.0});
  const double s = clock.seconds();
  rep.check("lambda_anchor", std::abs(lambda - kPaperLambda) <= kLambdaTol && s < kLambdaSeconds,
            fmt("solve_lambda(3pi/2, tau=145 ns) = %.7f (paper %.4f +/- %.4f), %.3f s (limit %.0f s)", lambda,
                kPaperLambda, kLambdaTol, s, kLambdaSeconds));
}

void operator_circulator(const Context&, Report& rep) {
  Stopwatch clock;
  const PolynomialTrajectory traj(kPaperLambda, kTau);
  const PulsePair pulses = synthesize_pulses(traj);
  const Operator u = oracle_unitary(pulses);
  const Operator predicted = lr_predicted_evolution(traj, pulses, InvariantSpec{});
  const double s = clock.seconds();
  const double to_target = phase_aligned_distance(u.matrix(), target_unitary(1.5 * kPi).matrix());
  const double to_lr = phase_aligned_distance(u.matrix(), predicted.matrix());
  rep.check("operator_circulator.target", to_target <= kOperatorTol,
            fmt("||U_oracle - U[3pi/2]|| = %.3e (limit %.0e, oracle step %.3f ns)", to_target, kOperatorTol,
                kOracleStep));
  rep.check("operator_circulator.lr_expansion", to_lr <= kOperatorTol,
            fmt("||U_oracle - U_LR|| = %.3e (limit %.0e)", to_lr, kOperatorTol));
  rep.check("operator_circulator.runtime", s < kOperatorSeconds, fmt("%.2f s (limit %.0f s)", s, kOperatorSeconds));
}

void basis_transfer(const Context&, Report& rep) {
  for (ModelKind kind : {ModelKind::SingleExcitation, ModelKind::FullQubit}) {
    for (const auto& c : kTransfers) {
      double s = 0.0;
      const TransferReport r = run_transfer(kind, true, c.initial, &s);
      const bool ok = std::abs(r.fidelity - c.paper) <= kFidelityTol && s < kTransferSeconds;
      rep.check(fmt("basis_transfer.%s.%s", to_string(kind).c_str(), c.initial), ok,
                fmt("F_s = %.5f (paper %.4f +/- %.3f), variant %s + Lindblad, %.2f s (limit %.0f s)", r.fidelity,
                    c.paper, kFidelityTol, to_string(kind).c_str(), s, kTransferSeconds));
    }
  }
}

void ensemble(const Context& ctx, Report& rep) {
  Stopwatch clock;
  const Model m = make_model(ModelKind::SingleExcitation, paper_design(), paper_chain(), true);
  const EnsembleReport r = ensemble_fidelity(m, kEnsembleCount, m.config(), ctx.jobs);
  const double s = clock.seconds();
  const double limit = ctx.jobs >= 8 ? kEnsembleParallelSeconds : kEnsembleSerialSeconds;
  rep.check("ensemble.final", std::abs(r.fidelity - kPaperFm) <= kFidelityTol,
            fmt("F_m = %.5f over %zu members (paper %.4f +/- %.3f), single_excitation + Lindblad", r.fidelity,
                r.count, kPaperFm, kFidelityTol));
  rep.check("ensemble.initial", std::abs(r.fidelity_curve.front() - kEnsembleStart) <= kEnsembleStartTol,
            fmt("F_m(t=0) = %.5f (expected %.3f +/- %.2f)", r.fidelity_curve.front(), kEnsembleStart,
                kEnsembleStartTol));
  rep.check("ensemble.runtime", s < limit, fmt("%.1f s with %zu worker(s) (limit %.0f s)", s, ctx.jobs, limit));
}

void non_reciprocity(const Context&, Report& rep) {
  const TransmissionMatrix t = transmission_matrix(oracle_unitary(paper_design().pulses));
  const double iso = isolation_db(t, "A", "B");
  rep.check("non_reciprocity.forward", t("B", "A") >= kForwardMin,
            fmt("T[B<-A] = %.6f (min %.3f)", t("B", "A"), kForwardMin));
  rep.check("non_reciprocity.backward", t("A", "B") <= kBackwardMax && iso <= kIsolationMaxDb,
            fmt("T[A<-B] = %.3e (max %.0e), isolation A->B = %.1f dB (max %.0f dB)", t("A", "B"), kBackwardMax, iso,
                kIsolationMaxDb));

  const double lambda_pi = solve_lambda(kPi, kTau, {0.1, 1.0});
  const TransmissionMatrix r = transmission_matrix(oracle_unitary(synthesize_pulses(PolynomialTrajectory(lambda_pi, kTau))));
  const double asym = std::abs(r("A", "B") - r("B", "A"));
  rep.check("non_reciprocity.reciprocal_design", asym <= kReciprocityTol,
            fmt("lambda_pi = %.6f, T[A<-B] = %.9f, T[B<-A] = %.9f, |difference| = %.2e (max %.0e)", lambda_pi,
                r("A", "B"), r("B", "A"), asym, kReciprocityTol));
}

void noise_budget(const Context& ctx, Report& rep) {
  double leakage_sum = 0.0;
  for (ModelKind kind : {ModelKind::SingleExcitation, ModelKind::FullQubit}) {
    for (const auto& c : kTransfers) {
      const TransferReport on = run_transfer(kind, true, c.initial);
      const TransferReport off = run_transfer(kind, false, c.initial);
      const double drop = off.fidelity - on.fidelity;
      rep.check(fmt("noise_budget.decoherence.%s.%s", to_string(kind).c_str(), c.initial),
                std::abs(drop - kNoiseDrop) <= kNoiseDropTol,
                fmt("infidelity falls by %.5f with noise off (%.5f -> %.5f; expected %.4f +/- %.3f)", drop,
                    1 - on.fidelity, 1 - off.fidelity, kNoiseDrop, kNoiseDropTol));
      if (kind == ModelKind::FullQubit) {
        leakage_sum += off.final_leakage;
        rep.info(fmt("noise_budget.leakage.full_qubit.%s", c.initial),
                 fmt("out-of-subspace population at tau: %.3e noise off, %.3e noise on", off.final_leakage,
                     on.final_leakage));
      } else {
        rep.info(fmt("noise_budget.noiseless_infidelity.single_excitation.%s", c.initial),
                 fmt("1 - F_s with noise off = %.5f", 1 - off.fidelity));
      }
    }
  }
  // F(theta) is a degree-4 trigonometric polynomial, so nine trapezoid members
  // give the ensemble mean exactly.
  const Model m_on = make_model(ModelKind::SingleExcitation, paper_design(), paper_chain(), true);
  const Model m_off = make_model(ModelKind::SingleExcitation, paper_design(), paper_chain(), false);
  const double fm_on = ensemble_fidelity(m_on, kBudgetMembers, m_on.config(), ctx.jobs).fidelity;
  const double fm_off = ensemble_fidelity(m_off, kBudgetMembers, m_off.config(), ctx.jobs).fidelity;
  rep.check("noise_budget.decoherence.ensemble", std::abs(fm_off - fm_on - kNoiseDrop) <= kNoiseDropTol,
            fmt("1 - F_m falls by %.5f with noise off (%.5f -> %.5f; expected %.4f +/- %.3f), %zu members",
                fm_off - fm_on, 1 - fm_on, 1 - fm_off, kNoiseDrop, kNoiseDropTol, kBudgetMembers));
  rep.info("noise_budget.noiseless_infidelity.ensemble",
           fmt("1 - F_m with noise off = %.5f, single_excitation", 1 - fm_off));
  const double leakage = leakage_sum / 3.0;
  rep.check("noise_budget.leakage", std::abs(leakage - kLeakage) <= kLeakageTol,
            fmt("mean coherent leakage out of the single-excitation subspace, full_qubit, noise off = %.3e "
                "(expected %.4f +/- %.3f)",
                leakage, kLeakage, kLeakageTol));
}

void property_suite(const Context&, Report& rep) {
  const PolynomialTrajectory traj(kPaperLambda, kTau);
  const double mu = 1.0;
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> when(0.0, kTau);

  double spectrum = 0.0, ortho = 0.0;
  for (int k = 0; k < 100; ++k) {
    const TrajectoryPoint p = traj.at(when(rng));
    Eigen::SelfAdjointEigenSolver<Matrix> es(invariant_matrix(p, mu));
    spectrum = std::max({spectrum, std::abs(es.eigenvalues()(0) + mu / 2), std::abs(es.eigenvalues()(1)),
                         std::abs(es.eigenvalues()(2) - mu / 2)});
    const EigenFrame f = eigen_frame(p);
    Matrix v(3, 3);
    for (int n = 0; n < 3; ++n) v.col(n) = f.states[static_cast<std::size_t>(n)];
    ortho = std::max(ortho, (v.adjoint() * v - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff());
  }
  rep.check("property.invariant_spectrum", spectrum <= 1e-10,
            fmt("max |eigenvalue - {-mu/2, 0, mu/2}| over 100 random t = %.2e (max 1e-10)", spectrum));
  rep.check("property.eigenstate_orthonormality", ortho <= 1e-10,
            fmt("max |<mu_m|mu_n> - delta_mn| = %.2e (max 1e-10)", ortho));

  const BoundaryDiagnostics b = check_boundary(traj, synthesize_pulses(traj, 10001), InvariantSpec{mu});
  rep.check("property.von_neumann_residual", b.max_residual < 1e-6 * mu,
            fmt("max ||dI/dt + i[H, I]|| on 10001-point grid = %.2e (max 1e-6 mu)", b.max_residual));
  rep.check("property.boundary_commutators", b.commutator_start <= 1e-9 && b.commutator_end <= 1e-9,
            fmt("||[H(0), I(0)]|| = %.1e, ||[H(tau), I(tau)]|| = %.1e (max 1e-9)", b.commutator_start,
                b.commutator_end));

  const LRPhaseResult ph = paper_design().phases;
  rep.check("property.phase_antisymmetry", std::abs(ph.theta_minus + ph.theta_plus) <= 1e-9,
            fmt("theta_+ = %.12f, theta_- = %.12f, |sum| = %.1e (max 1e-9)", ph.theta_plus, ph.theta_minus,
                std::abs(ph.theta_minus + ph.theta_plus)));

  // Preservation bounds on a noisy run, every step recorded.
  {
    const Model m = make_model(ModelKind::SingleExcitation, paper_design(), paper_chain(), true);
    Vector psi = Vector::Zero(8);
    psi(static_cast<Eigen::Index>(m.single_excitation[0])) = 1.0;
    const auto out = propagate_lindblad(m, m.channels, DensityMatrix::from_pure(PureState(m.basis, psi)), kTau,
                                        m.config(std::nullopt, 1));
    double tr = 0.0, herm = 0.0, neg = 0.0;
    for (const Matrix& rho : out.states) {
      tr = std::max(tr, std::abs(rho.trace() - 1.0));
      herm = std::max(herm, hermiticity_defect(rho));
      neg = std::min(neg, DensityMatrix::min_eigenvalue(rho));
    }
    rep.check("property.lindblad_preservation", tr <= 1e-8 && herm <= 1e-9 && neg >= -1e-6,
              fmt("over %zu states: trace error %.1e (max 1e-8), Hermiticity %.1e (max 1e-9), min eigenvalue %.1e "
                  "(min -1e-6)",
                  out.states.size(), tr, herm, neg));

    const auto coarse = propagate_lindblad(m, m.channels, DensityMatrix::from_pure(PureState(m.basis, psi)), kTau,
                                           m.config(0.01, 1000000));
    const auto fine = propagate_lindblad(m, m.channels, DensityMatrix::from_pure(PureState(m.basis, psi)), kTau,
                                         m.config(0.005, 1000000));
    const double change = (coarse.final() - fine.final()).cwiseAbs().maxCoeff();
    rep.check("property.lindblad_step_halving", change < 1e-6,
              fmt("max |rho_h - rho_h/2| at tau, h = 0.01 ns: %.1e (max 1e-6)", change));
  }
  {
    const Model m = make_model(ModelKind::SingleExcitation, paper_design(), paper_chain(), false);
    const PureState a = PureState::basis_state(m.basis, "100");
    const Vector coarse = propagate_schrodinger(m, a, kTau, m.config(0.01, 1000000)).final();
    const Vector fine = propagate_schrodinger(m, a, kTau, m.config(0.005, 1000000)).final();
    const double drift = std::abs(fine.norm() - 1.0);
    const double change = (coarse - fine).cwiseAbs().maxCoeff();
    rep.check("property.schrodinger_preservation", drift < 1e-8 && change < 1e-6,
              fmt("norm drift %.1e (max 1e-8), step-halving change %.1e (max 1e-6)", drift, change));

    const Operator u = oracle_unitary(paper_design().pulses);
    rep.check("property.oracle_unitarity", unitarity_defect(u.matrix()) <= 1e-8,
              fmt("||U^dagger U - 1|| = %.1e (max 1e-8)", unitarity_defect(u.matrix())));
  }

  // Order of RK4 on a smooth Hamiltonian (exact trajectory couplings).
  {
    auto h = [&](double t) { return three_level_hamiltonian(coupling_at(traj, t)); };
    const PureState a = PureState::basis_state(three_level_basis(), "A");
    const Vector ref = propagate_schrodinger(h, a, kTau, {0.01, Integrator::RungeKutta4, 1000000}).final();
    std::vector<double> err;
    for (double step : {1.6, 0.8, 0.4}) {
      err.push_back((propagate_schrodinger(h, a, kTau, {step, Integrator::RungeKutta4, 1000000}).final() - ref).norm());
    }
    const double p1 = std::log2(err[0] / err[1]), p2 = std::log2(err[1] / err[2]);
    rep.check("property.rk4_order", p1 > 3.5 && p1 < 4.5 && p2 > 3.5 && p2 < 4.5,
              fmt("observed orders %.2f, %.2f from steps 1.6/0.8/0.4 ns (expected 4 +/- 0.5)", p1, p2));
  }

  {
    std::uniform_real_distribution<double> eta(0.0, 1.8);
    const double g = paper_chain().g_a;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double x = eta(rng);
      worst = std::max(worst, std::abs(invert_bessel_j1(2 * g * bessel_j1(x) / (2 * g)) - x));
    }
    rep.check("property.bessel_round_trip", worst <= 1e-9,
              fmt("max |eta - J1^-1(J1(eta))| over 100 random eta in [0, 1.8] = %.1e (max 1e-9)", worst));
  }

  {
    const double lambda_pi = solve_lambda(kPi, kTau, {0.1, 1.0});
    double worst = 0.0;
    for (const PulsePair& p : {paper_design().pulses, synthesize_pulses(PolynomialTrajectory(lambda_pi, kTau))}) {
      const TransmissionMatrix t = transmission_matrix(oracle_unitary(p));
      for (Eigen::Index j = 0; j < 3; ++j) worst = std::max(worst, std::abs(t.probabilities.col(j).sum() - 1.0));
    }
    rep.check("property.column_stochastic", worst <= 1e-9,
              fmt("max |sum_i T[i<-j] - 1| for the 3pi/2 and pi designs = %.1e (max 1e-9)", worst));
  }
}

const std::vector<std::pair<std::string, std::function<void(const Context&, Report&)>>>& criteria() {
  static const std::vector<std::pair<std::string, std::function<void(const Context&, Report&)>>> all{
      {"lambda_anchor", lambda_anchor},   {"operator_circulator", operator_circulator},
      {"basis_transfer", basis_transfer}, {"ensemble", ensemble},
      {"non_reciprocity", non_reciprocity}, {"noise_budget", noise_budget},
      {"property_suite", property_suite},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::string only;
  Context ctx;
  ctx.jobs = std::max(1u, std::thread::hardware_concurrency());
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = argv[++i];
    } else if (a == "--jobs" && i + 1 < argc) {
      ctx.jobs = std::max(1, std::atoi(argv[++i]));
    } else if (a == "--list") {
      for (const auto& [name, fn] : criteria()) std::cout << name << "\n";
      return 0;
    } else {
      std::cerr << "usage: " << argv[0] << " [--only <criterion>] [--jobs <n>] [--list]\n";
      return 2;
    }
  }

  Report rep;
  bool ran = false;
  for (const auto& [name, fn] : criteria()) {
    if (!only.empty() && only != name) continue;
    ran = true;
    try {
      fn(ctx, rep);
    } catch (const std::exception& e) {
      rep.check(name, false, std::string("threw: ") + e.what());
    }
  }
  if (!ran) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return rep.failed() ? 1 : 0;
}
