// qftc: compile the quantum Fourier transform into Ising-friendly gate and
// pulse sequences, verify them against the exact transform, and evaluate the
// magnetic-gradient trap backend.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qfti/qfti.hpp"

namespace {

using qfti::json;

constexpr double kVerifyTol = 1e-10;

qfti::Circuit read_circuit(const std::string& path) {
  json j;
  if (path.empty() || path == "-") {
    j = json::parse(std::cin);
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file: " + path);
    j = json::parse(in);
  }
  return qfti::circuit_from_json(j);
}

void emit(const json& report, bool as_json, const std::string& human) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}

int cmd_compile(int n, const std::string& mode, bool swaps, double alpha,
                const std::string& titf) {
  const qfti::TiTfConvention conv = titf == "compact" ? qfti::TiTfConvention::CompactSwapped
                                                      : qfti::TiTfConvention::Prose;
  qfti::Circuit c;
  if (mode == "ct") c = qfti::cooley_tukey_circuit(n, swaps);
  else if (mode == "consecutive") c = qfti::consecutive_sequence(n, swaps, conv);
  else if (mode == "parallel") c = qfti::parallel_sequence(n, swaps, alpha);
  else throw CLI::ValidationError("--mode", "expected ct|consecutive|parallel");
  std::cout << qfti::circuit_to_json(c).dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& path, bool as_json) {
  const qfti::Circuit c = read_circuit(path);
  if (c.site_dim != 2) throw std::runtime_error("verify: expected a qubit circuit");
  const qfti::Matrix u = qfti::compose(c);
  const qfti::Matrix f = qfti::dft_matrix(c.n_sites);
  const double d_plain = qfti::phase_invariant_distance(u, f);
  const double d_rev = qfti::phase_invariant_distance(qfti::bit_reversal_matrix(c.n_sites) * u, f);
  const bool pass = std::min(d_plain, d_rev) < kVerifyTol;

  json report;
  report["command"] = "verify";
  report["inputs"] = {{"n_sites", c.n_sites}, {"gate_count", c.gates.size()}};
  report["metrics"] = {{"distance", d_plain}, {"distance_with_bit_reversal", d_rev}};
  report["pass"] = pass;
  std::ostringstream human;
  human << "verify: n=" << c.n_sites << " gates=" << c.gates.size() << "\n"
        << "  distance to DFT:                    " << d_plain << "\n"
        << "  distance with bit reversal applied: " << d_rev << "\n"
        << (pass ? "  PASS" : "  FAIL") << " (tolerance " << kVerifyTol << ")\n";
  emit(report, as_json, human.str());
  return pass ? 0 : 1;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

int cmd_trap(const std::string& config_path, int sweep_max, const std::string& schedule_out,
             bool as_json) {
  qfti::TrapConfig cfg = qfti::load_trap_config(config_path);
  const int n = cfg.n_ions;
  const auto j_raw = qfti::coupling_matrix(cfg, 1.0);
  const auto j_fit = qfti::coupling_matrix(cfg);
  const double t_cons_raw = qfti::total_time_consecutive(n, j_raw);
  const double t_cons_fit = qfti::total_time_consecutive(n, j_fit);
  const double t_par = qfti::total_time_parallel(n, 1.0);

  json report;
  report["command"] = "trap";
  report["inputs"] = {{"config", config_path},
                      {"n_ions", n},
                      {"mass_amu", cfg.mass_amu},
                      {"g_factor", cfg.g_factor},
                      {"gradient_T_per_m", cfg.gradient},
                      {"axial_freq_Hz", cfg.axial_freq_hz}};
  report["kappa"] = qfti::kFittedKappa;
  report["coupling_rad_per_s"] = {{"kappa_1", matrix_to_json(j_raw.j)},
                                  {"fitted", matrix_to_json(j_fit.j)}};
  json durations = json::array();
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l)
      durations.push_back({{"pair", {k, l}},
                           {"phase", qfti::p_block_angle(k, l)},
                           {"duration_s", qfti::gate_duration(qfti::p_block_angle(k, l),
                                                              j_fit.j(k - 1, l - 1))}});
  report["gate_durations"] = durations;
  report["totals"] = {{"consecutive_s_kappa_1", t_cons_raw},
                      {"consecutive_s_fitted", t_cons_fit},
                      {"parallel_alpha_1", t_par}};

  std::ostringstream human;
  human << "trap: N=" << n << "  kappa=" << qfti::kFittedKappa << "\n";
  human << "  J fitted (rad/s):\n";
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l)
      human << "    J_" << k << l << " = " << j_fit.j(k - 1, l - 1)
            << "   (kappa=1: " << j_raw.j(k - 1, l - 1) << ")\n";
  human << "  consecutive total: " << t_cons_fit * 1e3 << " ms (kappa=1: " << t_cons_raw * 1e3
        << " ms)\n";
  human << "  parallel total (t=1 units, alpha=1): " << t_par << "\n";

  if (sweep_max >= 2) {
    json sweep = json::array();
    human << "  N    T_consecutive [ms]   T_parallel (alpha=1)   ratio\n";
    for (int nn = 2; nn <= sweep_max; ++nn) {
      qfti::TrapConfig c2 = cfg;
      c2.n_ions = nn;
      const auto jn = qfti::coupling_matrix(c2);
      const double tc = qfti::total_time_consecutive(nn, jn);
      const double tp = qfti::total_time_parallel(nn, 1.0);
      sweep.push_back({{"n", nn},
                       {"consecutive_s", tc},
                       {"parallel", tp},
                       {"ratio", tc / tp}});
      human << "  " << nn << "    " << tc * 1e3 << "    " << tp << "    " << tc / tp << "\n";
    }
    report["sweep"] = sweep;
  }

  if (!schedule_out.empty()) {
    const auto sched = qfti::consecutive_schedule(n, j_fit, cfg);
    std::ofstream out(schedule_out);
    if (!out) throw std::runtime_error("cannot write schedule to " + schedule_out);
    out << qfti::schedule_to_json(sched).dump(2) << "\n";
    report["schedule_path"] = schedule_out;
    human << "  schedule written to " << schedule_out << "\n";
  }
  report["pass"] = true;
  emit(report, as_json, human.str());
  return 0;
}

int cmd_schedule(const std::string& config_path, const std::string& out_path, bool simulate,
                 bool as_json) {
  qfti::TrapConfig cfg = qfti::load_trap_config(config_path);
  const auto j = qfti::coupling_matrix(cfg);
  const auto sched = qfti::consecutive_schedule(cfg.n_ions, j, cfg);
  const json sj = qfti::schedule_to_json(sched);
  if (out_path.empty() || out_path == "-") {
    std::cout << sj.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write schedule to " + out_path);
    out << sj.dump(2) << "\n";
  }
  if (!simulate) return 0;
  if (cfg.n_ions > 3) throw std::runtime_error("schedule --simulate supports at most 3 ions");
  const auto sim = qfti::simulate_schedule(sched, j);
  const qfti::Matrix target =
      qfti::bit_reversal_matrix(cfg.n_ions).adjoint() * qfti::dft_matrix(cfg.n_ions);
  const double dist = qfti::phase_invariant_distance(sim.qubit_subspace, target);
  const bool pass = dist < 1e-9;
  json report;
  report["command"] = "schedule";
  report["metrics"] = {{"oracle_distance", dist}, {"subspace_leakage", sim.leakage}};
  report["pass"] = pass;
  std::ostringstream human;
  human << "simulated schedule vs QFT (qubit subspace): distance " << dist << ", leakage "
        << sim.leakage << (pass ? "  PASS\n" : "  FAIL\n");
  emit(report, as_json, human.str());
  return pass ? 0 : 1;
}

int cmd_ms_sim(int n_ions, double gfrac, double delta, int nmax, double periods, bool as_json) {
  qfti::BichromaticDrive drive;
  drive.delta = delta;
  drive.fock_cutoff = nmax;
  drive.g.assign(n_ions, gfrac * delta);
  drive.validate();
  const double t = periods * 2.0 * qfti::kPi / delta;

  const auto num = qfti::propagate_numeric(drive, t);
  const auto mag = qfti::magnus_propagator(drive, t);
  const double fid = qfti::min_column_fidelity(num.u, mag.u, n_ions, nmax);
  double worst_purity = 0.0;
  for (long s = 0; s < qfti::ipow(2, n_ions); ++s)
    worst_purity = std::max(worst_purity, qfti::spin_purity_deficit(num.u, n_ions, nmax, s, 0));
  const auto phases = qfti::extract_spin_phases(num.u, n_ions, nmax);
  double worst_rel = 0.0;
  for (int k = 0; k < n_ions; ++k)
    for (int p = k + 1; p < n_ions; ++p) {
      const double want = 4.0 * qfti::kPi * drive.g[k] * drive.g[p] / (delta * delta) * periods;
      worst_rel = std::max(worst_rel, std::abs(phases.pair_phase(k, p) - want) / want);
    }
  const bool pass = fid >= 1.0 - 1e-4 && worst_purity < 1e-4;

  json report;
  report["command"] = "ms-sim";
  report["inputs"] = {{"n_ions", n_ions}, {"g_over_delta", gfrac}, {"delta", delta},
                      {"fock_cutoff", nmax}, {"time", t}};
  report["metrics"] = {{"steps", num.steps},
                       {"step_halving_delta", num.step_delta},
                       {"min_column_fidelity", fid},
                       {"truncation_leakage", num.top_level_population},
                       {"spin_purity_deficit", worst_purity},
                       {"pair_phase_rel_error", worst_rel},
                       {"global_phase_closed_form", mag.global_phase}};
  report["pass"] = pass;
  std::ostringstream human;
  human << "ms-sim: N=" << n_ions << " g/delta=" << gfrac << " n_max=" << nmax << " t=" << t
        << "\n"
        << "  steps=" << num.steps << " (halving delta " << num.step_delta << ")\n"
        << "  fidelity numeric vs closed form: " << fid << "\n"
        << "  spin purity deficit:             " << worst_purity << "\n"
        << "  truncation leakage:              " << num.top_level_population << "\n"
        << "  pair phase rel. error:           " << worst_rel << "\n"
        << (pass ? "  PASS\n" : "  FAIL\n");
  emit(report, as_json, human.str());
  return pass ? 0 : 1;
}

int cmd_three_qubit(const std::string& config_path, bool as_json) {
  qfti::TrapConfig cfg = qfti::load_trap_config(config_path);
  cfg.n_ions = 3;
  const auto j = qfti::coupling_matrix(cfg);
  const auto sol = qfti::solve_three_qubit(j);

  const qfti::Matrix target = qfti::bit_reversal_matrix(3).adjoint() * qfti::dft_matrix(3);
  const auto all = qfti::compose(
      qfti::assemble_three_qubit_sequence(sol, j, qfti::FreeEvolutionPairs::AllPairs));
  const auto partial = qfti::compose(
      qfti::assemble_three_qubit_sequence(sol, j, qfti::FreeEvolutionPairs::Pairs12And13));
  const double d_all = qfti::phase_invariant_distance(all, target);
  const double d_partial = qfti::phase_invariant_distance(partial, target);
  const double t_cons = qfti::total_time_consecutive(3, j);
  const bool pass = sol.residual < 1e-10 && d_all < 1e-8;

  json report;
  report["command"] = "three-qubit";
  report["inputs"] = {{"config", config_path}};
  report["solution"] = {{"T1_s", sol.t1}, {"T2_s", sol.t2}, {"T3_s", sol.t3},
                        {"A1_rad", sol.a1}, {"A2_rad", sol.a2}, {"alpha", sol.alpha},
                        {"residual", sol.residual}};
  report["metrics"] = {{"total_time_s", qfti::three_qubit_total_time(sol)},
                       {"consecutive_total_s", t_cons},
                       {"oracle_distance_all_pairs", d_all},
                       {"oracle_distance_pairs_12_13", d_partial}};
  report["pass"] = pass;
  std::ostringstream human;
  human << "three-qubit: alpha=" << sol.alpha << " residual=" << sol.residual << "\n"
        << "  T1=" << sol.t1 * 1e3 << " ms  T2=" << sol.t2 * 1e3 << " ms  T3=" << sol.t3 * 1e3
        << " ms\n"
        << "  A1=" << sol.a1 / qfti::kPi << " pi  A2=" << sol.a2 / qfti::kPi << " pi\n"
        << "  total: " << qfti::three_qubit_total_time(sol) * 1e3
        << " ms  (consecutive: " << t_cons * 1e3 << " ms)\n"
        << "  oracle distance (all pairs coupled):   " << d_all << "\n"
        << "  oracle distance (pairs {12,13} only):  " << d_partial << "\n"
        << (pass ? "  PASS\n" : "  FAIL\n");
  emit(report, as_json, human.str());
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QFT-to-Ising compiler and verification toolkit"};
  app.require_subcommand(1);

  int n = 2;
  std::string mode = "ct", titf = "prose";
  bool swaps = false;
  double alpha = 1.0;
  auto* compile = app.add_subcommand("compile", "emit a circuit as JSON");
  compile->add_option("-n,--qubits", n, "qubit count")->required()->check(CLI::Range(1, 8));
  compile->add_option("-m,--mode", mode, "ct|consecutive|parallel")->required();
  compile->add_flag("--swaps", swaps, "append bit-reversal swaps");
  compile->add_option("--alpha", alpha, "tailoring scale (parallel mode)");
  compile->add_option("--titf", titf, "initial/final phase convention: prose|compact");

  std::string circuit_path = "-";
  bool as_json = false;
  auto* verify = app.add_subcommand("verify", "compare a circuit against the exact transform");
  verify->add_option("circuit", circuit_path, "circuit JSON file ('-' for stdin)");
  verify->add_flag("--json", as_json, "raw JSON report");

  std::string config_path, schedule_out;
  int sweep_max = 0;
  bool trap_json = false;
  auto* trap = app.add_subcommand("trap", "couplings and timings for a trap configuration");
  trap->add_option("-c,--config", config_path, "key=value trap config file")->required();
  trap->add_option("--sweep", sweep_max, "emit totals for N=2..SWEEP")->check(CLI::Range(2, 10));
  trap->add_option("--schedule-out", schedule_out, "write the consecutive schedule JSON here");
  trap->add_flag("--json", trap_json, "raw JSON report");

  std::string sched_config, sched_out = "-";
  bool sched_sim = false, sched_json = false;
  auto* sched = app.add_subcommand("schedule", "emit the consecutive pulse schedule");
  sched->add_option("-c,--config", sched_config, "key=value trap config file")->required();
  sched->add_option("-o,--out", sched_out, "output path ('-' for stdout)");
  sched->add_flag("--simulate", sched_sim, "simulate on the qutrit chain (N <= 3)");
  sched->add_flag("--json", sched_json, "raw JSON report for the simulation");

  int ms_ions = 2, ms_nmax = 25;
  double ms_gfrac = 0.05, ms_delta = 1.0, ms_periods = 1.0;
  bool ms_json = false;
  auto* ms = app.add_subcommand("ms-sim", "bichromatic gate: numeric vs closed form");
  ms->add_option("-n,--ions", ms_ions, "ion count")->check(CLI::Range(1, 3));
  ms->add_option("--gfrac", ms_gfrac, "g/delta for every ion");
  ms->add_option("--delta", ms_delta, "detuning (rad/s)");
  ms->add_option("--nmax", ms_nmax, "Fock cutoff")->check(CLI::Range(10, 200));
  ms->add_option("--periods", ms_periods, "evolution time in units of 2 pi/delta");
  ms->add_flag("--json", ms_json, "raw JSON report");

  std::string tq_config;
  bool tq_json = false;
  auto* tq = app.add_subcommand("three-qubit", "solve and verify the rearranged N=3 sequence");
  tq->add_option("-c,--config", tq_config, "key=value trap config file")->required();
  tq->add_flag("--json", tq_json, "raw JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (compile->parsed()) return cmd_compile(n, mode, swaps, alpha, titf);
    if (verify->parsed()) return cmd_verify(circuit_path, as_json);
    if (trap->parsed()) return cmd_trap(config_path, sweep_max, schedule_out, trap_json);
    if (sched->parsed()) return cmd_schedule(sched_config, sched_out, sched_sim, sched_json);
    if (ms->parsed()) return cmd_ms_sim(ms_ions, ms_gfrac, ms_delta, ms_nmax, ms_periods, ms_json);
    if (tq->parsed()) return cmd_three_qubit(tq_config, tq_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
