// Command-line front end: Landau-Zener measurement experiments, stroboscopic
// convergence studies, and the randomized invariant battery.

#include <algorithm>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef ZENO_HAVE_OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "zeno/channel.hpp"
#include "zeno/effective.hpp"
#include "zeno/landau_zener.hpp"
#include "zeno/matrix_functions.hpp"
#include "zeno/propagation.hpp"
#include "zeno/scenario.hpp"

using nlohmann::ordered_json;
using namespace zeno;

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

void set_jobs(int jobs) {
#ifdef ZENO_HAVE_OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

std::string csv_path(const std::string& prefix, const std::string& suffix) {
  return suffix.empty() ? prefix + ".csv" : prefix + "_" + suffix + ".csv";
}

// Relative --out prefixes may be redirected with ZENOSIM_OUT_DIR; that is the
// only environment knob.
std::string resolve_out_prefix(const std::string& out) {
  const char* dir = std::getenv("ZENOSIM_OUT_DIR");
  if (!dir || !*dir || out.empty() || out.front() == '/') return out;
  std::string base(dir);
  if (base.back() != '/') base += '/';
  return base + out;
}

// ---------------------------------------------------------------------------
// zenosim lz

struct LZCmdOptions {
  double delta = 1.0;
  double eps = 10.0;
  std::string schedule = "uniform";
  std::vector<int> n_values{16};
  std::string mode = "all";
  std::string out = "lz";
  double tol = 1e-6;
  int jobs = 0;
};

LZScheduleKind parse_schedule_kind(const std::string& s) {
  if (s == "none") return LZScheduleKind::none;
  if (s == "uniform") return LZScheduleKind::uniform;
  if (s == "adapted") return LZScheduleKind::adapted;
  throw CLI::ValidationError("--schedule", "must be none, uniform or adapted");
}

std::vector<ResultRecord> exact_records(const LZParams& p,
                                        const LZExactResult& exact) {
  std::vector<ResultRecord> records;
  const Trajectory& traj = exact.trajectory;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    const OrthonormalBasis basis = diabatic_basis(p, t);
    const auto pops = traj.states[i].populations(basis);
    records.push_back({"lz", "exact", t, pops,
                       traj.states[i].offdiagonal_norm(basis)});
  }
  return records;
}

std::vector<ResultRecord> effective_records(const LZEffectiveResult& eff) {
  std::vector<ResultRecord> records;
  for (std::size_t i = 0; i < eff.times.size(); ++i)
    records.push_back({"lz", "effective", eff.times[i],
                       {1.0 - eff.rho11[i], eff.rho11[i]}, 0.0});
  return records;
}

int run_lz(const LZCmdOptions& opt) {
  const std::string out_prefix = resolve_out_prefix(opt.out);
  const LZParams params(opt.delta, opt.eps);
  const LZScheduleKind kind = parse_schedule_kind(opt.schedule);
  if (kind == LZScheduleKind::none && opt.mode != "exact")
    throw CLI::ValidationError("--mode", "schedule 'none' supports only mode "
                                         "'exact'");
  for (int n : opt.n_values)
    if (n < 1 && kind != LZScheduleKind::none)
      throw CLI::ValidationError("--N", "values must be >= 1");

  struct Point {
    int n = 0;
    ordered_json summary;
    std::vector<ResultRecord> records;
  };
  std::vector<Point> points(opt.n_values.size());
  set_jobs(opt.jobs);

  std::exception_ptr failure;
#ifdef ZENO_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (points.size() > 1)
#endif
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      const int n = opt.n_values[i];
      Point& pt = points[i];
      pt.n = n;
      ordered_json& s = pt.summary;
      s["N"] = n;
      s["schedule"] = opt.schedule;

      if (opt.mode == "all") {
        const LZExperimentReport rep = lz_experiment(params, kind, n, opt.tol);
        s["terminal_rho11"] = {{"exact", rep.exact_terminal},
                               {"effective", rep.effective_terminal},
                               {"closed_form", rep.closed_form_terminal}};
        s["deviations"] = {{"exact_vs_effective", rep.dev_exact_effective},
                           {"exact_vs_closed", rep.dev_exact_closed},
                           {"effective_vs_closed", rep.dev_effective_closed}};
        s["n_rho11"] = {{"exact", rep.n_rho11_exact},
                        {"effective", rep.n_rho11_effective},
                        {"closed_form", rep.n_rho11_closed}};
        s["truncation_T"] = rep.truncation_time;
        s["integrator_steps"] = rep.integrator_steps;
        s["max_validity_ratio"] = rep.max_validity_ratio;
        s["warnings"] = rep.warnings;
        pt.records = exact_records(params, rep.exact);
        if (kind != LZScheduleKind::none) {
          auto eff = effective_records(rep.effective);
          pt.records.insert(pt.records.end(), eff.begin(), eff.end());
          pt.records.push_back({"lz", "closed-form",
                                rep.exact.trajectory.times.back(),
                                {1.0 - rep.closed_form_terminal,
                                 rep.closed_form_terminal},
                                0.0});
        }
      } else if (opt.mode == "exact") {
        const LZSchedule schedule = make_schedule(params, kind, n);
        const LZExactResult exact = lz_exact_run(params, schedule, opt.tol);
        s["terminal_rho11"] = {{"exact", exact.terminal_rho11}};
        s["truncation_T"] = exact.truncation_time;
        s["integrator_steps"] = exact.stats.accepted;
        s["warnings"] = exact.warnings;
        pt.records = exact_records(params, exact);
      } else if (opt.mode == "effective") {
        const LZSchedule schedule = make_schedule(params, kind, n);
        const LZEffectiveResult eff = lz_effective_ode(params, schedule,
                                                       opt.tol);
        s["terminal_rho11"] = {{"effective", eff.terminal}};
        s["max_validity_ratio"] = eff.max_validity_ratio;
        s["warnings"] = eff.warnings;
        pt.records = effective_records(eff);
      } else if (opt.mode == "closed") {
        const double cf = lz_closed_form(params, kind, n);
        s["terminal_rho11"] = {{"closed_form", cf}};
        const LZSchedule schedule = make_schedule(params, kind, n);
        pt.records.push_back({"lz", "closed-form", schedule.times.back(),
                              {1.0 - cf, cf}, 0.0});
      } else {
        throw CLI::ValidationError("--mode",
                                   "must be exact, effective, closed or all");
      }
    } catch (...) {
#ifdef ZENO_HAVE_OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  // Single-writer output keeps files deterministic.
  ordered_json summary;
  summary["command"] = "lz";
  summary["delta"] = opt.delta;
  summary["epsilon"] = opt.eps;
  summary["mode"] = opt.mode;
  summary["tolerance"] = opt.tol;
  summary["lz_formula"] = lz_formula(params);
  summary["points"] = ordered_json::array();
  for (const auto& pt : points) summary["points"].push_back(pt.summary);

  for (const auto& pt : points) {
    const std::string suffix =
        points.size() == 1 ? "" : "N" + std::to_string(pt.n);
    write_csv_file(csv_path(out_prefix, suffix), pt.records, 2);
  }
  std::ofstream js(out_prefix + ".json", std::ios::binary);
  if (!js)
    throw ValidationError("cannot open output file: " + out_prefix + ".json");
  js << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// zenosim strobe

struct StrobeCmdOptions {
  std::string config;
  std::vector<double> taus;
  double horizon = 2.0;
  double g = 1.0;
  std::string out = "strobe";
  double tol = 1e-8;
  int jobs = 0;
};

int run_strobe(const StrobeCmdOptions& opt) {
  const std::string out_prefix = resolve_out_prefix(opt.out);
  if (out_prefix + ".json" == opt.config)
    throw CLI::ValidationError("--out",
                               "summary path would overwrite the config");
  const ScenarioConfig cfg = ScenarioConfig::from_file(opt.config);
  if (opt.taus.empty())
    throw CLI::ValidationError("--tau", "need at least one spacing");
  for (std::size_t i = 0; i < opt.taus.size(); ++i) {
    if (opt.taus[i] <= 0.0)
      throw CLI::ValidationError("--tau", "spacings must be positive");
    if (i > 0 && opt.taus[i] >= opt.taus[i - 1])
      throw CLI::ValidationError("--tau", "spacings must strictly decrease");
  }
  const bool hamiltonian_kind =
      cfg.generator_kind == ScenarioConfig::GeneratorKind::hamiltonian;
  const bool dissipative_kind =
      cfg.generator_kind == ScenarioConfig::GeneratorKind::dissipative;
  if (!hamiltonian_kind && !dissipative_kind)
    throw ValidationError(
        "strobe needs a pure hamiltonian or pure dissipative generator");

  const OrthonormalBasis basis = cfg.build_measurement_basis();
  const DensityOperator rho0 = cfg.build_initial_state();
  const std::vector<double> p0 = rho0.populations(basis);

  // Pauli reference. For Hamiltonian dynamics the exact runs rescale
  // gamma = sqrt(g / tau), which pins the rates W = g |h_kk'|^2 for every
  // tau; dissipative rates are first order in gamma and are not rescaled.
  RateMatrix rates = hamiltonian_kind
                         ? pauli_rates_hamiltonian(cfg.hamiltonian, basis,
                                                   1.0, opt.g)
                         : pauli_rates_dissipative(
                               [&](double) { return cfg.jumps.front().op; },
                               [&](double) { return cfg.jumps.front().rate; },
                               basis, 0.0);

  struct Row {
    double tau = 0.0;
    double max_deviation = 0.0;
    long steps = 0;
    std::vector<ResultRecord> records;
  };
  std::vector<Row> rows(opt.taus.size());
  set_jobs(opt.jobs);

  std::exception_ptr failure;
#ifdef ZENO_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (rows.size() > 1)
#endif
  for (std::size_t i = 0; i < rows.size(); ++i) {
    try {
      const double tau = opt.taus[i];
      Row& row = rows[i];
      row.tau = tau;

      GeneratorSpec gen = cfg.build_generator();
      if (hamiltonian_kind) {
        const double gamma = std::sqrt(opt.g / tau);
        const ComplexMatrix h = cfg.hamiltonian;
        gen = GeneratorSpec::hamiltonian(h * complex(gamma, 0.0));
      }
      const int count = (int)std::floor(opt.horizon / tau + 1e-9);
      const MeasurementSchedule schedule = MeasurementSchedule::periodic(
          0.0, tau, count, BasisSource::fixed(basis));
      const Trajectory traj = intervened_evolution(gen, schedule, rho0, 0.0,
                                                   opt.horizon, opt.tol);
      row.steps = traj.meta.stats.accepted;

      const std::vector<double> grid = traj.times;
      const PopulationTrajectory pauli = solve_pauli(
          [&](double) { return rates; }, p0, 0.0, opt.horizon, opt.tol, grid);
      if (pauli.times.size() != traj.times.size())
        throw NumericalError("strobe: reference grid misaligned");

      const std::string id = "tau" + std::to_string(i);
      for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const auto pops = traj.states[k].populations(basis);
        row.records.push_back({id, "exact", traj.times[k], pops,
                               traj.states[k].offdiagonal_norm(basis)});
        // solve_pauli recorded the same grid (plus identical endpoints).
        const auto& pref = pauli.populations[k];
        row.records.push_back({id, "effective", pauli.times[k], pref, 0.0});
        for (std::size_t l = 0; l < pops.size(); ++l)
          row.max_deviation =
              std::max(row.max_deviation, std::abs(pops[l] - pref[l]));
      }
    } catch (...) {
#ifdef ZENO_HAVE_OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  ordered_json summary;
  summary["command"] = "strobe";
  summary["config"] = opt.config;
  summary["generator_kind"] = hamiltonian_kind ? "hamiltonian" : "dissipative";
  summary["g"] = opt.g;
  summary["horizon"] = opt.horizon;
  summary["tolerance"] = opt.tol;
  summary["rows"] = ordered_json::array();
  for (const auto& row : rows)
    summary["rows"].push_back({{"tau", row.tau},
                               {"max_deviation", row.max_deviation},
                               {"integrator_steps", row.steps}});
  // Halving ratios between consecutive spacings.
  summary["halving_ratios"] = ordered_json::array();
  for (std::size_t i = 1; i < rows.size(); ++i)
    summary["halving_ratios"].push_back(
        rows[i].max_deviation > 0.0
            ? rows[i - 1].max_deviation / rows[i].max_deviation
            : std::numeric_limits<double>::infinity());

  for (std::size_t i = 0; i < rows.size(); ++i)
    write_csv_file(csv_path(out_prefix, "tau" + std::to_string(i)),
                   rows[i].records, cfg.dimension);
  std::ofstream js(out_prefix + ".json", std::ios::binary);
  if (!js)
    throw ValidationError("cannot open output file: " + out_prefix + ".json");
  js << summary.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// zenosim check

struct CheckRow {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass() const { return residual <= tolerance; }
};

ComplexMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(i, j) = complex(gauss(rng), gauss(rng));
  return m;
}

ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix m = random_matrix(d, rng);
  return (m + m.adjoint()) * complex(0.5, 0.0);
}

OrthonormalBasis random_basis(std::size_t d, std::mt19937_64& rng) {
  ComplexMatrix m = random_matrix(d, rng);
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t k = 0; k < d; ++k) {
      ComplexMatrix v = m.column(k);
      for (std::size_t j = 0; j < k; ++j) {
        const ComplexMatrix u = m.column(j);
        v -= u * inner(u, v);
      }
      m.set_column(k, normalized(v));
    }
  return OrthonormalBasis::from_columns(std::move(m));
}

int run_check(std::uint64_t seed, int max_dim) {
  if (max_dim < 2 || max_dim > 8)
    throw CLI::ValidationError("--dim", "must be in [2, 8]");
  std::mt19937_64 rng(seed);
  std::vector<CheckRow> rows;
  auto residual_row = [&](const std::string& name, double tolerance) {
    rows.push_back({name, 0.0, tolerance});
    return rows.size() - 1;
  };
  auto bump = [&](std::size_t idx, double value) {
    rows[idx].residual = std::max(rows[idx].residual, value);
  };

  const auto idem = residual_row("channel idempotence (Lam Lam = Lam)", 1e-12);
  const auto cp = residual_row("channel complete positivity (Choi)", 1e-10);
  const auto tp = residual_row("channel trace preservation", 1e-10);
  const auto fix = residual_row("channel fixes basis projectors", 1e-12);
  const auto lll = residual_row("Lam L Lam = 0 (Hamiltonian)", 1e-11);
  const auto lllll = residual_row("Lam L Lam L Lam = 0", 1e-11);
  const auto stoch = residual_row("overlap matrices doubly stochastic", 1e-10);
  const auto logrt = residual_row("rate matrix log/exp round trip", 1e-8);
  const auto gksl = residual_row("GKSL report for effective generator", 0.0);
  const auto fixedpt = residual_row("maximally mixed fixed point", 1e-11);
  const auto sumrule = residual_row("Pauli escape-rate sum rule", 1e-12);
  const auto vecrt = residual_row("vectorization round trip", 0.0);
  const auto exprt = residual_row("exp(M) exp(-M) = I", 1e-10);
  const auto logexp = residual_row("log(exp(M)) = M (small norms)", 1e-9);
  const auto strobeeq =
      residual_row("GKSL form equals stroboscopic on diagonals", 1e-12);

  for (int instance = 0; instance < 25; ++instance) {
    const std::size_t d = 2 + (std::size_t)(instance % (max_dim - 1));
    const OrthonormalBasis basis = random_basis(d, rng);
    const DephasingChannel lam(basis);
    const SuperOperator& s = lam.superoperator();
    const ComplexMatrix h = random_hermitian(d, rng);
    const SuperOperator l = SuperOperator::hamiltonian_commutator(h);

    bump(idem, (s * s).max_abs_diff(s));
    const auto cptp = check_cptp(s);
    bump(cp, std::max(0.0, -cptp.min_choi_eigenvalue));
    bump(tp, cptp.trace_preservation_residual);
    for (std::size_t k = 0; k < d; ++k) {
      const ComplexMatrix p = basis.projector(k);
      bump(fix, lam.apply(p).max_abs_diff(p));
    }
    bump(lll, (s * l * s).matrix().max_abs());
    bump(lllll, (s * l * s * l * s).matrix().max_abs());

    const OrthonormalBasis other = random_basis(d, rng);
    const OverlapMatrix b = overlap_matrix(basis, other);
    bump(stoch, b.stochasticity_defect());
    try {
      const RateMatrix q = rate_from_overlap(b, 1.0);
      if (!q.projected())
        bump(logrt, matrix_exp(q.entries().to_complex())
                        .max_abs_diff(b.entries().to_complex()));
    } catch (const BranchCutError&) {
      // Overlap landed on the log branch cut; nothing to round trip.
    }

    const double gamma = 0.9, tau = 0.2;
    const SuperOperator l_eff =
        gksl_effective_hamiltonian(h, basis, gamma, tau);
    const GkslReport rep = gksl_check(l_eff, 1.0);
    bump(gksl, rep.consistent ? 0.0 : 1.0);
    bump(fixedpt,
         l_eff.apply(ComplexMatrix::identity(d) * complex(1.0 / d, 0.0))
             .max_abs());

    const RateMatrix w = pauli_rates_hamiltonian(h, basis, gamma, tau);
    const ComplexMatrix hb = basis.to_basis(h);
    const ComplexMatrix hb2 = hb * hb;
    for (std::size_t k = 0; k < d; ++k) {
      double escape = 0.0;
      for (std::size_t kp = 0; kp < d; ++kp)
        if (kp != k) escape += w(kp, k);
      const double expected =
          gamma * gamma * tau *
          (hb2(k, k).real() - hb(k, k).real() * hb(k, k).real());
      bump(sumrule, std::abs(escape - expected));
    }

    const ComplexMatrix x = random_matrix(d, rng);
    bump(vecrt, devectorize(vectorize(x), d).max_abs_diff(x));
    bump(exprt, (matrix_exp(x) * matrix_exp(-x))
                    .max_abs_diff(ComplexMatrix::identity(d)));
    ComplexMatrix small = random_matrix(d, rng);
    small *= complex(2.0 / small.frobenius_norm(), 0.0);
    bump(logexp, principal_log(matrix_exp(small)).max_abs_diff(small));

    const SuperOperator strobe_gen =
        stroboscopic_generator(l, lam, gamma, tau);
    bump(strobeeq, (l_eff * s).max_abs_diff(strobe_gen));
  }

  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.name.size());
  bool all_pass = true;
  for (const auto& row : rows) {
    const bool ok = row.pass();
    all_pass = all_pass && ok;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "residual %9.2e  tol %8.1e",
                  row.residual, row.tolerance);
    std::cout << (ok ? "PASS  " : "FAIL  ") << row.name
              << std::string(width - row.name.size() + 2, ' ') << buf << "\n";
  }
  std::cout << (all_pass ? "all invariants hold" : "invariant failures above")
            << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zenosim: open-system dynamics under repeated nonselective "
               "measurements"};
  app.require_subcommand(1);

  LZCmdOptions lz_opt;
  CLI::App* lz_cmd = app.add_subcommand(
      "lz", "Landau-Zener sweeps with measurement schedules");
  lz_cmd->add_option("--delta", lz_opt.delta, "coupling Delta > 0")
      ->check(CLI::PositiveNumber);
  lz_cmd->add_option("--eps", lz_opt.eps, "sweep rate epsilon > 0")
      ->check(CLI::PositiveNumber);
  lz_cmd->add_option("--schedule", lz_opt.schedule,
                     "none | uniform | adapted");
  lz_cmd->add_option("--N", lz_opt.n_values,
                     "schedule size(s); a list sweeps N")
      ->delimiter(',');
  lz_cmd->add_option("--mode", lz_opt.mode, "exact | effective | closed | all");
  lz_cmd->add_option("--out", lz_opt.out, "output path prefix");
  lz_cmd->add_option("--tol", lz_opt.tol, "integrator tolerance")
      ->check(CLI::PositiveNumber);
  lz_cmd->add_option("--jobs", lz_opt.jobs, "max concurrent sweep points");

  StrobeCmdOptions st_opt;
  CLI::App* st_cmd = app.add_subcommand(
      "strobe", "stroboscopic-limit convergence study from a config file");
  st_cmd->add_option("--config", st_opt.config, "scenario JSON path")
      ->required();
  st_cmd->add_option("--tau", st_opt.taus,
                     "measurement spacings, strictly decreasing")
      ->required()
      ->delimiter(',');
  st_cmd->add_option("--horizon", st_opt.horizon, "run length")
      ->check(CLI::PositiveNumber);
  st_cmd->add_option("--g", st_opt.g,
                     "held product gamma^2 tau for Hamiltonian configs")
      ->check(CLI::PositiveNumber);
  st_cmd->add_option("--out", st_opt.out, "output path prefix");
  st_cmd->add_option("--tol", st_opt.tol, "integrator tolerance")
      ->check(CLI::PositiveNumber);
  st_cmd->add_option("--jobs", st_opt.jobs, "max concurrent spacings");

  std::uint64_t seed = 0;
  int max_dim = 4;
  CLI::App* ck_cmd =
      app.add_subcommand("check", "run the randomized invariant battery");
  ck_cmd->add_option("--seed", seed, "RNG seed for instances");
  ck_cmd->add_option("--dim", max_dim, "largest dimension, 2..8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (lz_cmd->parsed()) return run_lz(lz_opt);
    if (st_cmd->parsed()) return run_strobe(st_opt);
    return run_check(seed, max_dim);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
