#include "zeno/landau_zener.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "zeno/matrix_functions.hpp"

namespace zeno {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

LZParams::LZParams(double delta_, double eps_) : delta(delta_), eps(eps_) {
  if (!(delta > 0.0))
    throw ValidationError(
        "LZParams: delta must be > 0 (the diabatic basis degenerates at "
        "t = 0 otherwise)");
  if (!(eps > 0.0)) throw ValidationError("LZParams: eps must be > 0");
}

ComplexMatrix lz_hamiltonian(const LZParams& p, double t) {
  ComplexMatrix h(2, 2);
  h(0, 0) = p.eps * t;
  h(0, 1) = p.delta;
  h(1, 0) = p.delta;
  h(1, 1) = -p.eps * t;
  return h;
}

GeneratorSpec lz_generator(const LZParams& p) {
  return GeneratorSpec::hamiltonian(
      [p](double t) { return lz_hamiltonian(p, t); }, true);
}

OrthonormalBasis diabatic_basis(const LZParams& p, double t) {
  const double et = p.eps * t;
  const double s = std::hypot(p.delta, et);
  // u = s - eps t, rewritten for eps t > 0 to dodge the cancellation.
  const double u = et > 0.0 ? p.delta * p.delta / (s + et) : s - et;
  const double norm = std::sqrt(2.0 * s * u);
  ComplexMatrix cols(2, 2);
  cols(0, 0) = u / norm;
  cols(1, 0) = -p.delta / norm;
  cols(0, 1) = p.delta / norm;
  cols(1, 1) = u / norm;
  return OrthonormalBasis::from_columns(std::move(cols));
}

double lz_formula(const LZParams& p) {
  return std::exp(-kPi * p.delta * p.delta / p.eps);
}

LZSchedule make_schedule(const LZParams& p, LZScheduleKind kind, int n) {
  if (kind == LZScheduleKind::none) return {kind, 0, {}};
  if (n < 1) throw ValidationError("make_schedule: N must be >= 1");
  const double edge = 2.0 * p.delta / p.eps;
  std::vector<double> times;
  times.reserve(2 * n + 1);
  if (kind == LZScheduleKind::uniform) {
    for (int m = 1; m <= 2 * n + 1; ++m)
      times.push_back(edge * double(m - 1 - n) / double(n));
  } else {
    // Quadratic clustering around t = 0; the grid is odd in m - N - 1 and
    // matches t_m = 2 delta (m-N-1)(m-N) / (eps N (N+1)) on the right half.
    for (int m = 1; m <= 2 * n + 1; ++m) {
      const int j = m - n - 1;
      const int aj = std::abs(j);
      const double mag =
          edge * double(aj) * double(aj + 1) / (double(n) * double(n + 1));
      times.push_back(j < 0 ? -mag : mag);
    }
  }
  // Collapse duplicate times: repeated channels are a no-op.
  std::vector<double> unique_times;
  for (double t : times)
    if (unique_times.empty() ||
        t - unique_times.back() > 1e-15 * std::max(1.0, edge))
      unique_times.push_back(t);
  return {kind, n, std::move(unique_times)};
}

namespace {

// Antiderivatives used by the piecewise-exact effective integration:
// F1 = int dt / (d^2 + (e t)^2), F2 = int dt / (d^2 + (e t)^2)^2.
double f1(double t, double d, double e) {
  return std::atan(e * t / d) / (e * d);
}

double f2(double t, double d, double e) {
  const double den = d * d + e * t * e * t;
  return t / (2.0 * d * d * den) + std::atan(e * t / d) / (2.0 * d * d * d * e);
}

}  // namespace

LZEffectiveResult lz_effective_ode(const LZParams& p, const LZSchedule& schedule,
                                   double tolerance) {
  LZEffectiveResult out;
  if (schedule.kind == LZScheduleKind::none) {
    // No measurements: the effective equation does not apply; report the
    // exact unmeasured propagation instead.
    out.warnings.push_back(
        "schedule has no measurements; exact propagation used");
    LZExactResult exact = lz_exact_run(p, schedule, tolerance);
    out.terminal = exact.terminal_rho11;
    out.times = {};
    out.rho11 = {};
    return out;
  }
  if (schedule.times.size() < 2)
    throw ValidationError("lz_effective_ode: need at least two measurements");

  const double d = p.delta;
  const double e = p.eps;
  double u = 1.0;  // u = 1 - 2 rho11, rho11(first measurement) = 0
  out.times.push_back(schedule.times.front());
  out.rho11.push_back(0.0);
  for (std::size_t m = 1; m < schedule.times.size(); ++m) {
    const double a = schedule.times[m - 1];
    const double b = schedule.times[m];
    const double dt = b - a;
    // Exact integral of the transition rate over [a, b].
    const double coeff = e * e * d * d * dt / 4.0;
    const double integral =
        coeff * ((f2(b, d, e) - f2(a, d, e)) +
                 dt * dt * (f1(b, d, e) - f1(a, d, e)));
    u *= std::exp(-2.0 * integral);
    out.times.push_back(b);
    out.rho11.push_back(0.5 * (1.0 - u));

    // Validity ratio dt * eps * delta / (delta^2 + (eps t)^2) at the point of
    // strongest rate inside the interval.
    const double tstar = (a <= 0.0 && b >= 0.0) ? 0.0
                         : std::min(std::abs(a), std::abs(b));
    const double ratio = dt * e * d / (d * d + e * tstar * e * tstar);
    out.max_validity_ratio = std::max(out.max_validity_ratio, ratio);
  }
  if (out.max_validity_ratio > tol::interval_strength_warn) {
    std::ostringstream msg;
    msg << "measurement spacing outside the validity regime (ratio "
        << out.max_validity_ratio << " > " << tol::interval_strength_warn
        << ")";
    out.warnings.push_back(msg.str());
  }
  out.terminal = out.rho11.back();
  return out;
}

double lz_closed_form(const LZParams& p, LZScheduleKind kind, int n) {
  if (n < 1) throw ValidationError("lz_closed_form: N must be >= 1");
  const double d4 = std::pow(p.delta, 4);
  const double e2 = p.eps * p.eps;
  if (kind == LZScheduleKind::uniform) {
    const double nn = double(n);
    const double x = kPi * (8.0 * d4 + e2 * nn * nn) / (2.0 * e2 * nn * nn * nn);
    return 0.5 * (1.0 - std::exp(-x));
  }
  if (kind == LZScheduleKind::adapted) {
    const double np1 = double(n + 1);
    const double x = (np1 * np1 + 4.0 * d4 / (3.0 * e2)) / (2.0 * np1 * np1 * np1);
    return 0.5 * (1.0 - std::exp(-x));
  }
  throw ValidationError("lz_closed_form: schedule kind has no closed form");
}

namespace {

double diabatic_population_1(const LZParams& p, double t,
                             const ComplexMatrix& rho) {
  const OrthonormalBasis basis = diabatic_basis(p, t);
  const ComplexMatrix v = basis.vector(1);
  return (v.adjoint() * rho * v)(0, 0).real();
}

struct SingleRun {
  double terminal = 0.0;
  detail::IntegratorStats stats;
  std::vector<std::string> warnings;
  Trajectory trajectory;
};

SingleRun run_at_truncation(const LZParams& p, const LZSchedule& schedule,
                            double truncation, double tolerance) {
  SingleRun run;
  const GeneratorSpec gen = lz_generator(p);
  // The state that occupied |0> in the infinite past is, at -T, the
  // instantaneous ground state up to O(1/T^3); the bare |0><0| start would
  // leave an O(1/T) Stueckelberg beat in the terminal populations.
  const DensityOperator rho0 =
      DensityOperator::pure(diabatic_basis(p, -truncation).vector(0));
  MeasurementSchedule events =
      MeasurementSchedule::at_times(schedule.times,
                                    BasisSource::instantaneous_eigenbasis());
  run.trajectory = intervened_evolution(gen, events, rho0, -truncation,
                                        truncation, tolerance);
  run.stats = run.trajectory.meta.stats;
  run.warnings = run.trajectory.meta.warnings;

  // Trailing average of the diabatic level-1 population over a few local
  // oscillation periods past +T; 8 samples per period keeps the mean free of
  // aliasing.
  const double period = kPi / (p.eps * truncation);
  const double window = 8.0 * period;
  const int samples = 64;
  ComplexMatrix rho = run.trajectory.states.back().matrix();
  double t = truncation;
  double acc = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double t_next = truncation + window * double(i) / samples;
    rho = propagate(gen, DensityOperator(rho), t, t_next, tolerance,
                    defaults::max_integrator_steps, &run.stats)
              .matrix();
    t = t_next;
    acc += diabatic_population_1(p, t, rho);
  }
  run.terminal = acc / samples;
  return run;
}

}  // namespace

LZExactResult lz_exact_run(const LZParams& p, const LZSchedule& schedule,
                           double tolerance) {
  const double terminal_tolerance = 1e-3;
  const double window_edge = 2.0 * p.delta / p.eps;
  double truncation =
      4.0 * std::max(window_edge, 1.0 / std::sqrt(p.eps));

  LZExactResult out;
  SingleRun current = run_at_truncation(p, schedule, truncation, tolerance);
  for (int doubling = 0; doubling < 8; ++doubling) {
    SingleRun next =
        run_at_truncation(p, schedule, 2.0 * truncation, tolerance);
    next.stats.accepted += current.stats.accepted;
    next.stats.rejected += current.stats.rejected;
    const double change = std::abs(next.terminal - current.terminal);
    current = std::move(next);
    truncation *= 2.0;
    if (change < 0.1 * terminal_tolerance) break;
    if (doubling == 7)
      current.warnings.push_back(
          "terminal population did not settle within the truncation-doubling "
          "budget");
  }
  out.terminal_rho11 = current.terminal;
  out.truncation_time = truncation;
  out.stats = current.stats;
  out.warnings = std::move(current.warnings);
  out.trajectory = std::move(current.trajectory);
  return out;
}

LZExperimentReport lz_experiment(const LZParams& p, LZScheduleKind kind, int n,
                                 double tolerance) {
  LZExperimentReport rep{p, kind, n};
  const LZSchedule schedule = make_schedule(p, kind, n);

  LZExactResult exact = lz_exact_run(p, schedule, tolerance);
  rep.exact_terminal = exact.terminal_rho11;
  rep.truncation_time = exact.truncation_time;
  rep.integrator_steps = exact.stats.accepted;
  rep.warnings = exact.warnings;

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (kind == LZScheduleKind::none) {
    rep.effective_terminal = nan;
    rep.closed_form_terminal = nan;
    rep.dev_exact_effective = nan;
    rep.dev_exact_closed = nan;
    rep.dev_effective_closed = nan;
    rep.n_rho11_exact = nan;
    rep.n_rho11_effective = nan;
    rep.n_rho11_closed = nan;
    rep.exact = std::move(exact);
    return rep;
  }

  LZEffectiveResult effective = lz_effective_ode(p, schedule, tolerance);
  rep.effective_terminal = effective.terminal;
  rep.max_validity_ratio = effective.max_validity_ratio;
  for (const auto& w : effective.warnings) rep.warnings.push_back(w);
  rep.closed_form_terminal = lz_closed_form(p, kind, n);

  rep.dev_exact_effective = std::abs(rep.exact_terminal - rep.effective_terminal);
  rep.dev_exact_closed = std::abs(rep.exact_terminal - rep.closed_form_terminal);
  rep.dev_effective_closed =
      std::abs(rep.effective_terminal - rep.closed_form_terminal);
  rep.n_rho11_exact = n * rep.exact_terminal;
  rep.n_rho11_effective = n * rep.effective_terminal;
  rep.n_rho11_closed = n * rep.closed_form_terminal;
  rep.exact = std::move(exact);
  rep.effective = std::move(effective);
  return rep;
}

}  // namespace zeno
