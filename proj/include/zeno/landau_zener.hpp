#pragma once

#include "zeno/effective.hpp"
#include "zeno/propagation.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Landau-Zener sweep H(t) = delta * sigma_x + eps * t * sigma_z, hbar = 1.
struct LZParams {
  double delta;  // coupling (half gap at t = 0)
  double eps;    // sweep rate

  LZParams(double delta, double eps);
};

enum class LZScheduleKind { none, uniform, adapted };

/// Measurement times for the Landau-Zener runs, confined to
/// [-2 delta/eps, 2 delta/eps]. `uniform` spreads 2N+1 times evenly;
/// `adapted` clusters them quadratically around t = 0.
struct LZSchedule {
  LZScheduleKind kind = LZScheduleKind::none;
  int n = 0;
  std::vector<double> times;
};

GeneratorSpec lz_generator(const LZParams& p);
ComplexMatrix lz_hamiltonian(const LZParams& p, double t);

/// Instantaneous eigenbasis (diabatic states): column 0 is |phi_0(t)> with
/// H |phi_0> = -sqrt(delta^2 + (eps t)^2) |phi_0>, column 1 is |phi_1(t)>.
OrthonormalBasis diabatic_basis(const LZParams& p, double t);

/// exp(-pi delta^2 / eps): the probability <0|rho(+inf)|0> of staying in the
/// initial diabatic state under the unmeasured sweep.
double lz_formula(const LZParams& p);

LZSchedule make_schedule(const LZParams& p, LZScheduleKind kind, int n);

struct LZEffectiveResult {
  std::vector<double> times;   // schedule times
  std::vector<double> rho11;   // population of diabatic level 1 at each time
  double terminal = 0.0;       // rho11 after the last measurement
  double max_validity_ratio = 0.0;
  std::vector<std::string> warnings;
};

/// Piecewise closed-form integration of the effective population equation
/// between consecutive measurements, starting from rho11 = 0 at the first
/// measurement. Requires a uniform or adapted schedule.
LZEffectiveResult lz_effective_ode(const LZParams& p,
                                   const LZSchedule& schedule,
                                   double tolerance = tol::integrator);

/// Closed-form terminal transition probability printed for the two schedule
/// families.
double lz_closed_form(const LZParams& p, LZScheduleKind kind, int n);

struct LZExactResult {
  double terminal_rho11 = 0.0;  // diabatic level-1 population at +infinity
  double truncation_time = 0.0;
  detail::IntegratorStats stats;
  std::vector<std::string> warnings;
  Trajectory trajectory;  // records at measurement times
};

/// Exact intervened run: start in |0><0| at -T, measure in the instantaneous
/// diabatic bases at the schedule times, propagate to +T with T chosen
/// adaptively (doubling until the terminal population settles), and read the
/// terminal diabatic populations through a trailing average that washes out
/// the residual Stueckelberg oscillation.
LZExactResult lz_exact_run(const LZParams& p, const LZSchedule& schedule,
                           double tolerance = 1e-6);

struct LZExperimentReport {
  LZParams params;
  LZScheduleKind kind;
  int n = 0;
  double exact_terminal = 0.0;
  double effective_terminal = 0.0;
  double closed_form_terminal = 0.0;
  double dev_exact_effective = 0.0;
  double dev_exact_closed = 0.0;
  double dev_effective_closed = 0.0;
  double n_rho11_exact = 0.0;
  double n_rho11_effective = 0.0;
  double n_rho11_closed = 0.0;
  double truncation_time = 0.0;
  long integrator_steps = 0;
  double max_validity_ratio = 0.0;
  std::vector<std::string> warnings;
  LZExactResult exact;
  LZEffectiveResult effective;
};

/// Run all three schemes for one (kind, N) point and collect terminal values,
/// pairwise deviations and the N * rho11 products.
LZExperimentReport lz_experiment(const LZParams& p, LZScheduleKind kind, int n,
                                 double tolerance = 1e-6);

}  // namespace zeno
