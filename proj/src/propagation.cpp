#include "zeno/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "zeno/matrix_functions.hpp"

namespace zeno {

OrthonormalBasis BasisSource::resolve(const GeneratorSpec& spec, double t,
                                      double gap_tol) const {
  if (const auto* fixed = std::get_if<OrthonormalBasis>(&v_)) return *fixed;
  try {
    return eigenbasis_of(spec.hamiltonian_at(t), gap_tol);
  } catch (const DegeneracyError& e) {
    std::ostringstream msg;
    msg << "instantaneous eigenbasis at t = " << t << ": " << e.what();
    throw DegeneracyError(msg.str());
  }
}

MeasurementSchedule::MeasurementSchedule(std::vector<MeasurementEvent> events)
    : events_(std::move(events)) {
  for (std::size_t i = 1; i < events_.size(); ++i)
    if (!(events_[i].time > events_[i - 1].time)) {
      std::ostringstream msg;
      msg << "MeasurementSchedule: times must be strictly increasing ("
          << events_[i - 1].time << " then " << events_[i].time << ")";
      throw ValidationError(msg.str());
    }
}

MeasurementSchedule MeasurementSchedule::periodic(double start, double spacing,
                                                  int count,
                                                  const BasisSource& source) {
  if (spacing <= 0.0 || count < 0)
    throw ValidationError("MeasurementSchedule::periodic: bad spacing/count");
  std::vector<MeasurementEvent> ev;
  ev.reserve(count);
  for (int i = 1; i <= count; ++i)
    ev.push_back({start + i * spacing, source});
  return MeasurementSchedule(std::move(ev));
}

MeasurementSchedule MeasurementSchedule::at_times(
    const std::vector<double>& times, const BasisSource& source) {
  std::vector<MeasurementEvent> ev;
  ev.reserve(times.size());
  for (double t : times) ev.push_back({t, source});
  return MeasurementSchedule(std::move(ev));
}

namespace {

// One midpoint-exponential step. Pure Hamiltonian generators step by unitary
// conjugation on d x d (with a closed form for d = 2); everything else
// exponentiates the d^2 x d^2 generator matrix. Constant generators cache the
// step map per step size.
class Stepper {
public:
  explicit Stepper(const GeneratorSpec& spec)
      : spec_(spec),
        unitary_path_(spec.kind() == GeneratorSpec::Kind::hamiltonian),
        constant_(!spec.time_dependent()) {}

  ComplexMatrix operator()(const ComplexMatrix& rho, double t, double h) {
    if (unitary_path_) {
      const ComplexMatrix u = unitary(t + 0.5 * h, h);
      return u * rho * u.adjoint();
    }
    const ComplexMatrix e = exponential(t + 0.5 * h, h);
    return devectorize(e * vectorize(rho), rho.dim());
  }

private:
  ComplexMatrix unitary(double t_mid, double h) {
    if (constant_) {
      auto it = cache_.find(h);
      if (it != cache_.end()) return it->second;
    }
    const ComplexMatrix hmat = spec_.hamiltonian_at(t_mid);
    ComplexMatrix u = hmat.dim() == 2 ? qubit_unitary(hmat, h)
                                      : hermitian_unitary(hmat, h);
    if (constant_) cache_.emplace(h, u);
    return u;
  }

  // exp(-i h H) for 2x2 Hermitian H = a I + b . sigma.
  static ComplexMatrix qubit_unitary(const ComplexMatrix& hm, double h) {
    const double a = 0.5 * (hm(0, 0).real() + hm(1, 1).real());
    const double bx = hm(0, 1).real();
    const double by = -hm(0, 1).imag();
    const double bz = 0.5 * (hm(0, 0).real() - hm(1, 1).real());
    const double b = std::sqrt(bx * bx + by * by + bz * bz);
    const complex phase = std::exp(complex(0.0, -a * h));
    const double c = std::cos(b * h);
    const double s = b > 0.0 ? std::sin(b * h) / b : h;
    const complex is(0.0, -s);
    ComplexMatrix u(2, 2);
    u(0, 0) = phase * (c + is * bz);
    u(0, 1) = phase * is * complex(bx, -by);
    u(1, 0) = phase * is * complex(bx, by);
    u(1, 1) = phase * (c - is * bz);
    return u;
  }

  static ComplexMatrix hermitian_unitary(const ComplexMatrix& hm, double h) {
    const auto es = hermitian_eigensystem(hm);
    ComplexMatrix d(hm.dim(), hm.dim());
    for (std::size_t i = 0; i < hm.dim(); ++i)
      d(i, i) = std::exp(complex(0.0, -es.values[i] * h));
    return es.vectors * d * es.vectors.adjoint();
  }

  ComplexMatrix exponential(double t_mid, double h) {
    if (constant_) {
      auto it = cache_.find(h);
      if (it != cache_.end()) return it->second;
    }
    ComplexMatrix e = matrix_exp_pade(spec_.at(t_mid).matrix() * complex(h, 0));
    if (constant_) cache_.emplace(h, e);
    return e;
  }

  const GeneratorSpec& spec_;
  bool unitary_path_;
  bool constant_;
  std::map<double, ComplexMatrix> cache_;
};

ComplexMatrix propagate_raw(ComplexMatrix rho, double t0, double t1,
                            double tolerance, long max_steps,
                            detail::IntegratorStats* stats,
                            std::vector<std::string>* warnings,
                            Stepper& stepper) {
  return detail::adaptive_integrate(
      std::move(rho), t0, t1, tolerance, max_steps, stepper,
      [](const ComplexMatrix& a, const ComplexMatrix& b) {
        return a.max_abs_diff(b);
      },
      stats, warnings);
}

}  // namespace

DensityOperator propagate(const GeneratorSpec& spec, const DensityOperator& rho,
                          double t0, double t1, double tolerance,
                          long max_steps, detail::IntegratorStats* stats) {
  if (t1 < t0) throw ValidationError("propagate: t1 must be >= t0");
  if (t1 == t0) return rho;
  Stepper stepper(spec);
  ComplexMatrix out = propagate_raw(rho.matrix(), t0, t1, tolerance,
                                    max_steps, stats, nullptr, stepper);
  // Trace drift bounded by 10 x tolerance for GKSL input; renormalize the
  // roundoff residue so downstream validation stays meaningful.
  const double tr = out.trace().real();
  if (std::abs(tr - 1.0) > 10.0 * tolerance) {
    std::ostringstream msg;
    msg << "propagate: trace drifted to " << tr;
    throw NumericalError(msg.str());
  }
  out *= complex(1.0 / tr, 0.0);
  return DensityOperator(std::move(out));
}

Trajectory intervened_evolution(const GeneratorSpec& spec,
                                const MeasurementSchedule& schedule,
                                const DensityOperator& rho0, double t_start,
                                double t_end, double tolerance,
                                const std::vector<double>& grid,
                                long max_steps) {
  if (t_end < t_start)
    throw ValidationError("intervened_evolution: t_end must be >= t_start");
  // Times assembled as start + i * spacing may overshoot the interval ends
  // by a few ulps; snap those instead of rejecting them.
  const double snap = 4.0 * 2.220446049250313e-16 *
                      std::max({std::abs(t_start), std::abs(t_end), 1.0});
  auto snapped = [&](double time) {
    if (time < t_start && t_start - time <= snap) return t_start;
    if (time > t_end && time - t_end <= snap) return t_end;
    return time;
  };
  for (const auto& ev : schedule.events())
    if (snapped(ev.time) < t_start || snapped(ev.time) > t_end) {
      std::ostringstream msg;
      msg << "intervened_evolution: event time " << ev.time
          << " outside [" << t_start << ", " << t_end << "]";
      throw ValidationError(msg.str());
    }

  Trajectory traj;
  traj.meta.scheme = "exact";
  Stepper stepper(spec);

  ComplexMatrix rho = rho0.matrix();

  // Formal measurement at the start of the run: the first scheduled channel,
  // resolved at t_start.
  if (!schedule.empty()) {
    const OrthonormalBasis basis =
        schedule.events().front().source.resolve(spec, t_start);
    const DephasingChannel channel(basis);
    const ComplexMatrix measured = channel.apply(rho);
    if (measured.max_abs_diff(rho) > 1e-8)
      traj.meta.warnings.push_back(
          "initial state is not a fixed point of the first measurement "
          "channel; it was measured at t_start");
    rho = measured;
  }
  traj.times.push_back(t_start);
  traj.states.push_back(DensityOperator(rho));

  // Breakpoints: event times and grid times merged.
  struct Breakpoint {
    double time;
    const MeasurementEvent* event;  // nullptr for plain grid records
  };
  std::vector<Breakpoint> points;
  for (const auto& ev : schedule.events())
    points.push_back({snapped(ev.time), &ev});
  for (double g : grid) {
    if (snapped(g) < t_start || snapped(g) > t_end)
      throw ValidationError("intervened_evolution: grid time outside range");
    points.push_back({snapped(g), nullptr});
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const Breakpoint& a, const Breakpoint& b) {
                     return a.time < b.time;
                   });

  double t = t_start;
  for (const auto& bp : points) {
    if (bp.time > t) {
      rho = propagate_raw(std::move(rho), t, bp.time, tolerance, max_steps,
                          &traj.meta.stats, &traj.meta.warnings, stepper);
      t = bp.time;
    }
    if (bp.event) {
      const OrthonormalBasis basis = bp.event->source.resolve(spec, bp.time);
      rho = DephasingChannel(basis).apply(rho);
    }
    const double tr = rho.trace().real();
    rho *= complex(1.0 / tr, 0.0);
    if (!traj.times.empty() && traj.times.back() == bp.time && !bp.event)
      continue;  // grid point coinciding with an already-recorded event
    traj.times.push_back(bp.time);
    traj.states.push_back(DensityOperator(rho));
  }
  if (t < t_end) {
    rho = propagate_raw(std::move(rho), t, t_end, tolerance, max_steps,
                        &traj.meta.stats, &traj.meta.warnings, stepper);
    const double tr = rho.trace().real();
    rho *= complex(1.0 / tr, 0.0);
    traj.times.push_back(t_end);
    traj.states.push_back(DensityOperator(rho));
  }
  return traj;
}

std::vector<ZenoProbeRow> zeno_freeze_probe(const GeneratorSpec& spec,
                                            const OrthonormalBasis& basis,
                                            const std::vector<double>& tau_list,
                                            double horizon, double tolerance) {
  if (tau_list.empty())
    throw ValidationError("zeno_freeze_probe: empty tau list");
  for (std::size_t i = 0; i < tau_list.size(); ++i) {
    if (tau_list[i] <= 0.0)
      throw ValidationError("zeno_freeze_probe: tau must be positive");
    if (i > 0 && tau_list[i] >= tau_list[i - 1])
      throw ValidationError("zeno_freeze_probe: tau list must decrease");
  }

  const DensityOperator rho0 = DensityOperator::basis_state(basis, 0);
  const std::vector<double> p0 = rho0.populations(basis);
  std::vector<ZenoProbeRow> rows;
  rows.reserve(tau_list.size());
  for (double tau : tau_list) {
    const int count = (int)std::floor(horizon / tau + 1e-9);
    const auto schedule = MeasurementSchedule::periodic(
        0.0, tau, count, BasisSource::fixed(basis));
    const Trajectory traj = intervened_evolution(spec, schedule, rho0, 0.0,
                                                 horizon, tolerance);
    double dev = 0.0;
    for (const auto& state : traj.states) {
      const auto p = state.populations(basis);
      for (std::size_t k = 0; k < p.size(); ++k)
        dev = std::max(dev, std::abs(p[k] - p0[k]));
    }
    rows.push_back({tau, dev});
  }
  return rows;
}

}  // namespace zeno
