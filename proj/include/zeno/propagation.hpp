#pragma once

#include <optional>
#include <string>
#include <variant>

#include "zeno/channel.hpp"
#include "zeno/density.hpp"
#include "zeno/detail/adaptive.hpp"
#include "zeno/generator.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Where a measurement event takes its basis from: a fixed basis, or the
/// instantaneous eigenbasis of the scenario Hamiltonian at the event time.
class BasisSource {
public:
  static BasisSource fixed(OrthonormalBasis basis) {
    return BasisSource(std::move(basis));
  }
  static BasisSource instantaneous_eigenbasis() { return BasisSource(Eigen{}); }

  bool is_fixed() const { return std::holds_alternative<OrthonormalBasis>(v_); }

  /// Resolve against the scenario generator at time t.
  OrthonormalBasis resolve(const GeneratorSpec& spec, double t,
                           double gap_tol = tol::eig_degeneracy) const;

private:
  struct Eigen {};
  explicit BasisSource(OrthonormalBasis b) : v_(std::move(b)) {}
  explicit BasisSource(Eigen e) : v_(e) {}
  std::variant<OrthonormalBasis, Eigen> v_;
};

struct MeasurementEvent {
  double time;
  BasisSource source;
};

/// Ordered list of measurement events; times strictly increasing.
class MeasurementSchedule {
public:
  MeasurementSchedule() = default;
  explicit MeasurementSchedule(std::vector<MeasurementEvent> events);

  /// count events at spacing `spacing`, the first at start + spacing.
  static MeasurementSchedule periodic(double start, double spacing, int count,
                                      const BasisSource& source);
  /// Events at the given times, all with the same basis source.
  static MeasurementSchedule at_times(const std::vector<double>& times,
                                      const BasisSource& source);

  bool empty() const { return events_.empty(); }
  std::size_t size() const { return events_.size(); }
  const std::vector<MeasurementEvent>& events() const { return events_; }

private:
  std::vector<MeasurementEvent> events_;
};

struct TrajectoryMeta {
  std::string scheme;
  detail::IntegratorStats stats;
  std::vector<std::string> warnings;
  double truncation_time = 0.0;
};

/// Time-stamped states along a run. Measurement-time entries hold the
/// post-measurement state.
struct Trajectory {
  std::vector<double> times;
  std::vector<DensityOperator> states;
  TrajectoryMeta meta;
};

/// Solve d(rho)/dt = L(t)[rho] from t0 to t1 by midpoint-exponential stepping
/// (exponentiate L at the step midpoint) with adaptive step halving on a
/// Richardson error estimate. Each step is a CPTP map for GKSL generators, so
/// trace, Hermiticity and positivity survive by construction.
DensityOperator propagate(const GeneratorSpec& spec, const DensityOperator& rho,
                          double t0, double t1,
                          double tolerance = tol::integrator,
                          long max_steps = defaults::max_integrator_steps,
                          detail::IntegratorStats* stats = nullptr);

/// Exact intervened dynamics: alternate continuous propagation with channel
/// applications at the scheduled times. Records the state right after each
/// measurement, at every requested grid time, and at both interval ends. The
/// first event's channel (resolved at t_start) is applied to rho0 up front;
/// if that changes the state a warning is recorded.
Trajectory intervened_evolution(const GeneratorSpec& spec,
                                const MeasurementSchedule& schedule,
                                const DensityOperator& rho0, double t_start,
                                double t_end,
                                double tolerance = tol::integrator,
                                const std::vector<double>& grid = {},
                                long max_steps = defaults::max_integrator_steps);

struct ZenoProbeRow {
  double tau;
  double max_population_deviation;
};

/// Freeze probe: for each spacing tau (positive, decreasing), run uniformly
/// spaced measurements in the given basis over [0, horizon] starting from the
/// first basis projector, and report the largest deviation of the measured
/// populations from their initial values.
std::vector<ZenoProbeRow> zeno_freeze_probe(const GeneratorSpec& spec,
                                            const OrthonormalBasis& basis,
                                            const std::vector<double>& tau_list,
                                            double horizon,
                                            double tolerance = tol::integrator);

}  // namespace zeno
