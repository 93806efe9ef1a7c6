#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "zeno/effective.hpp"
#include "zeno/landau_zener.hpp"
#include "zeno/matrix_functions.hpp"
#include "zeno/propagation.hpp"
#include "zeno/superoperator.hpp"

using namespace zeno;

TEST_CASE("DensityOperator rejects broken states") {
  const ComplexMatrix non_hermitian{{0.5, 0.3}, {0.0, 0.5}};
  CHECK_THROWS_AS(DensityOperator{non_hermitian}, ValidationError);

  const ComplexMatrix wrong_trace{{0.7, 0.0}, {0.0, 0.7}};
  CHECK_THROWS_AS(DensityOperator{wrong_trace}, ValidationError);

  const ComplexMatrix negative{{1.2, 0.0}, {0.0, -0.2}};
  CHECK_THROWS_AS(DensityOperator{negative}, ValidationError);
}

TEST_CASE("OrthonormalBasis rejects non-orthonormal columns") {
  ComplexMatrix cols{{1.0, 1.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(OrthonormalBasis::from_columns(cols), ValidationError);
}

TEST_CASE("induced_trace_norm validates the sample count") {
  CHECK_THROWS_AS(induced_trace_norm(SuperOperator::identity(2), 0),
                  ValidationError);
}

TEST_CASE("principal_log rejects defective matrices") {
  const ComplexMatrix jordan{{1.0, 1.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(principal_log(jordan), NumericalError);
}

TEST_CASE("propagate surfaces non-convergence with diagnostics") {
  const GeneratorSpec g = GeneratorSpec::hamiltonian(
      [](double t) { return pauli_x() * std::cos(40.0 * t); }, true);
  const DensityOperator rho = DensityOperator::diagonal({1.0, 0.0});
  CHECK_THROWS_AS(propagate(g, rho, 0.0, 10.0, 1e-12, 50), ConvergenceError);
}

TEST_CASE("degenerate instantaneous eigenbasis names the event time") {
  const GeneratorSpec g =
      GeneratorSpec::hamiltonian(ComplexMatrix::identity(2));
  const MeasurementSchedule sched(
      {{0.75, BasisSource::instantaneous_eigenbasis()}});
  const DensityOperator rho = DensityOperator::maximally_mixed(2);
  try {
    intervened_evolution(g, sched, rho, 0.0, 1.0);
    FAIL("expected DegeneracyError");
  } catch (const DegeneracyError& e) {
    // Resolved once at t_start = 0 for the formal initial measurement.
    CHECK(std::string(e.what()).find("t = 0") != std::string::npos);
  }
}

TEST_CASE("intervened_evolution records requested grid times") {
  const GeneratorSpec g = GeneratorSpec::hamiltonian(pauli_x());
  ComplexMatrix ket(2, 1);
  ket(0, 0) = 1.0;
  const std::vector<double> grid{0.2, 0.5, 0.9};
  const Trajectory traj = intervened_evolution(
      g, MeasurementSchedule(), DensityOperator::pure(ket), 0.0, 1.0, 1e-9,
      grid);
  REQUIRE(traj.times.size() == 5);  // start, three grid points, end
  CHECK(traj.times[1] == 0.2);
  CHECK(traj.times[2] == 0.5);
  CHECK(traj.times[3] == 0.9);
  // Grid values agree with direct propagation to the same times.
  const DensityOperator direct =
      propagate(g, DensityOperator::pure(ket), 0.0, 0.5, 1e-9);
  CHECK(traj.states[2].matrix().max_abs_diff(direct.matrix()) < 1e-8);
}

TEST_CASE("effective generator warns when the interval is too long") {
  const GeneratorSpec g =
      GeneratorSpec::hamiltonian(pauli_x() * complex(3.0, 0.0));
  const DephasingChannel lam(OrthonormalBasis::computational(2));
  const EffectiveGenerator short_interval(g, lam, 0.0, 0.01);
  CHECK_FALSE(short_interval.strength_warning());
  const EffectiveGenerator long_interval(g, lam, 0.0, 1.0);
  CHECK(long_interval.strength_warning());
  CHECK(long_interval.integrated_strength() > tol::interval_strength_warn);
}

TEST_CASE("lz_effective_ode warns outside the validity regime") {
  const LZParams p(1.0, 20.0);
  const LZSchedule coarse = make_schedule(p, LZScheduleKind::uniform, 2);
  const LZEffectiveResult r = lz_effective_ode(p, coarse);
  CHECK(r.max_validity_ratio > tol::interval_strength_warn);
  REQUIRE(!r.warnings.empty());
  CHECK(r.warnings.front().find("validity") != std::string::npos);
}

TEST_CASE("solve_pauli clamps and reports runaway populations") {
  // Non-conservative combined-role rates push the sum above one.
  RealMatrix m(2, 2);
  m(1, 0) = 0.5;
  const RateMatrix rates(m, RateRole::combined);
  const PopulationTrajectory traj = solve_pauli(
      [&](double) { return rates; }, {1.0, 0.0}, 0.0, 4.0, 1e-10, {});
  REQUIRE(!traj.warnings.empty());
  CHECK(traj.warnings.front().find("clamped") != std::string::npos);
  for (double pk : traj.populations.back()) {
    CHECK(pk >= 0.0);
    CHECK(pk <= 1.0);
  }
}

TEST_CASE("PauliSystem aggregate drives solve_pauli") {
  RealMatrix m(2, 2);
  m(0, 0) = -1.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = -1.0;
  const RateMatrix rates(m, RateRole::dynamical);
  const PauliSystem system{2, [&](double) { return rates; }, {1.0, 0.0}};
  const PopulationTrajectory traj = solve_pauli(system, 0.0, 10.0);
  CHECK(traj.populations.back()[0] == doctest::Approx(0.5).epsilon(1e-8));

  const PauliSystem bad{3, system.rate_fn, {1.0, 0.0}};
  CHECK_THROWS_AS(solve_pauli(bad, 0.0, 1.0), ValidationError);
}

TEST_CASE("RateMatrix validation: negative off-diagonals and column sums") {
  RealMatrix neg(2, 2);
  neg(0, 1) = -1e-6;
  neg(1, 1) = 1e-6;
  CHECK_THROWS_AS(RateMatrix(neg, RateRole::dynamical), ValidationError);

  RealMatrix unbalanced(2, 2);
  unbalanced(0, 0) = -1.0;
  unbalanced(1, 0) = 0.5;  // column 0 sums to -0.5
  CHECK_THROWS_AS(RateMatrix(unbalanced, RateRole::dynamical),
                  ValidationError);
  // The combined role tolerates unbalanced columns.
  const RateMatrix ok(unbalanced, RateRole::combined);
  CHECK(ok.role() == RateRole::combined);
}
