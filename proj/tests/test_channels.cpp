#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "zeno/channel.hpp"
#include "zeno/matrix_functions.hpp"

using namespace zeno;
using zeno::testing::hadamard_basis;
using zeno::testing::random_basis;
using zeno::testing::random_hermitian;

TEST_CASE("dephasing channel erases off-diagonals in its basis") {
  const DephasingChannel lam(OrthonormalBasis::computational(2));
  const ComplexMatrix x{{0.5, 0.3}, {0.3, 0.5}};
  const ComplexMatrix out = lam.apply(x);
  CHECK(out.max_abs_diff(ComplexMatrix{{0.5, 0.0}, {0.0, 0.5}}) < 1e-15);

  const ComplexMatrix diag{{0.2, 0.0}, {0.0, 0.8}};
  CHECK(lam.apply(diag).max_abs_diff(diag) == 0.0);
}

TEST_CASE("dephasing in the Hadamard basis flattens |0><0|") {
  const DephasingChannel lam(hadamard_basis());
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 1.0;
  const ComplexMatrix out = lam.apply(rho);
  CHECK(out.max_abs_diff(ComplexMatrix::identity(2) * complex(0.5, 0.0)) <
        1e-14);
}

TEST_CASE("channel invariants: idempotent, CPTP, fixes projectors") {
  std::mt19937_64 rng(41);
  for (std::size_t d : {2, 3, 4}) {
    const OrthonormalBasis basis = random_basis(d, rng);
    const DephasingChannel lam(basis);
    const SuperOperator& s = lam.superoperator();

    CHECK((s * s).max_abs_diff(s) < 1e-12);

    const auto cptp = check_cptp(s);
    CHECK(cptp.completely_positive);
    CHECK(cptp.trace_preserving);

    for (std::size_t k = 0; k < d; ++k) {
      const ComplexMatrix p = basis.projector(k);
      CHECK(lam.apply(p).max_abs_diff(p) < 1e-13);
    }

    // Output commutes with every basis projector.
    const ComplexMatrix x = random_hermitian(d, rng);
    const ComplexMatrix y = lam.apply(x);
    for (std::size_t k = 0; k < d; ++k) {
      const ComplexMatrix p = basis.projector(k);
      CHECK((y * p - p * y).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("channel application on states is exactly diagonal in basis") {
  std::mt19937_64 rng(43);
  const OrthonormalBasis basis = random_basis(3, rng);
  const DephasingChannel lam(basis);
  const DensityOperator rho = zeno::testing::random_density(3, rng);
  const DensityOperator out = lam.apply(rho);
  CHECK(out.offdiagonal_norm(basis) < 1e-14);
  // Trace preserved.
  CHECK(out.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("overlap_matrix: identical bases give the identity") {
  std::mt19937_64 rng(47);
  const OrthonormalBasis b = random_basis(3, rng);
  const OverlapMatrix ov = overlap_matrix(b, b);
  CHECK(ov.entries().max_abs_diff(RealMatrix::identity(3)) < 1e-13);
}

TEST_CASE("overlap_matrix: rotated qubit bases") {
  const double theta = 0.37;
  ComplexMatrix rot(2, 2);
  rot(0, 0) = std::cos(theta);
  rot(1, 0) = std::sin(theta);
  rot(0, 1) = -std::sin(theta);
  rot(1, 1) = std::cos(theta);
  const OverlapMatrix ov =
      overlap_matrix(OrthonormalBasis::computational(2),
                     OrthonormalBasis::from_columns(rot));
  const double c2 = std::cos(theta) * std::cos(theta);
  const double s2 = std::sin(theta) * std::sin(theta);
  CHECK(ov(0, 0) == doctest::Approx(c2).epsilon(1e-14));
  CHECK(ov(0, 1) == doctest::Approx(s2).epsilon(1e-14));
  CHECK(ov(1, 0) == doctest::Approx(s2).epsilon(1e-14));
  CHECK(ov(1, 1) == doctest::Approx(c2).epsilon(1e-14));
}

TEST_CASE("overlap_matrix: doubly stochastic and transpose-symmetric") {
  std::mt19937_64 rng(53);
  for (std::size_t d : {2, 3, 4}) {
    const OrthonormalBasis a = random_basis(d, rng);
    const OrthonormalBasis b = random_basis(d, rng);
    const OverlapMatrix ab = overlap_matrix(a, b);
    CHECK(ab.stochasticity_defect() < 1e-10);
    const OverlapMatrix ba = overlap_matrix(b, a);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        CHECK(ab(i, j) == doctest::Approx(ba(j, i)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(overlap_matrix(random_basis(2, rng), random_basis(3, rng)),
                  ValidationError);
}

TEST_CASE("rate_from_overlap: identity overlap gives zero rates") {
  const OverlapMatrix b =
      overlap_matrix(OrthonormalBasis::computational(3),
                     OrthonormalBasis::computational(3));
  const RateMatrix q = rate_from_overlap(b, 0.7);
  CHECK(q.entries().max_abs() < 1e-12);
  CHECK_FALSE(q.projected());
}

TEST_CASE("rate_from_overlap: symmetric 2x2 closed form and round trip") {
  const double theta = std::asin(std::sqrt(0.1));  // sin^2 = 0.1
  ComplexMatrix rot(2, 2);
  rot(0, 0) = std::cos(theta);
  rot(1, 0) = std::sin(theta);
  rot(0, 1) = -std::sin(theta);
  rot(1, 1) = std::cos(theta);
  const OverlapMatrix b =
      overlap_matrix(OrthonormalBasis::computational(2),
                     OrthonormalBasis::from_columns(rot));
  // B = [[0.9, 0.1], [0.1, 0.9]].
  CHECK(b(0, 0) == doctest::Approx(0.9).epsilon(1e-12));

  const RateMatrix q = rate_from_overlap(b, 1.0);
  const double expected_off = std::log(0.8) / (-2.0);
  CHECK(q(0, 1) == doctest::Approx(expected_off).epsilon(1e-10));
  CHECK(q(1, 0) == doctest::Approx(expected_off).epsilon(1e-10));
  CHECK(q(0, 0) == doctest::Approx(-expected_off).epsilon(1e-10));
  CHECK_FALSE(q.projected());

  // Round trip through the exponential.
  const ComplexMatrix back = matrix_exp(q.entries().to_complex());
  CHECK(back.max_abs_diff(b.entries().to_complex()) < 1e-10);
}

TEST_CASE("rate_from_overlap propagates branch-cut failures") {
  // Overlap of nearly-swapped bases: B = [[0.1, 0.9], [0.9, 0.1]] has the
  // eigenvalue -0.8 on the branch cut.
  const double theta = std::asin(std::sqrt(0.9));
  ComplexMatrix rot(2, 2);
  rot(0, 0) = std::cos(theta);
  rot(1, 0) = std::sin(theta);
  rot(0, 1) = -std::sin(theta);
  rot(1, 1) = std::cos(theta);
  const OverlapMatrix b =
      overlap_matrix(OrthonormalBasis::computational(2),
                     OrthonormalBasis::from_columns(rot));
  CHECK(b(0, 0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(rate_from_overlap(b, 1.0), BranchCutError);
}

namespace {

OrthonormalBasis rotating_basis(double omega, double t) {
  ComplexMatrix cols(2, 2);
  cols(0, 0) = std::cos(omega * t);
  cols(1, 0) = std::sin(omega * t);
  cols(0, 1) = -std::sin(omega * t);
  cols(1, 1) = std::cos(omega * t);
  return OrthonormalBasis::from_columns(std::move(cols));
}

}  // namespace

TEST_CASE("basis_drift_rates: constant basis gives zero") {
  const auto fn = [](double) { return OrthonormalBasis::computational(3); };
  const RateMatrix q = basis_drift_rates(fn, 0.4, 0.05);
  CHECK(q.entries().max_abs() < 1e-14);
}

TEST_CASE("basis_drift_rates: uniformly rotating qubit basis") {
  const double omega = 0.8;
  const double dt = 0.02;
  const auto fn = [omega](double t) { return rotating_basis(omega, t); };
  const RateMatrix q = basis_drift_rates(fn, 0.3, dt);
  CHECK(q(0, 1) == doctest::Approx(omega * omega * dt).epsilon(1e-6));
  CHECK(q(1, 0) == doctest::Approx(omega * omega * dt).epsilon(1e-6));
  CHECK(std::abs(q.entries().col_sum(0)) < 1e-12);
}

TEST_CASE("basis_drift_rates agrees with the overlap route to O(dt^2)") {
  const double omega = 1.0;
  const double t = 0.3;
  const double dt = 0.01;
  const auto fn = [omega](double tt) { return rotating_basis(omega, tt); };
  const RateMatrix drift = basis_drift_rates(fn, t, dt);
  const RateMatrix from_log =
      rate_from_overlap(overlap_matrix(fn(t), fn(t + dt)), dt);
  const double rel = std::abs(drift(0, 1) - from_log(0, 1)) / drift(0, 1);
  CHECK(rel < 1e-3);
}

TEST_CASE("phase alignment fails loudly across orthogonal bases") {
  const OrthonormalBasis comp = OrthonormalBasis::computational(2);
  ComplexMatrix swapped(2, 2);
  swapped(1, 0) = 1.0;
  swapped(0, 1) = 1.0;
  const OrthonormalBasis other = OrthonormalBasis::from_columns(swapped);
  CHECK_THROWS_AS(other.phase_aligned_to(comp), DegeneracyError);
}
