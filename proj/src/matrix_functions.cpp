#include "zeno/matrix_functions.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <sstream>

namespace zeno {

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

void require_square_finite(const ComplexMatrix& m, const char* who) {
  if (!m.is_square())
    throw ValidationError(std::string(who) + ": matrix must be square");
  if (!m.is_finite())
    throw ValidationError(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

Eigensystem eigensystem(const ComplexMatrix& m) {
  require_square_finite(m, "eigensystem");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
  if (es.info() != Eigen::Success)
    throw NumericalError("eigensystem: decomposition failed");
  Eigensystem out;
  out.values.resize(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) out.values[i] = es.eigenvalues()(i);
  out.vectors = from_eigen(es.eigenvectors());
  return out;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_square_finite(m, "hermitian_eigensystem");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian_eigensystem: decomposition failed");
  HermitianEigensystem out;
  out.values.resize(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) out.values[i] = es.eigenvalues()(i);
  out.vectors = from_eigen(es.eigenvectors());
  return out;
}

double eigenvector_condition(const Eigensystem& es) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(es.vectors));
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return svd.singularValues()(0) / smin;
}

ComplexMatrix matrix_exp_pade(const ComplexMatrix& m) {
  require_square_finite(m, "matrix_exp");
  const std::size_t n = m.dim();
  // [13/13] Pade coefficients.
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double theta13 = 5.371920351148152;
  const double norm = m.one_norm();
  int squarings = 0;
  if (norm > theta13)
    squarings = std::max(0, (int)std::ceil(std::log2(norm / theta13)));
  ComplexMatrix a = m * complex(std::ldexp(1.0, -squarings), 0.0);

  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;
  const ComplexMatrix id = ComplexMatrix::identity(n);

  ComplexMatrix u =
      a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] +
           a2 * b[3] + id * b[1]);
  ComplexMatrix v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] +
                    a4 * b[4] + a2 * b[2] + id * b[0];

  ComplexMatrix r = solve(v - u, v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  return r;
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  require_square_finite(m, "matrix_exp");
  if (m.is_hermitian(1e-13)) {
    const auto es = hermitian_eigensystem(m);
    ComplexMatrix d(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) d(i, i) = std::exp(es.values[i]);
    return es.vectors * d * es.vectors.adjoint();
  }
  const auto es = eigensystem(m);
  if (eigenvector_condition(es) <= tol::eigvec_condition) {
    ComplexMatrix d(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) d(i, i) = std::exp(es.values[i]);
    return es.vectors * d * inverse(es.vectors);
  }
  return matrix_exp_pade(m);
}

ComplexMatrix principal_log(const ComplexMatrix& m) {
  require_square_finite(m, "principal_log");
  const auto es = eigensystem(m);
  for (const complex& lam : es.values) {
    const double scale = std::max(1.0, std::abs(lam));
    if (std::abs(lam) < 1e-14 ||
        (lam.real() <= 0.0 && std::abs(lam.imag()) <= 1e-12 * scale)) {
      std::ostringstream msg;
      msg << "principal_log: eigenvalue (" << lam.real() << ", " << lam.imag()
          << "i) lies on the closed negative real axis";
      throw BranchCutError(msg.str(), lam);
    }
  }
  if (eigenvector_condition(es) > tol::eigvec_condition)
    throw NumericalError(
        "principal_log: matrix is numerically defective (eigenvector "
        "condition number too large)");
  ComplexMatrix d(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) d(i, i) = std::log(es.values[i]);
  return es.vectors * d * inverse(es.vectors);
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (!a.is_square() || a.rows() != b.rows())
    throw ValidationError("solve: shape mismatch");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(to_eigen(a));
  return from_eigen(lu.solve(to_eigen(b)));
}

ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve(a, ComplexMatrix::identity(a.dim()));
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  return svd.singularValues().sum();
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix h = (m + m.adjoint()) * complex(0.5, 0.0);
  const auto es = hermitian_eigensystem(h);
  return es.values.front();
}

}  // namespace zeno
