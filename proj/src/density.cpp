#include "zeno/density.hpp"

#include <cmath>
#include <sstream>

#include "zeno/matrix_functions.hpp"

namespace zeno {

DensityOperator::DensityOperator(ComplexMatrix m, double hermiticity_tol,
                                 double trace_tol, double psd_tol)
    : m_(std::move(m)) {
  if (!m_.is_square() || m_.dim() < 1)
    throw ValidationError("DensityOperator: need a square matrix, d >= 1");
  const double herm = m_.max_abs_diff(m_.adjoint());
  if (herm > hermiticity_tol) {
    std::ostringstream msg;
    msg << "DensityOperator: Hermiticity defect " << herm;
    throw ValidationError(msg.str());
  }
  const complex tr = m_.trace();
  if (std::abs(tr - complex(1.0, 0.0)) > trace_tol) {
    std::ostringstream msg;
    msg << "DensityOperator: trace " << tr.real() << " + " << tr.imag()
        << "i != 1";
    throw ValidationError(msg.str());
  }
  const double lmin = min_hermitian_eigenvalue(m_);
  if (lmin < -psd_tol) {
    std::ostringstream msg;
    msg << "DensityOperator: smallest eigenvalue " << lmin;
    throw ValidationError(msg.str());
  }
}

DensityOperator DensityOperator::pure(const ComplexMatrix& ket) {
  return DensityOperator(outer(normalized(ket), normalized(ket)));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t d) {
  return DensityOperator(ComplexMatrix::identity(d) * complex(1.0 / d, 0.0));
}

DensityOperator DensityOperator::diagonal(
    const std::vector<double>& populations) {
  ComplexMatrix m(populations.size(), populations.size());
  for (std::size_t i = 0; i < populations.size(); ++i)
    m(i, i) = populations[i];
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::basis_state(const OrthonormalBasis& basis,
                                             std::size_t k) {
  return DensityOperator(basis.projector(k));
}

std::vector<double> DensityOperator::populations(
    const OrthonormalBasis& basis) const {
  const ComplexMatrix in_basis = basis.to_basis(m_);
  std::vector<double> p(dim());
  for (std::size_t k = 0; k < dim(); ++k) p[k] = in_basis(k, k).real();
  return p;
}

std::vector<double> DensityOperator::populations() const {
  std::vector<double> p(dim());
  for (std::size_t k = 0; k < dim(); ++k) p[k] = m_(k, k).real();
  return p;
}

double DensityOperator::offdiagonal_norm(const OrthonormalBasis& basis) const {
  const ComplexMatrix in_basis = basis.to_basis(m_);
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (i != j) s += std::norm(in_basis(i, j));
  return std::sqrt(s);
}

double DensityOperator::purity() const { return (m_ * m_).trace().real(); }

}  // namespace zeno
