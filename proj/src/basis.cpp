#include "zeno/basis.hpp"

#include <cmath>
#include <sstream>

#include "zeno/matrix_functions.hpp"

namespace zeno {

OrthonormalBasis OrthonormalBasis::computational(std::size_t d) {
  return OrthonormalBasis(ComplexMatrix::identity(d));
}

OrthonormalBasis OrthonormalBasis::from_columns(ComplexMatrix columns,
                                                double gram_tol) {
  if (!columns.is_square())
    throw ValidationError("OrthonormalBasis: need d vectors of length d");
  const ComplexMatrix gram = columns.adjoint() * columns;
  const double defect =
      gram.max_abs_diff(ComplexMatrix::identity(columns.dim()));
  if (defect > gram_tol) {
    std::ostringstream msg;
    msg << "OrthonormalBasis: Gram matrix deviates from identity by " << defect;
    throw ValidationError(msg.str());
  }
  return OrthonormalBasis(std::move(columns));
}

ComplexMatrix OrthonormalBasis::projector(std::size_t k) const {
  const ComplexMatrix v = cols_.column(k);
  return outer(v, v);
}

ComplexMatrix OrthonormalBasis::to_basis(const ComplexMatrix& x) const {
  return cols_.adjoint() * x * cols_;
}

ComplexMatrix OrthonormalBasis::from_basis(const ComplexMatrix& x) const {
  return cols_ * x * cols_.adjoint();
}

OrthonormalBasis OrthonormalBasis::gauge_fixed() const {
  const std::size_t d = dim();
  ComplexMatrix out = cols_;
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t imax = 0;
    double amax = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double a = std::abs(out(i, k));
      if (a > amax) {
        amax = a;
        imax = i;
      }
    }
    if (amax == 0.0) continue;
    const complex phase = out(imax, k) / amax;
    for (std::size_t i = 0; i < d; ++i) out(i, k) /= phase;
  }
  return OrthonormalBasis(std::move(out));
}

OrthonormalBasis OrthonormalBasis::phase_aligned_to(
    const OrthonormalBasis& ref, double min_overlap) const {
  if (ref.dim() != dim())
    throw ValidationError("phase_aligned_to: dimension mismatch");
  const std::size_t d = dim();
  ComplexMatrix out = cols_;
  for (std::size_t k = 0; k < d; ++k) {
    complex ov(0.0, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      ov += std::conj(ref.cols_(i, k)) * out(i, k);
    if (std::abs(ov) < min_overlap) {
      std::ostringstream msg;
      msg << "phase_aligned_to: basis vector " << k
          << " has overlap " << std::abs(ov)
          << " with its reference; no smooth gauge";
      throw DegeneracyError(msg.str());
    }
    const complex phase = ov / std::abs(ov);
    for (std::size_t i = 0; i < d; ++i) out(i, k) /= phase;
  }
  return OrthonormalBasis(std::move(out));
}

OrthonormalBasis eigenbasis_of(const ComplexMatrix& h, double gap_tol) {
  if (!h.is_hermitian(1e-10))
    throw ValidationError("eigenbasis_of: operator is not Hermitian");
  const auto es = hermitian_eigensystem(h);
  double scale = 1.0;
  for (double v : es.values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i + 1 < es.values.size(); ++i) {
    if (es.values[i + 1] - es.values[i] < gap_tol * scale) {
      std::ostringstream msg;
      msg << "eigenbasis_of: eigenvalues " << es.values[i] << " and "
          << es.values[i + 1] << " are degenerate within tolerance";
      throw DegeneracyError(msg.str());
    }
  }
  return OrthonormalBasis::from_columns(es.vectors).gauge_fixed();
}

std::vector<double> eigenvalues_of(const ComplexMatrix& h) {
  return hermitian_eigensystem(h).values;
}

}  // namespace zeno
