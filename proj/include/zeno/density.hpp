#pragma once

#include "zeno/basis.hpp"
#include "zeno/complex_matrix.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Hermitian, positive semidefinite, unit-trace operator. Construction
/// validates all three properties.
class DensityOperator {
public:
  explicit DensityOperator(ComplexMatrix m,
                           double hermiticity_tol = tol::hermiticity,
                           double trace_tol = tol::trace,
                           double psd_tol = tol::psd);

  static DensityOperator pure(const ComplexMatrix& ket);
  static DensityOperator maximally_mixed(std::size_t d);
  static DensityOperator diagonal(const std::vector<double>& populations);
  /// |b_k><b_k| for basis vector k.
  static DensityOperator basis_state(const OrthonormalBasis& basis,
                                     std::size_t k);

  std::size_t dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }

  /// <b_k| rho |b_k> for every k of the given basis.
  std::vector<double> populations(const OrthonormalBasis& basis) const;
  /// Diagonal in the computational basis.
  std::vector<double> populations() const;

  /// Frobenius norm of the off-diagonal part in the given basis.
  double offdiagonal_norm(const OrthonormalBasis& basis) const;

  double purity() const;

private:
  ComplexMatrix m_;
};

}  // namespace zeno
