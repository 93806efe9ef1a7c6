#pragma once

#include "zeno/complex_matrix.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Orthonormal basis of C^d, stored as the d x d matrix whose k-th column is
/// |k>. Construction validates the Gram matrix against the identity.
class OrthonormalBasis {
public:
  static OrthonormalBasis computational(std::size_t d);
  static OrthonormalBasis from_columns(ComplexMatrix columns,
                                       double gram_tol = tol::basis_gram);

  std::size_t dim() const { return cols_.dim(); }
  const ComplexMatrix& matrix() const { return cols_; }
  ComplexMatrix vector(std::size_t k) const { return cols_.column(k); }
  /// |k><k|.
  ComplexMatrix projector(std::size_t k) const;

  /// B^dag X B: the operator X expressed in this basis.
  ComplexMatrix to_basis(const ComplexMatrix& x) const;
  /// B X~ B^dag.
  ComplexMatrix from_basis(const ComplexMatrix& x) const;

  /// Phase gauge: scale each column so its largest-magnitude component is
  /// real positive. Arbitrary eigensolver phases break smooth-in-time basis
  /// derivatives; this pins them.
  OrthonormalBasis gauge_fixed() const;

  /// Per-column phase chosen to maximize Re <ref_k|this_k>. Throws
  /// DegeneracyError when some column is (numerically) orthogonal to its
  /// reference, since no continuous gauge connects the two bases then.
  OrthonormalBasis phase_aligned_to(const OrthonormalBasis& ref,
                                    double min_overlap = 0.1) const;

private:
  explicit OrthonormalBasis(ComplexMatrix cols) : cols_(std::move(cols)) {}
  ComplexMatrix cols_;
};

/// Eigenbasis of a Hermitian operator, eigenvalues ascending, gauge fixed.
/// Throws DegeneracyError when two adjacent eigenvalues are closer than
/// gap_tol * max(1, |spectrum|).
OrthonormalBasis eigenbasis_of(const ComplexMatrix& h,
                               double gap_tol = tol::eig_degeneracy);

/// Eigenvalues ascending alongside the basis above.
std::vector<double> eigenvalues_of(const ComplexMatrix& h);

}  // namespace zeno
