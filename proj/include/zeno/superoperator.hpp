#pragma once

#include "zeno/complex_matrix.hpp"
#include "zeno/types.hpp"

namespace zeno {

// Vectorization convention, fixed project-wide: vec stacks columns, so the
// entry X(r, c) sits at index c*d + r and vec(A X B) = (B^T kron A) vec(X).

ComplexMatrix vectorize(const ComplexMatrix& x);
ComplexMatrix devectorize(const ComplexMatrix& v, std::size_t d);

/// Linear map on d x d operators, stored as the d^2 x d^2 matrix acting on
/// column-vectorized operands.
class SuperOperator {
public:
  SuperOperator() : dim_(0) {}
  SuperOperator(std::size_t dim, ComplexMatrix matrix);

  static SuperOperator zero(std::size_t dim);
  static SuperOperator identity(std::size_t dim);
  /// X -> A X.
  static SuperOperator left_multiply(const ComplexMatrix& a);
  /// X -> X B.
  static SuperOperator right_multiply(const ComplexMatrix& b);
  /// X -> A X B.
  static SuperOperator sandwich(const ComplexMatrix& a,
                                const ComplexMatrix& b);
  /// X -> A X A^dag.
  static SuperOperator conjugation(const ComplexMatrix& a);
  /// X -> -i [H, X].
  static SuperOperator hamiltonian_commutator(const ComplexMatrix& h);
  /// X -> A X A^dag - (1/2){A^dag A, X}.
  static SuperOperator dissipator(const ComplexMatrix& a);

  std::size_t dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return m_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

  SuperOperator operator*(const SuperOperator& o) const;  // composition
  SuperOperator operator+(const SuperOperator& o) const;
  SuperOperator operator-(const SuperOperator& o) const;
  SuperOperator operator*(complex s) const;
  friend SuperOperator operator*(complex s, const SuperOperator& o) {
    return o * s;
  }

  /// exp(t * this) as a map.
  SuperOperator exp(double t) const;

  double max_abs_diff(const SuperOperator& o) const {
    return m_.max_abs_diff(o.m_);
  }

private:
  std::size_t dim_;
  ComplexMatrix m_;
};

/// Choi matrix C = sum_ij E_ij (x) S[E_ij]; S is completely positive iff C is
/// positive semidefinite, trace preserving iff the partial trace over the
/// output slot is the identity.
ComplexMatrix choi_matrix(const SuperOperator& s);

/// Partial trace of a d^2 x d^2 Choi matrix over the output (second) factor.
ComplexMatrix choi_partial_trace_output(const ComplexMatrix& choi,
                                        std::size_t d);

struct CptpReport {
  double min_choi_eigenvalue = 0.0;
  double trace_preservation_residual = 0.0;
  double choi_hermiticity_residual = 0.0;
  bool completely_positive = false;
  bool trace_preserving = false;
};

CptpReport check_cptp(const SuperOperator& s,
                      double cp_tol = tol::choi_psd,
                      double tp_tol = tol::partial_trace);

/// Lower-bound estimate of the induced 1->1 Schatten norm
/// sup ||S[X]||_1 / ||X||_1, obtained by sampling pure-state dyads |psi><phi|
/// and polishing the best starts with alternating ascent. Deterministic for a
/// given seed.
double induced_trace_norm(const SuperOperator& s,
                          int samples = defaults::trace_norm_samples,
                          std::uint64_t seed = defaults::trace_norm_seed);

}  // namespace zeno
