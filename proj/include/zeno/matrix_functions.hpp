#pragma once

#include "zeno/complex_matrix.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Right eigenpairs of a general matrix; vectors() holds eigenvectors as
/// columns in the order of values().
struct Eigensystem {
  std::vector<complex> values;
  ComplexMatrix vectors;
};

/// Eigenpairs of a Hermitian matrix, values ascending.
struct HermitianEigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

Eigensystem eigensystem(const ComplexMatrix& m);
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// 2-norm condition number of the eigenvector matrix.
double eigenvector_condition(const Eigensystem& es);

/// e^M. Hermitian input goes through its eigendecomposition; general input is
/// diagonalized when the eigenvector condition number stays below
/// tol::eigvec_condition and falls back to Pade scaling-and-squaring
/// otherwise.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// Pade [13/13] scaling-and-squaring, always applicable. Used directly by the
/// integrators, which exponentiate non-normal generator matrices every step.
ComplexMatrix matrix_exp_pade(const ComplexMatrix& m);

/// Principal matrix logarithm via eigendecomposition. Throws BranchCutError
/// when an eigenvalue lies on the closed negative real axis and
/// NumericalError when the matrix is numerically defective.
ComplexMatrix principal_log(const ComplexMatrix& m);

/// X solving a X = b (square a).
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix inverse(const ComplexMatrix& a);

/// Schatten 1-norm (sum of singular values).
double trace_norm(const ComplexMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix (input hermitized first).
double min_hermitian_eigenvalue(const ComplexMatrix& m);

}  // namespace zeno
