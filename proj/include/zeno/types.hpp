#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno {

using complex = std::complex<double>;
using CVector = std::vector<complex>;

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent input (shape mismatch, broken invariant, bad flag).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// principal_log hit an eigenvalue on the closed negative real axis.
class BranchCutError : public Error {
public:
  BranchCutError(const std::string& msg, complex eigenvalue)
      : Error(msg), eigenvalue(eigenvalue) {}
  complex eigenvalue;
};

/// Eigenvalue gap below the degeneracy threshold where a unique basis is needed.
class DegeneracyError : public Error {
public:
  using Error::Error;
};

/// An iterative routine exceeded its step or iteration cap.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// split_strength called on a (numerically) zero generator.
class ZeroStrengthError : public Error {
public:
  using Error::Error;
};

/// Numerical breakdown that is not a precondition violation (e.g. a defective
/// matrix where an eigendecomposition was required).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Default tolerances. Operations that check an invariant take these as
/// defaulted parameters so callers can override per call.
namespace tol {
inline constexpr double hermiticity = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double psd = 1e-10;
inline constexpr double basis_gram = 1e-10;
inline constexpr double idempotence = 1e-12;
inline constexpr double doubly_stochastic = 1e-10;
/// Type invariant: off-diagonal rates may not be more negative than this.
inline constexpr double rate_negativity = 1e-10;
/// rate_from_overlap flags its result as projected when a clamped
/// off-diagonal was more negative than this.
inline constexpr double rate_offdiag = 1e-8;
inline constexpr double rate_column_sum = 1e-9;
inline constexpr double eig_degeneracy = 1e-10;
inline constexpr double integrator = 1e-8;
inline constexpr double choi_psd = 1e-10;
inline constexpr double partial_trace = 1e-10;
inline constexpr double generator_trace = 1e-11;
/// Warn when the integrated generator strength over one measurement interval
/// exceeds this ratio (the effective equations assume it is small).
inline constexpr double interval_strength_warn = 0.3;
/// Eigendecomposition-based matrix functions fall back to scaling-and-squaring
/// beyond this eigenvector condition number.
inline constexpr double eigvec_condition = 1e8;
}  // namespace tol

namespace defaults {
inline constexpr int trace_norm_samples = 1000;
inline constexpr std::uint64_t trace_norm_seed = 0;
inline constexpr long max_integrator_steps = 10'000'000;
inline constexpr int quadrature_nodes = 16;
}  // namespace defaults

}  // namespace zeno
