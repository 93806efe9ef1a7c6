#pragma once

#include <functional>
#include <optional>

#include "zeno/superoperator.hpp"
#include "zeno/types.hpp"

namespace zeno {

using MatrixFn = std::function<ComplexMatrix(double)>;
using ScalarFn = std::function<double(double)>;

/// Time-dependent GKSL generator L(t): a Hamiltonian commutator part, a list
/// of weighted dissipators, or both. Evaluation at any time yields a
/// trace-annihilating, Hermiticity-preserving superoperator.
class GeneratorSpec {
public:
  enum class Kind { hamiltonian, dissipative, composite };

  struct JumpTerm {
    MatrixFn op;
    ScalarFn rate;
  };

  static GeneratorSpec hamiltonian(MatrixFn h_fn, bool time_dependent = true);
  static GeneratorSpec hamiltonian(const ComplexMatrix& h);
  static GeneratorSpec dissipative(MatrixFn a_fn, ScalarFn rate_fn,
                                   bool time_dependent = true);
  static GeneratorSpec dissipative(const ComplexMatrix& a, double rate);
  static GeneratorSpec composite(std::optional<MatrixFn> h_fn,
                                 std::vector<JumpTerm> jumps,
                                 bool time_dependent = true);

  Kind kind() const { return kind_; }
  bool time_dependent() const { return time_dependent_; }
  bool has_hamiltonian() const { return h_fn_.has_value(); }

  /// L(t) as a superoperator.
  SuperOperator at(double t) const;

  /// The Hamiltonian H(t); validation error when this generator has none or
  /// H(t) is not Hermitian.
  ComplexMatrix hamiltonian_at(double t) const;

  const std::vector<JumpTerm>& jumps() const { return jumps_; }

private:
  GeneratorSpec(Kind kind, std::optional<MatrixFn> h_fn,
                std::vector<JumpTerm> jumps, bool time_dependent)
      : kind_(kind),
        h_fn_(std::move(h_fn)),
        jumps_(std::move(jumps)),
        time_dependent_(time_dependent) {}

  Kind kind_;
  std::optional<MatrixFn> h_fn_;
  std::vector<JumpTerm> jumps_;
  bool time_dependent_;
};

/// L(t) = gamma(t) * calL(t) with ||calL||_{1->1} estimated to 1.
struct StrengthSplit {
  double gamma;
  SuperOperator normalized_map;
};

/// Extract the strength gamma(t) = ||L(t)||_{1->1} (estimated) and the
/// normalized map at one time. Throws ZeroStrengthError on a zero generator.
StrengthSplit split_strength(const GeneratorSpec& spec, double t,
                             int samples = defaults::trace_norm_samples,
                             std::uint64_t seed = defaults::trace_norm_seed);

/// Consistency report for a candidate semigroup generator: it should
/// annihilate trace, preserve Hermiticity, and generate a CPTP map.
struct GkslReport {
  double trace_annihilation_residual = 0.0;
  double hermiticity_residual = 0.0;
  double min_choi_eigenvalue = 0.0;
  double exp_trace_preservation_residual = 0.0;
  bool consistent = false;
};

GkslReport gksl_check(const SuperOperator& s, double t_probe,
                      double trace_tol = 1e-10, double choi_tol = 1e-9);

}  // namespace zeno
