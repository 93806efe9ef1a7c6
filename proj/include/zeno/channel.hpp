#pragma once

#include <functional>

#include "zeno/basis.hpp"
#include "zeno/density.hpp"
#include "zeno/real_matrix.hpp"
#include "zeno/superoperator.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Complete dephasing in an orthonormal basis:
/// Lambda[X] = sum_k <k|X|k> |k><k|. Idempotent, CPTP, fixes every basis
/// projector.
class DephasingChannel {
public:
  explicit DephasingChannel(OrthonormalBasis basis);

  const OrthonormalBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }
  const SuperOperator& superoperator() const { return superop_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// Channel action on a state. Off-diagonals in the measurement basis are
  /// zeroed exactly, not through the superoperator matrix.
  DensityOperator apply(const DensityOperator& rho) const;

private:
  OrthonormalBasis basis_;
  SuperOperator superop_;
};

DephasingChannel dephasing_channel(const OrthonormalBasis& basis);

/// Squared-overlap matrix between consecutive measurement bases,
/// B_{k'k} = |<next_k' | prev_k>|^2. Rows index the new basis, columns the
/// old one. Doubly stochastic by completeness.
class OverlapMatrix {
public:
  const RealMatrix& entries() const { return b_; }
  std::size_t dim() const { return b_.dim(); }
  double operator()(std::size_t r, std::size_t c) const { return b_(r, c); }

  /// Largest deviation of any row or column sum from 1.
  double stochasticity_defect() const;

private:
  friend OverlapMatrix overlap_matrix(const OrthonormalBasis&,
                                      const OrthonormalBasis&);
  explicit OverlapMatrix(RealMatrix b) : b_(std::move(b)) {}
  RealMatrix b_;
};

OverlapMatrix overlap_matrix(const OrthonormalBasis& prev,
                             const OrthonormalBasis& next);

enum class RateRole {
  basis_drift,  // Q: how fast the measurement basis turns
  dynamical,    // W or R: generator-induced transitions
  combined,     // Q + R
};

/// Real d x d rate matrix acting on population vectors, dp/dt = M p.
/// Off-diagonals are transition gains and must be nonnegative (within
/// tolerance); for basis_drift and dynamical roles every column sums to zero.
class RateMatrix {
public:
  RateMatrix(RealMatrix entries, RateRole role, bool projected = false,
             double offdiag_tol = tol::rate_negativity,
             double column_tol = tol::rate_column_sum);

  const RealMatrix& entries() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  RateRole role() const { return role_; }
  /// True when negative off-diagonal rates were clamped to zero and the
  /// diagonal repaired; the raw principal log was not a valid generator.
  bool projected() const { return projected_; }

private:
  RealMatrix m_;
  RateRole role_;
  bool projected_;
};

/// Q = principal_log(B) / dt. Off-diagonals below -offdiag_tol are clamped to
/// zero with the diagonal repaired to restore zero column sums; the result is
/// then flagged as projected.
RateMatrix rate_from_overlap(const OverlapMatrix& b, double dt,
                             double offdiag_tol = tol::rate_offdiag);

using BasisFn = std::function<OrthonormalBasis(double)>;

/// Q_{k'k} = |<d k'/dt | k>|^2 * dt for k' != k, by central finite
/// differences with phase alignment across the three stencil points; the
/// diagonal restores zero column sums. step_scale is the finite-difference
/// step relative to max(|t|, 1).
RateMatrix basis_drift_rates(const BasisFn& basis_fn, double t, double dt,
                             double step_scale = 1e-5);

}  // namespace zeno
