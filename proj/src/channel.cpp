#include "zeno/channel.hpp"

#include <cmath>
#include <sstream>

#include "zeno/matrix_functions.hpp"

namespace zeno {

namespace {

SuperOperator build_dephasing_superop(const OrthonormalBasis& basis) {
  const std::size_t d = basis.dim();
  SuperOperator s = SuperOperator::zero(d);
  for (std::size_t k = 0; k < d; ++k) {
    const ComplexMatrix p = basis.projector(k);
    s = s + SuperOperator::sandwich(p, p);
  }
  return s;
}

}  // namespace

DephasingChannel::DephasingChannel(OrthonormalBasis basis)
    : basis_(std::move(basis)), superop_(build_dephasing_superop(basis_)) {}

DephasingChannel dephasing_channel(const OrthonormalBasis& basis) {
  return DephasingChannel(basis);
}

ComplexMatrix DephasingChannel::apply(const ComplexMatrix& x) const {
  ComplexMatrix in_basis = basis_.to_basis(x);
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j)
      if (i != j) in_basis(i, j) = complex(0.0, 0.0);
  return basis_.from_basis(in_basis);
}

DensityOperator DephasingChannel::apply(const DensityOperator& rho) const {
  return DensityOperator(apply(rho.matrix()));
}

OverlapMatrix overlap_matrix(const OrthonormalBasis& prev,
                             const OrthonormalBasis& next) {
  if (prev.dim() != next.dim())
    throw ValidationError("overlap_matrix: dimension mismatch");
  const std::size_t d = prev.dim();
  // (next^dag prev)_{k'k} = <next_k' | prev_k>.
  const ComplexMatrix u = next.matrix().adjoint() * prev.matrix();
  RealMatrix b(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) b(r, c) = std::norm(u(r, c));
  return OverlapMatrix(std::move(b));
}

double OverlapMatrix::stochasticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    m = std::max(m, std::abs(b_.row_sum(i) - 1.0));
    m = std::max(m, std::abs(b_.col_sum(i) - 1.0));
  }
  return m;
}

RateMatrix::RateMatrix(RealMatrix entries, RateRole role, bool projected,
                       double offdiag_tol, double column_tol)
    : m_(std::move(entries)), role_(role), projected_(projected) {
  const std::size_t d = m_.dim();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (r != c && m_(r, c) < -offdiag_tol) {
        std::ostringstream msg;
        msg << "RateMatrix: negative off-diagonal rate " << m_(r, c) << " at ("
            << r << ", " << c << ")";
        throw ValidationError(msg.str());
      }
  if (role_ != RateRole::combined) {
    for (std::size_t c = 0; c < d; ++c)
      if (std::abs(m_.col_sum(c)) > column_tol) {
        std::ostringstream msg;
        msg << "RateMatrix: column " << c << " sums to " << m_.col_sum(c);
        throw ValidationError(msg.str());
      }
  }
}

RateMatrix rate_from_overlap(const OverlapMatrix& b, double dt,
                             double offdiag_tol) {
  if (dt <= 0.0) throw ValidationError("rate_from_overlap: dt must be > 0");
  ComplexMatrix logb;
  try {
    logb = principal_log(b.entries().to_complex());
  } catch (const BranchCutError& e) {
    std::ostringstream msg;
    msg << "rate_from_overlap: " << e.what();
    throw BranchCutError(msg.str(), e.eigenvalue);
  }
  RealMatrix q = RealMatrix::from_complex(logb) * (1.0 / dt);

  const std::size_t d = q.dim();
  bool clamped = false;
  bool projected = false;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      if (r != c && q(r, c) < 0.0) {
        clamped = true;
        if (q(r, c) < -offdiag_tol) projected = true;
        q(r, c) = 0.0;
      }
  if (clamped) {
    // Repair diagonals so every column again sums to zero.
    for (std::size_t c = 0; c < d; ++c) {
      double off = 0.0;
      for (std::size_t r = 0; r < d; ++r)
        if (r != c) off += q(r, c);
      q(c, c) = -off;
    }
  }
  return RateMatrix(std::move(q), RateRole::basis_drift, projected);
}

RateMatrix basis_drift_rates(const BasisFn& basis_fn, double t, double dt,
                             double step_scale) {
  if (dt <= 0.0) throw ValidationError("basis_drift_rates: dt must be > 0");
  const double h = step_scale * std::max(std::abs(t), 1.0);
  const OrthonormalBasis center = basis_fn(t);
  const OrthonormalBasis plus = basis_fn(t + h).phase_aligned_to(center);
  const OrthonormalBasis minus = basis_fn(t - h).phase_aligned_to(center);

  const std::size_t d = center.dim();
  ComplexMatrix deriv(d, d);  // column k = d|k>/dt
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      deriv(i, k) =
          (plus.matrix()(i, k) - minus.matrix()(i, k)) / complex(2.0 * h, 0.0);

  RealMatrix q(d, d);
  for (std::size_t kp = 0; kp < d; ++kp)
    for (std::size_t k = 0; k < d; ++k) {
      if (kp == k) continue;
      const complex ov = inner(deriv.column(kp), center.vector(k));
      q(kp, k) = std::norm(ov) * dt;
    }
  for (std::size_t c = 0; c < d; ++c) {
    double off = 0.0;
    for (std::size_t r = 0; r < d; ++r)
      if (r != c) off += q(r, c);
    q(c, c) = -off;
  }
  return RateMatrix(std::move(q), RateRole::basis_drift);
}

}  // namespace zeno
