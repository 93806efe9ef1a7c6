#include "zeno/superoperator.hpp"

#include <algorithm>
#include <random>

#include "zeno/matrix_functions.hpp"

namespace zeno {

ComplexMatrix vectorize(const ComplexMatrix& x) {
  const std::size_t d = x.dim();
  ComplexMatrix v(d * d, 1);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) v(c * d + r, 0) = x(r, c);
  return v;
}

ComplexMatrix devectorize(const ComplexMatrix& v, std::size_t d) {
  if (v.rows() != d * d || v.cols() != 1)
    throw ValidationError("devectorize: wrong vector length");
  ComplexMatrix x(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) x(r, c) = v(c * d + r, 0);
  return x;
}

SuperOperator::SuperOperator(std::size_t dim, ComplexMatrix matrix)
    : dim_(dim), m_(std::move(matrix)) {
  if (m_.rows() != dim * dim || m_.cols() != dim * dim)
    throw ValidationError("SuperOperator: matrix must be d^2 x d^2");
}

SuperOperator SuperOperator::zero(std::size_t dim) {
  return SuperOperator(dim, ComplexMatrix::zero(dim * dim, dim * dim));
}

SuperOperator SuperOperator::identity(std::size_t dim) {
  return SuperOperator(dim, ComplexMatrix::identity(dim * dim));
}

SuperOperator SuperOperator::left_multiply(const ComplexMatrix& a) {
  const std::size_t d = a.dim();
  return SuperOperator(d, kron(ComplexMatrix::identity(d), a));
}

SuperOperator SuperOperator::right_multiply(const ComplexMatrix& b) {
  const std::size_t d = b.dim();
  return SuperOperator(d, kron(b.transpose(), ComplexMatrix::identity(d)));
}

SuperOperator SuperOperator::sandwich(const ComplexMatrix& a,
                                      const ComplexMatrix& b) {
  return SuperOperator(a.dim(), kron(b.transpose(), a));
}

SuperOperator SuperOperator::conjugation(const ComplexMatrix& a) {
  return sandwich(a, a.adjoint());
}

SuperOperator SuperOperator::hamiltonian_commutator(const ComplexMatrix& h) {
  const complex mi(0.0, -1.0);
  return (left_multiply(h) - right_multiply(h)) * mi;
}

SuperOperator SuperOperator::dissipator(const ComplexMatrix& a) {
  const ComplexMatrix ada = a.adjoint() * a;
  return conjugation(a) - (left_multiply(ada) + right_multiply(ada)) * 0.5;
}

ComplexMatrix SuperOperator::apply(const ComplexMatrix& x) const {
  if (x.dim() != dim_) throw ValidationError("SuperOperator::apply: dimension");
  return devectorize(m_ * vectorize(x), dim_);
}

SuperOperator SuperOperator::operator*(const SuperOperator& o) const {
  if (dim_ != o.dim_) throw ValidationError("superoperator dim mismatch");
  return SuperOperator(dim_, m_ * o.m_);
}

SuperOperator SuperOperator::operator+(const SuperOperator& o) const {
  if (dim_ != o.dim_) throw ValidationError("superoperator dim mismatch");
  return SuperOperator(dim_, m_ + o.m_);
}

SuperOperator SuperOperator::operator-(const SuperOperator& o) const {
  if (dim_ != o.dim_) throw ValidationError("superoperator dim mismatch");
  return SuperOperator(dim_, m_ - o.m_);
}

SuperOperator SuperOperator::operator*(complex s) const {
  return SuperOperator(dim_, m_ * s);
}

SuperOperator SuperOperator::exp(double t) const {
  return SuperOperator(dim_, matrix_exp_pade(m_ * complex(t, 0.0)));
}

ComplexMatrix choi_matrix(const SuperOperator& s) {
  // S[E_ij] is a reshuffle of column j*d+i of the superoperator matrix:
  // C[(i d + r), (j d + c)] = M[(c d + r), (j d + i)].
  const std::size_t d = s.dim();
  const ComplexMatrix& m = s.matrix();
  ComplexMatrix c(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t col = 0; col < d; ++col)
          c(i * d + r, j * d + col) = m(col * d + r, j * d + i);
  return c;
}

ComplexMatrix choi_partial_trace_output(const ComplexMatrix& choi,
                                        std::size_t d) {
  if (choi.rows() != d * d || choi.cols() != d * d)
    throw ValidationError("choi_partial_trace_output: shape mismatch");
  ComplexMatrix t(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      complex s(0.0, 0.0);
      for (std::size_t r = 0; r < d; ++r) s += choi(i * d + r, j * d + r);
      t(i, j) = s;
    }
  return t;
}

CptpReport check_cptp(const SuperOperator& s, double cp_tol, double tp_tol) {
  const std::size_t d = s.dim();
  const ComplexMatrix choi = choi_matrix(s);
  CptpReport rep;
  rep.choi_hermiticity_residual = choi.max_abs_diff(choi.adjoint());
  rep.min_choi_eigenvalue = min_hermitian_eigenvalue(choi);
  rep.trace_preservation_residual =
      choi_partial_trace_output(choi, d).max_abs_diff(
          ComplexMatrix::identity(d));
  rep.completely_positive = rep.min_choi_eigenvalue >= -cp_tol;
  rep.trace_preserving = rep.trace_preservation_residual <= tp_tol;
  return rep;
}

namespace {

ComplexMatrix random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix v(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i, 0) = complex(re, im);
  }
  return normalized(v);
}

double dyad_value(const SuperOperator& s, const ComplexMatrix& psi,
                  const ComplexMatrix& phi) {
  return trace_norm(s.apply(outer(psi, phi)));
}

// One round of alternating ascent for max ||S[|psi><phi|]||_1. Given the
// polar witness W of M = S[|psi><phi|] (so ||M||_1 = Re tr(W^dag M)), the
// objective is linear in psi for fixed phi and vice versa, so each half-step
// has a closed-form maximizer and the value never decreases.
struct AscentState {
  ComplexMatrix psi, phi;
  double value;
};

void ascend(const SuperOperator& s, AscentState& st, int max_iters) {
  const std::size_t d = s.dim();
  const ComplexMatrix& m = s.matrix();
  for (int it = 0; it < max_iters; ++it) {
    // Polar factor W = U V^dag of img = U S V^dag, computed as
    // img (img^dag img)^{-1/2}; directions with zero singular value drop out.
    const ComplexMatrix img = s.apply(outer(st.psi, st.phi));
    const ComplexMatrix gram = img.adjoint() * img;
    const auto ges = hermitian_eigensystem(gram);
    ComplexMatrix inv_sqrt(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      const double lam = std::max(ges.values[i], 0.0);
      const double inv = lam > 1e-300 ? 1.0 / std::sqrt(lam) : 0.0;
      inv_sqrt(i, i) = inv;
    }
    const ComplexMatrix w =
        img * (ges.vectors * inv_sqrt * ges.vectors.adjoint());

    // G_{ce} = sum_ab conj(W_ab) M[(b d + a), (e d + c)].
    ComplexMatrix g(d, d);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t e = 0; e < d; ++e) {
        complex acc(0.0, 0.0);
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b)
            acc += std::conj(w(a, b)) * m(b * d + a, e * d + c);
        g(c, e) = acc;
      }

    // psi maximizing Re(psi^T u) with u_c = sum_e G_{ce} conj(phi_e).
    ComplexMatrix u(d, 1);
    for (std::size_t c = 0; c < d; ++c) {
      complex acc(0.0, 0.0);
      for (std::size_t e = 0; e < d; ++e)
        acc += g(c, e) * std::conj(st.phi(e, 0));
      u(c, 0) = std::conj(acc);
    }
    if (vector_norm(u) > 0.0) st.psi = normalized(u);

    // phi maximizing Re(phi^dag w2) with w2_e = sum_c G_{ce} psi_c.
    ComplexMatrix w2(d, 1);
    for (std::size_t e = 0; e < d; ++e) {
      complex acc(0.0, 0.0);
      for (std::size_t c = 0; c < d; ++c) acc += g(c, e) * st.psi(c, 0);
      w2(e, 0) = acc;
    }
    if (vector_norm(w2) > 0.0) st.phi = normalized(w2);

    const double next = dyad_value(s, st.psi, st.phi);
    if (next <= st.value * (1.0 + 1e-14)) {
      st.value = std::max(st.value, next);
      break;
    }
    st.value = next;
  }
}

}  // namespace

double induced_trace_norm(const SuperOperator& s, int samples,
                          std::uint64_t seed) {
  if (samples < 1)
    throw ValidationError("induced_trace_norm: samples must be >= 1");
  const std::size_t d = s.dim();
  std::mt19937_64 rng(seed);

  // Sampling stage. Candidate dyads are generated serially (the RNG stream
  // fixes them), evaluated in a deterministic-order loop.
  std::vector<ComplexMatrix> psis, phis;
  psis.reserve(samples);
  phis.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    psis.push_back(random_unit_vector(d, rng));
    phis.push_back(random_unit_vector(d, rng));
  }
  std::vector<double> values(samples);
#ifdef ZENO_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (samples >= 64)
#endif
  for (int i = 0; i < samples; ++i) values[i] = dyad_value(s, psis[i], phis[i]);

  // Keep the best few starts and polish each.
  const int keep = std::min<int>(8, samples);
  std::vector<int> order(samples);
  for (int i = 0; i < samples; ++i) order[i] = i;
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](int a, int b) { return values[a] > values[b]; });
  double best = 0.0;
  for (int k = 0; k < keep; ++k) {
    AscentState st{psis[order[k]], phis[order[k]], values[order[k]]};
    ascend(s, st, 100);
    best = std::max(best, st.value);
  }
  return best;
}

}  // namespace zeno
