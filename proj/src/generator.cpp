#include "zeno/generator.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "zeno/matrix_functions.hpp"

namespace zeno {

GeneratorSpec GeneratorSpec::hamiltonian(MatrixFn h_fn, bool time_dependent) {
  return GeneratorSpec(Kind::hamiltonian, std::move(h_fn), {}, time_dependent);
}

GeneratorSpec GeneratorSpec::hamiltonian(const ComplexMatrix& h) {
  return hamiltonian([h](double) { return h; }, false);
}

GeneratorSpec GeneratorSpec::dissipative(MatrixFn a_fn, ScalarFn rate_fn,
                                         bool time_dependent) {
  std::vector<JumpTerm> jumps;
  jumps.push_back({std::move(a_fn), std::move(rate_fn)});
  return GeneratorSpec(Kind::dissipative, std::nullopt, std::move(jumps),
                       time_dependent);
}

GeneratorSpec GeneratorSpec::dissipative(const ComplexMatrix& a, double rate) {
  return dissipative([a](double) { return a; },
                     [rate](double) { return rate; }, false);
}

GeneratorSpec GeneratorSpec::composite(std::optional<MatrixFn> h_fn,
                                       std::vector<JumpTerm> jumps,
                                       bool time_dependent) {
  return GeneratorSpec(Kind::composite, std::move(h_fn), std::move(jumps),
                       time_dependent);
}

ComplexMatrix GeneratorSpec::hamiltonian_at(double t) const {
  if (!h_fn_)
    throw ValidationError("generator has no Hamiltonian part");
  ComplexMatrix h = (*h_fn_)(t);
  if (!h.is_hermitian(1e-10)) {
    std::ostringstream msg;
    msg << "Hamiltonian is not Hermitian at t = " << t;
    throw ValidationError(msg.str());
  }
  return h;
}

SuperOperator GeneratorSpec::at(double t) const {
  std::optional<SuperOperator> acc;
  if (h_fn_) acc = SuperOperator::hamiltonian_commutator(hamiltonian_at(t));
  for (const auto& jump : jumps_) {
    const double rate = jump.rate(t);
    if (rate < 0.0) {
      std::ostringstream msg;
      msg << "negative dissipation rate " << rate << " at t = " << t;
      throw ValidationError(msg.str());
    }
    const SuperOperator d = SuperOperator::dissipator(jump.op(t)) * rate;
    acc = acc ? *acc + d : d;
  }
  if (!acc) throw ValidationError("generator has no terms");
  return *acc;
}

StrengthSplit split_strength(const GeneratorSpec& spec, double t, int samples,
                             std::uint64_t seed) {
  const SuperOperator l = spec.at(t);
  if (l.matrix().max_abs() < 1e-14)
    throw ZeroStrengthError("split_strength: generator vanishes at this time");
  const double gamma = induced_trace_norm(l, samples, seed);
  if (gamma <= 0.0)
    throw ZeroStrengthError("split_strength: norm estimate is zero");
  return {gamma, l * complex(1.0 / gamma, 0.0)};
}

GkslReport gksl_check(const SuperOperator& s, double t_probe, double trace_tol,
                      double choi_tol) {
  const std::size_t d = s.dim();
  GkslReport rep;

  // Trace annihilation: tr(S[X]) = vec(I)^dag S vec(X) for all X, so the
  // residual is the largest entry of vec(I)^dag S.
  const ComplexMatrix row = vectorize(ComplexMatrix::identity(d)).adjoint() *
                            s.matrix();
  rep.trace_annihilation_residual = row.max_abs();

  // Hermiticity preservation on a few fixed Hermitian probes.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double herm = 0.0;
  for (int probe = 0; probe < 8; ++probe) {
    ComplexMatrix x(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        x(i, j) = complex(gauss(rng), gauss(rng));
    x = (x + x.adjoint()) * complex(0.5, 0.0);
    const ComplexMatrix y = s.apply(x);
    herm = std::max(herm, y.max_abs_diff(y.adjoint()));
  }
  rep.hermiticity_residual = herm;

  const SuperOperator propagator = s.exp(t_probe);
  const CptpReport cptp = check_cptp(propagator, choi_tol, trace_tol);
  rep.min_choi_eigenvalue = cptp.min_choi_eigenvalue;
  rep.exp_trace_preservation_residual = cptp.trace_preservation_residual;

  rep.consistent = rep.trace_annihilation_residual <= trace_tol &&
                   rep.hermiticity_residual <= 1e-9 &&
                   rep.min_choi_eigenvalue >= -choi_tol &&
                   rep.exp_trace_preservation_residual <= 1e-9;
  return rep;
}

}  // namespace zeno
