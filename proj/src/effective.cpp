#include "zeno/effective.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "zeno/matrix_functions.hpp"

namespace zeno {

EffectiveGenerator::EffectiveGenerator(const GeneratorSpec& spec,
                                       const DephasingChannel& channel,
                                       double t_prev, double t_next,
                                       int quadrature_nodes)
    : spec_(spec), channel_(channel), bracket_(SuperOperator::zero(0)) {
  if (!(t_next > t_prev))
    throw ValidationError("EffectiveGenerator: need t_next > t_prev");
  if (quadrature_nodes < 1)
    throw ValidationError("EffectiveGenerator: need at least one node");

  const std::size_t d = channel.dim();
  const SuperOperator& lam = channel.superoperator();
  const double width = (t_next - t_prev) / quadrature_nodes;

  SuperOperator k = SuperOperator::zero(d);
  for (int node = 0; node < quadrature_nodes; ++node) {
    const double t = t_prev + (node + 0.5) * width;
    const SuperOperator l = spec.at(t);
    k = k + (l - lam * l * lam) * width;
    // Cheap strength sample for the validity warning only; physics uses L
    // directly.
    integrated_strength_ += induced_trace_norm(l, 64, 0) * width;
  }
  strength_warning_ = integrated_strength_ > tol::interval_strength_warn;
  bracket_ = SuperOperator::identity(d) + k * complex(0.5, 0.0);
}

SuperOperator EffectiveGenerator::at(double t) const {
  const SuperOperator& lam = channel_.superoperator();
  return lam * spec_.at(t) * bracket_ * lam;
}

EffectiveGenerator effective_generator_general(const GeneratorSpec& spec,
                                               const DephasingChannel& channel,
                                               double t_prev, double t_next,
                                               int quadrature_nodes) {
  return EffectiveGenerator(spec, channel, t_prev, t_next, quadrature_nodes);
}

SuperOperator stroboscopic_generator(const SuperOperator& cal_l,
                                     const DephasingChannel& channel,
                                     double gamma, double tau) {
  if (tau < 0.0) throw ValidationError("stroboscopic_generator: tau >= 0");
  const SuperOperator& lam = channel.superoperator();
  const SuperOperator lll = lam * cal_l * lam;
  const SuperOperator first = lll * complex(gamma, 0.0);
  const SuperOperator second =
      (lam * cal_l * cal_l * lam - lll * cal_l * lam) *
      complex(0.5 * gamma * gamma * tau, 0.0);
  return first + second;
}

SuperOperator gksl_effective_hamiltonian(const ComplexMatrix& h,
                                         const OrthonormalBasis& basis,
                                         double gamma, double tau) {
  if (!h.is_hermitian(1e-10))
    throw ValidationError("gksl_effective_hamiltonian: h is not Hermitian");
  const std::size_t d = h.dim();
  const ComplexMatrix h_in_basis = basis.to_basis(h);
  SuperOperator l_eff = SuperOperator::zero(d);
  const double g = gamma * gamma * tau;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t kp = 0; kp < d; ++kp) {
      if (k == kp) continue;
      const double w = g * std::norm(h_in_basis(k, kp));
      if (w == 0.0) continue;
      // Lindblad operator |k'><k| in the measurement basis.
      const ComplexMatrix jump = outer(basis.vector(kp), basis.vector(k));
      l_eff = l_eff + SuperOperator::dissipator(jump) * complex(w, 0.0);
    }
  return l_eff;
}

RateMatrix pauli_rates_hamiltonian(const ComplexMatrix& h,
                                   const OrthonormalBasis& basis, double gamma,
                                   double tau) {
  if (!h.is_hermitian(1e-10))
    throw ValidationError("pauli_rates_hamiltonian: h is not Hermitian");
  const std::size_t d = h.dim();
  const ComplexMatrix hb = basis.to_basis(h);
  const double g = gamma * gamma * tau;
  RealMatrix w(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t kp = 0; kp < d; ++kp)
      if (k != kp) w(k, kp) = g * std::norm(hb(k, kp));
  for (std::size_t c = 0; c < d; ++c) {
    double off = 0.0;
    for (std::size_t r = 0; r < d; ++r)
      if (r != c) off += w(r, c);
    w(c, c) = -off;
  }
  return RateMatrix(std::move(w), RateRole::dynamical);
}

RateMatrix pauli_rates_dissipative(const MatrixFn& a_fn,
                                   const ScalarFn& gamma_fn,
                                   const OrthonormalBasis& basis, double t) {
  const double gamma = gamma_fn(t);
  if (gamma < 0.0)
    throw ValidationError("pauli_rates_dissipative: negative rate");
  const ComplexMatrix ab = basis.to_basis(a_fn(t));
  const std::size_t d = ab.dim();
  RealMatrix w(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t kp = 0; kp < d; ++kp)
      if (k != kp) w(k, kp) = gamma * std::norm(ab(k, kp));
  for (std::size_t c = 0; c < d; ++c) {
    double loss = 0.0;
    for (std::size_t r = 0; r < d; ++r)
      if (r != c) loss += gamma * std::norm(ab(r, c));
    w(c, c) = -loss;
  }
  return RateMatrix(std::move(w), RateRole::dynamical);
}

RateMatrix drifting_basis_rates(const MatrixFn& h_fn, double t_prev,
                                double t_next, double fd_step_scale) {
  if (!(t_next > t_prev))
    throw ValidationError("drifting_basis_rates: need t_next > t_prev");
  const double dt = t_next - t_prev;
  const double t_mid = 0.5 * (t_prev + t_next);

  const ComplexMatrix h_mid = h_fn(t_mid);
  if (!h_mid.is_hermitian(1e-10))
    throw ValidationError("drifting_basis_rates: H is not Hermitian");
  const std::vector<double> energies = eigenvalues_of(h_mid);
  const OrthonormalBasis center = eigenbasis_of(h_mid);

  const double h = fd_step_scale * std::max(std::abs(t_mid), 1.0);
  const OrthonormalBasis plus =
      eigenbasis_of(h_fn(t_mid + h)).phase_aligned_to(center);
  const OrthonormalBasis minus =
      eigenbasis_of(h_fn(t_mid - h)).phase_aligned_to(center);

  const std::size_t d = center.dim();
  ComplexMatrix deriv(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i)
      deriv(i, k) =
          (plus.matrix()(i, k) - minus.matrix()(i, k)) / complex(2.0 * h, 0.0);

  RealMatrix m(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      if (k == l) continue;
      const double q = std::norm(inner(deriv.column(k), center.vector(l)));
      m(k, l) = q * (1.0 + energies[l] * energies[l] * dt * dt) * dt;
    }
  // Difference form: dp_k/dt = sum_{l != k} m_kl (p_l - p_k), so the diagonal
  // carries minus the row sum. Columns need not sum to zero once the R part
  // breaks the symmetry.
  for (std::size_t k = 0; k < d; ++k) {
    double row = 0.0;
    for (std::size_t l = 0; l < d; ++l)
      if (l != k) row += m(k, l);
    m(k, k) = -row;
  }
  return RateMatrix(std::move(m), RateRole::combined);
}

PopulationTrajectory solve_pauli(
    const std::function<RateMatrix(double)>& rates_fn,
    const std::vector<double>& p0, double t0, double t1, double tolerance,
    const std::vector<double>& grid, long max_steps) {
  if (p0.empty()) throw ValidationError("solve_pauli: empty populations");
  double sum = 0.0;
  for (double p : p0) {
    if (p < -1e-12) throw ValidationError("solve_pauli: negative population");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError("solve_pauli: populations must sum to 1");
  if (t1 < t0) throw ValidationError("solve_pauli: t1 must be >= t0");

  const std::size_t d = p0.size();
  PopulationTrajectory out;

  // Constant rates step cache, keyed by step size.
  std::map<double, ComplexMatrix> cache;
  bool constant_probe = true;  // refreshed below per evaluation time
  auto stepper = [&](const ComplexMatrix& p, double t, double h) {
    const double t_mid = t + 0.5 * h;
    if (constant_probe) {
      auto it = cache.find(h);
      if (it != cache.end()) return ComplexMatrix(it->second * p);
    }
    const RateMatrix rates = rates_fn(t_mid);
    if (rates.dim() != d)
      throw ValidationError("solve_pauli: rate matrix dimension mismatch");
    ComplexMatrix e =
        matrix_exp_pade(rates.entries().to_complex() * complex(h, 0.0));
    if (constant_probe) cache.emplace(h, e);
    return ComplexMatrix(e * p);
  };

  // Probe whether rates look time independent; cache only then.
  {
    const RateMatrix a = rates_fn(t0);
    const RateMatrix b = rates_fn(t0 + 0.5 * (t1 - t0));
    constant_probe = a.entries().max_abs_diff(b.entries()) == 0.0;
  }

  ComplexMatrix p(d, 1);
  for (std::size_t i = 0; i < d; ++i) p(i, 0) = p0[i];

  auto record = [&](double t, const ComplexMatrix& pv) {
    std::vector<double> pops(d);
    bool clamped = false;
    for (std::size_t i = 0; i < d; ++i) {
      double v = pv(i, 0).real();
      if (v < -1e-8 || v > 1.0 + 1e-8) {
        clamped = true;
        v = std::clamp(v, 0.0, 1.0);
      }
      pops[i] = v;
    }
    if (clamped) {
      std::ostringstream msg;
      msg << "populations clamped to [0, 1] at t = " << t;
      out.warnings.push_back(msg.str());
    }
    out.times.push_back(t);
    out.populations.push_back(std::move(pops));
  };

  record(t0, p);
  std::vector<double> breaks = grid;
  std::sort(breaks.begin(), breaks.end());
  double t = t0;
  for (double g : breaks) {
    if (g < t0 || g > t1)
      throw ValidationError("solve_pauli: grid time outside range");
    if (g <= t) continue;
    p = detail::adaptive_integrate(
        std::move(p), t, g, tolerance, max_steps, stepper,
        [](const ComplexMatrix& a, const ComplexMatrix& b) {
          return a.max_abs_diff(b);
        },
        &out.stats, &out.warnings);
    t = g;
    record(t, p);
  }
  if (t < t1) {
    p = detail::adaptive_integrate(
        std::move(p), t, t1, tolerance, max_steps, stepper,
        [](const ComplexMatrix& a, const ComplexMatrix& b) {
          return a.max_abs_diff(b);
        },
        &out.stats, &out.warnings);
    record(t1, p);
  }
  return out;
}

PopulationTrajectory solve_pauli(const PauliSystem& system, double t0,
                                 double t1, double tolerance,
                                 const std::vector<double>& grid) {
  if (system.p0.size() != system.dim)
    throw ValidationError("PauliSystem: population count != dim");
  return solve_pauli(system.rate_fn, system.p0, t0, t1, tolerance, grid);
}

}  // namespace zeno
