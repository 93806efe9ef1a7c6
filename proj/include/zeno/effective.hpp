#pragma once

#include <functional>

#include "zeno/channel.hpp"
#include "zeno/detail/adaptive.hpp"
#include "zeno/generator.hpp"
#include "zeno/types.hpp"

namespace zeno {

/// Effective generator for one inter-measurement interval of a general
/// time-dependent dynamics:
///   L_eff(t') = Lambda L(t') [Id + (1/2) K] Lambda,
///   K = integral over the interval of (L(t'') - Lambda L(t'') Lambda).
/// The inner integral is evaluated once on construction by composite midpoint
/// quadrature. The result maps diagonal (in the measurement basis) operators
/// to diagonal operators.
class EffectiveGenerator {
public:
  EffectiveGenerator(const GeneratorSpec& spec, const DephasingChannel& channel,
                     double t_prev, double t_next,
                     int quadrature_nodes = defaults::quadrature_nodes);

  SuperOperator at(double t) const;

  /// True when the estimated integral of the generator strength over the
  /// interval exceeded tol::interval_strength_warn.
  bool strength_warning() const { return strength_warning_; }
  double integrated_strength() const { return integrated_strength_; }

private:
  GeneratorSpec spec_;
  DephasingChannel channel_;
  SuperOperator bracket_;  // Id + K/2
  bool strength_warning_ = false;
  double integrated_strength_ = 0.0;
};

EffectiveGenerator effective_generator_general(
    const GeneratorSpec& spec, const DephasingChannel& channel, double t_prev,
    double t_next, int quadrature_nodes = defaults::quadrature_nodes);

/// Stroboscopic-limit semigroup generator for a constant generator
/// L = gamma * calL measured every tau:
///   L_eff = gamma Lam calL Lam
///           + (gamma^2 tau / 2)(Lam calL^2 Lam - Lam calL Lam calL Lam).
SuperOperator stroboscopic_generator(const SuperOperator& cal_l,
                                     const DephasingChannel& channel,
                                     double gamma, double tau);

/// The same generator in explicit GKSL form for Hamiltonian dynamics
/// L = -i gamma [h, .]:
///   L_eff[X] = gamma^2 tau sum_{k != k'} |h_{kk'}|^2
///              (|k'><k| X |k><k'| - (1/2){|k><k|, X}).
SuperOperator gksl_effective_hamiltonian(const ComplexMatrix& h,
                                         const OrthonormalBasis& basis,
                                         double gamma, double tau);

/// Pauli rates of the stroboscopic Hamiltonian limit:
/// W_{k'->k} = gamma^2 tau |h_{kk'}|^2 (symmetric), diagonal from zero column
/// sums. Matrix element (k, k') is the gain into k from k'.
RateMatrix pauli_rates_hamiltonian(const ComplexMatrix& h,
                                   const OrthonormalBasis& basis, double gamma,
                                   double tau);

/// Pauli rates of dissipative dynamics under frequent measurements:
/// gain into k from k' is gamma(t) |<k|A(t)|k'>|^2 (not symmetric).
RateMatrix pauli_rates_dissipative(const MatrixFn& a_fn,
                                   const ScalarFn& gamma_fn,
                                   const OrthonormalBasis& basis, double t);

/// Combined basis-drift + dynamical rate for measurements in the drifting
/// eigenbasis of H(t): gain into k from l is
///   |<dk/dt | l>|^2 (1 + E_l(t)^2 dt^2) dt
/// at the interval midpoint; diagonal entries close the difference form.
RateMatrix drifting_basis_rates(const MatrixFn& h_fn, double t_prev,
                                double t_next, double fd_step_scale = 1e-5);

/// Classical Pauli system: populations driven by a (time-dependent) rate
/// matrix.
struct PauliSystem {
  std::size_t dim;
  std::function<RateMatrix(double)> rate_fn;
  std::vector<double> p0;
};

struct PopulationTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> populations;
  detail::IntegratorStats stats;
  std::vector<std::string> warnings;
};

/// Integrate dp/dt = rates(t) p with the adaptive midpoint-exponential
/// stepper. For generator-form rate matrices (columns summing to zero) the
/// population sum is preserved exactly per step. Populations outside
/// [-1e-8, 1 + 1e-8] are clamped and a warning recorded.
PopulationTrajectory solve_pauli(
    const std::function<RateMatrix(double)>& rates_fn,
    const std::vector<double>& p0, double t0, double t1,
    double tolerance = tol::integrator, const std::vector<double>& grid = {},
    long max_steps = defaults::max_integrator_steps);

PopulationTrajectory solve_pauli(const PauliSystem& system, double t0,
                                 double t1, double tolerance = tol::integrator,
                                 const std::vector<double>& grid = {});

}  // namespace zeno
