#pragma once

#include <random>

#include "zeno/basis.hpp"
#include "zeno/complex_matrix.hpp"
#include "zeno/density.hpp"

namespace zeno::testing {

inline ComplexMatrix random_matrix(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      m(i, j) = complex(gauss(rng), gauss(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix m = random_matrix(d, rng);
  return (m + m.adjoint()) * complex(0.5, 0.0);
}

/// Haar-ish random orthonormal basis: Gram-Schmidt on a Gaussian matrix,
/// two passes for numerical orthogonality.
inline OrthonormalBasis random_basis(std::size_t d, std::mt19937_64& rng) {
  ComplexMatrix m = random_matrix(d, rng);
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < d; ++k) {
      ComplexMatrix v = m.column(k);
      for (std::size_t j = 0; j < k; ++j) {
        const ComplexMatrix u = m.column(j);
        const complex ov = inner(u, v);
        v -= u * ov;
      }
      m.set_column(k, normalized(v));
    }
  }
  return OrthonormalBasis::from_columns(std::move(m));
}

inline DensityOperator random_density(std::size_t d, std::mt19937_64& rng) {
  const ComplexMatrix g = random_matrix(d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho *= complex(1.0 / rho.trace().real(), 0.0);
  return DensityOperator((rho + rho.adjoint()) * complex(0.5, 0.0));
}

inline OrthonormalBasis hadamard_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  return OrthonormalBasis::from_columns(
      ComplexMatrix{{s, s}, {s, -s}});
}

}  // namespace zeno::testing
