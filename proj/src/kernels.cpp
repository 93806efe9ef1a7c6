#include "zeno/kernels.hpp"

#ifdef ZENO_HAVE_OPENMP
#include <omp.h>
#endif

namespace zeno::kernels {

namespace {

// One output row of c = a * b. i-k-j order: streams through b rows while the
// a element stays in a register.
inline void matmul_row(const complex* a, const complex* b, complex* c,
                       std::size_t i, std::size_t k, std::size_t n) {
  complex* crow = c + i * n;
  for (std::size_t j = 0; j < n; ++j) crow[j] = complex(0.0, 0.0);
  const complex* arow = a + i * k;
  for (std::size_t l = 0; l < k; ++l) {
    const complex ail = arow[l];
    if (ail == complex(0.0, 0.0)) continue;
    const complex* brow = b + l * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] += ail * brow[j];
  }
}

inline complex dot_row(const complex* arow, const complex* x, std::size_t n) {
  complex acc(0.0, 0.0);
  for (std::size_t j = 0; j < n; ++j) acc += arow[j] * x[j];
  return acc;
}

}  // namespace

void matmul_serial(const complex* a, const complex* b, complex* c,
                   std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) matmul_row(a, b, c, i, k, n);
}

void matmul_parallel(const complex* a, const complex* b, complex* c,
                     std::size_t m, std::size_t k, std::size_t n) {
#ifdef ZENO_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) matmul_row(a, b, c, i, k, n);
#else
  matmul_serial(a, b, c, m, k, n);
#endif
}

void matmul(const complex* a, const complex* b, complex* c, std::size_t m,
            std::size_t k, std::size_t n) {
  if (parallel_available() && m * k * n >= matmul_parallel_threshold)
    matmul_parallel(a, b, c, m, k, n);
  else
    matmul_serial(a, b, c, m, k, n);
}

void matvec_serial(const complex* a, const complex* x, complex* y,
                   std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) y[i] = dot_row(a + i * n, x, n);
}

void matvec_parallel(const complex* a, const complex* x, complex* y,
                     std::size_t m, std::size_t n) {
#ifdef ZENO_HAVE_OPENMP
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) y[i] = dot_row(a + i * n, x, n);
#else
  matvec_serial(a, x, y, m, n);
#endif
}

void matvec(const complex* a, const complex* x, complex* y, std::size_t m,
            std::size_t n) {
  if (parallel_available() && m * n >= matvec_parallel_threshold)
    matvec_parallel(a, x, y, m, n);
  else
    matvec_serial(a, x, y, m, n);
}

bool parallel_available() {
#ifdef ZENO_HAVE_OPENMP
  return omp_get_max_threads() > 1;
#else
  return false;
#endif
}

int max_threads() {
#ifdef ZENO_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace zeno::kernels
