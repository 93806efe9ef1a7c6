#pragma once

#include <cstddef>

#include "zeno/types.hpp"

namespace zeno::kernels {

// Dense complex kernels. Each kernel exists twice: a serial reference and an
// OpenMP variant. The parallel variants compute every output element with the
// same summation order as the serial ones, so the two paths agree bitwise;
// tests rely on that, and the dispatching wrappers below pick a path purely
// from the problem size.

/// c[m x n] = a[m x k] * b[k x n], row-major.
void matmul_serial(const complex* a, const complex* b, complex* c,
                   std::size_t m, std::size_t k, std::size_t n);
void matmul_parallel(const complex* a, const complex* b, complex* c,
                     std::size_t m, std::size_t k, std::size_t n);
void matmul(const complex* a, const complex* b, complex* c, std::size_t m,
            std::size_t k, std::size_t n);

/// y[m] = a[m x n] * x[n], row-major.
void matvec_serial(const complex* a, const complex* x, complex* y,
                   std::size_t m, std::size_t n);
void matvec_parallel(const complex* a, const complex* x, complex* y,
                     std::size_t m, std::size_t n);
void matvec(const complex* a, const complex* x, complex* y, std::size_t m,
            std::size_t n);

/// True when the library was built with OpenMP and more than one thread is
/// available.
bool parallel_available();
int max_threads();

/// Work thresholds (in multiply-add counts) above which the dispatching
/// wrappers switch to the parallel path.
inline constexpr std::size_t matmul_parallel_threshold = 64 * 64 * 64;
inline constexpr std::size_t matvec_parallel_threshold = 256 * 256;

}  // namespace zeno::kernels
