// Benchmark of the parallel kernels against their serial references:
// dense complex matmul/matvec, Pade exponentials built on them, the
// trace-norm sampling sweep, and a Landau-Zener N-sweep. Correctness of the
// pairs is asserted as they run.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef ZENO_HAVE_OPENMP
#include <omp.h>
#endif

#include "zeno/kernels.hpp"
#include "zeno/landau_zener.hpp"
#include "zeno/matrix_functions.hpp"
#include "zeno/superoperator.hpp"

using namespace zeno;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::vector<complex> random_buffer(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<complex> v(n);
  for (auto& x : v) x = complex(gauss(rng), gauss(rng));
  return v;
}

void bench_matmul(std::size_t n, int reps, std::mt19937_64& rng) {
  const auto a = random_buffer(n * n, rng);
  const auto b = random_buffer(n * n, rng);
  std::vector<complex> c1(n * n), c2(n * n);

  auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r)
    kernels::matmul_serial(a.data(), b.data(), c1.data(), n, n, n);
  const double serial = seconds_since(t0) / reps;

  t0 = clock_type::now();
  for (int r = 0; r < reps; ++r)
    kernels::matmul_parallel(a.data(), b.data(), c2.data(), n, n, n);
  const double parallel = seconds_since(t0) / reps;

  if (c1 != c2) {
    std::fprintf(stderr, "matmul mismatch at n=%zu\n", n);
    std::exit(1);
  }
  std::printf("matmul   %4zu x %-4zu   serial %8.3f ms   parallel %8.3f ms   "
              "speedup %5.2fx\n",
              n, n, serial * 1e3, parallel * 1e3, serial / parallel);
}

void bench_matvec(std::size_t n, int reps, std::mt19937_64& rng) {
  const auto a = random_buffer(n * n, rng);
  const auto x = random_buffer(n, rng);
  std::vector<complex> y1(n), y2(n);

  auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r)
    kernels::matvec_serial(a.data(), x.data(), y1.data(), n, n);
  const double serial = seconds_since(t0) / reps;

  t0 = clock_type::now();
  for (int r = 0; r < reps; ++r)
    kernels::matvec_parallel(a.data(), x.data(), y2.data(), n, n);
  const double parallel = seconds_since(t0) / reps;

  if (y1 != y2) {
    std::fprintf(stderr, "matvec mismatch at n=%zu\n", n);
    std::exit(1);
  }
  std::printf("matvec   %4zu x %-4zu   serial %8.3f ms   parallel %8.3f ms   "
              "speedup %5.2fx\n",
              n, n, serial * 1e3, parallel * 1e3, serial / parallel);
}

// matrix_exp_pade dispatches through kernels::matmul; the threshold routes
// large operands to the parallel path, so timing it with one thread pinned
// against the full thread count shows the end-to-end kernel effect.
void bench_exp(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix m(n, n);
  const auto buf = random_buffer(n * n, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = buf[i * n + j] * 0.05;

#ifdef ZENO_HAVE_OPENMP
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  auto t0 = clock_type::now();
  const ComplexMatrix e1 = matrix_exp_pade(m);
  const double serial = seconds_since(t0);
#ifdef ZENO_HAVE_OPENMP
  omp_set_num_threads(threads);
#endif
  t0 = clock_type::now();
  const ComplexMatrix e2 = matrix_exp_pade(m);
  const double parallel = seconds_since(t0);
  if (e1.max_abs_diff(e2) != 0.0) {
    std::fprintf(stderr, "matrix_exp mismatch at n=%zu\n", n);
    std::exit(1);
  }
  std::printf("exp      %4zu x %-4zu   serial %8.3f ms   parallel %8.3f ms   "
              "speedup %5.2fx\n",
              n, n, serial * 1e3, parallel * 1e3, serial / parallel);
}

void bench_trace_norm(std::mt19937_64& rng) {
  const std::size_t d = 6;
  const auto buf = random_buffer(d * d * d * d, rng);
  ComplexMatrix m(d * d, d * d);
  for (std::size_t i = 0; i < d * d; ++i)
    for (std::size_t j = 0; j < d * d; ++j) m(i, j) = buf[i * d * d + j];
  const SuperOperator s(d, m);

#ifdef ZENO_HAVE_OPENMP
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  auto t0 = clock_type::now();
  const double v1 = induced_trace_norm(s, 4000);
  const double serial = seconds_since(t0);
#ifdef ZENO_HAVE_OPENMP
  omp_set_num_threads(threads);
#endif
  t0 = clock_type::now();
  const double v2 = induced_trace_norm(s, 4000);
  const double parallel = seconds_since(t0);
  if (v1 != v2) {
    std::fprintf(stderr, "trace norm mismatch: %.17g vs %.17g\n", v1, v2);
    std::exit(1);
  }
  std::printf("1->1 norm (d=6, 4000 dyads)   serial %8.3f ms   parallel "
              "%8.3f ms   speedup %5.2fx\n",
              serial * 1e3, parallel * 1e3, serial / parallel);
}

void bench_lz_sweep() {
  const LZParams p(1.0, 20.0);
  const std::vector<int> ns{4, 8, 16, 32};
  std::vector<double> terminals(ns.size());

#ifdef ZENO_HAVE_OPENMP
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  auto t0 = clock_type::now();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const LZSchedule s = make_schedule(p, LZScheduleKind::uniform, ns[i]);
    terminals[i] = lz_exact_run(p, s, 1e-5).terminal_rho11;
  }
  const double serial = seconds_since(t0);

#ifdef ZENO_HAVE_OPENMP
  omp_set_num_threads(threads);
#endif
  std::vector<double> terminals_par(ns.size());
  t0 = clock_type::now();
#ifdef ZENO_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const LZSchedule s = make_schedule(p, LZScheduleKind::uniform, ns[i]);
    terminals_par[i] = lz_exact_run(p, s, 1e-5).terminal_rho11;
  }
  const double parallel = seconds_since(t0);
  if (terminals != terminals_par) {
    std::fprintf(stderr, "LZ sweep mismatch between serial and parallel\n");
    std::exit(1);
  }
  std::printf("LZ sweep N={4,8,16,32}        serial %8.3f ms   parallel "
              "%8.3f ms   speedup %5.2fx\n",
              serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", kernels::max_threads());
  std::mt19937_64 rng(2024);
  for (std::size_t n : {64, 128, 256}) bench_matmul(n, n <= 128 ? 20 : 5, rng);
  for (std::size_t n : {256, 512}) bench_matvec(n, 200, rng);
  for (std::size_t n : {128, 256}) bench_exp(n, rng);
  bench_trace_norm(rng);
  bench_lz_sweep();
  return 0;
}
