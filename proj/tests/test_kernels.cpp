#include <array>
#include <random>

#include "doctest.h"
#include "zeno/kernels.hpp"

using namespace zeno;

namespace {

std::vector<complex> random_buffer(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<complex> v(n);
  for (auto& x : v) x = complex(gauss(rng), gauss(rng));
  return v;
}

}  // namespace

TEST_CASE("matmul: parallel path is bit-identical to the serial reference") {
  std::mt19937_64 rng(163);
  for (auto [m, k, n] : {std::array<std::size_t, 3>{64, 64, 64},
                         std::array<std::size_t, 3>{37, 53, 29},
                         std::array<std::size_t, 3>{128, 16, 96}}) {
    const auto a = random_buffer(m * k, rng);
    const auto b = random_buffer(k * n, rng);
    std::vector<complex> c_serial(m * n), c_parallel(m * n), c_auto(m * n);
    kernels::matmul_serial(a.data(), b.data(), c_serial.data(), m, k, n);
    kernels::matmul_parallel(a.data(), b.data(), c_parallel.data(), m, k, n);
    kernels::matmul(a.data(), b.data(), c_auto.data(), m, k, n);
    CHECK(c_serial == c_parallel);
    CHECK(c_serial == c_auto);
  }
}

TEST_CASE("matvec: parallel path is bit-identical to the serial reference") {
  std::mt19937_64 rng(167);
  for (auto [m, n] : {std::array<std::size_t, 2>{64, 64},
                      std::array<std::size_t, 2>{300, 300},
                      std::array<std::size_t, 2>{17, 257}}) {
    const auto a = random_buffer(m * n, rng);
    const auto x = random_buffer(n, rng);
    std::vector<complex> y_serial(m), y_parallel(m), y_auto(m);
    kernels::matvec_serial(a.data(), x.data(), y_serial.data(), m, n);
    kernels::matvec_parallel(a.data(), x.data(), y_parallel.data(), m, n);
    kernels::matvec(a.data(), x.data(), y_auto.data(), m, n);
    CHECK(y_serial == y_parallel);
    CHECK(y_serial == y_auto);
  }
}

TEST_CASE("matmul reference sanity: identity and associativity") {
  std::mt19937_64 rng(173);
  const std::size_t n = 24;
  const auto a = random_buffer(n * n, rng);
  std::vector<complex> id(n * n, complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1.0;
  std::vector<complex> out(n * n);
  kernels::matmul_serial(a.data(), id.data(), out.data(), n, n, n);
  CHECK(out == a);
  kernels::matmul_serial(id.data(), a.data(), out.data(), n, n, n);
  CHECK(out == a);
}
