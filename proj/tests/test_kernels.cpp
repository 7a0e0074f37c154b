#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "pst/kernels.hpp"
#include "pst/polyfamilies.hpp"

using namespace pst;

TEST_CASE("sturm_count on the Krawtchouk chain counts s - N/2 below x") {
  const auto J = krawtchouk_chain(9);
  for (int s = 0; s <= 9; ++s) {
    const double below = s - 4.5 - 0.25;
    CHECK(kernels::sturm_count(J.diag(), J.offdiag(), below) == static_cast<std::size_t>(s));
  }
  CHECK(kernels::sturm_count(J.diag(), J.offdiag(), 100.0) == 10);
}

TEST_CASE("parallel bisection matches the serial reference bitwise") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a(-4.0, 4.0), b(0.1, 2.5);
  for (std::size_t n : {1, 2, 7, 33, 200}) {
    std::vector<double> diag(n), off(n - 1);
    for (auto& x : diag) x = a(rng);
    for (auto& x : off) x = b(rng);
    std::vector<double> serial(n), parallel(n);
    kernels::bisect_eigenvalues_serial(diag, off, serial);
    kernels::bisect_eigenvalues_parallel(diag, off, parallel);
    CHECK(serial == parallel);
    for (std::size_t k = 1; k < n; ++k) CHECK(serial[k] > serial[k - 1]);
  }
}

TEST_CASE("parallel amplitude grid matches the serial reference bitwise") {
  const std::vector<double> lam = {-3.5, -2.5, -1.5, 1.5, 2.5, 3.5};
  const std::vector<double> w = {0.05, 0.15, 0.3, 0.3, 0.15, 0.05};
  std::vector<double> times(5001);
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = 0.001 * static_cast<double>(i);
  for (bool alternate : {false, true}) {
    std::vector<std::complex<double>> serial(times.size()), parallel(times.size());
    kernels::amplitude_grid_serial(lam, w, alternate, times, serial);
    kernels::amplitude_grid_parallel(lam, w, alternate, times, parallel);
    CHECK(serial == parallel);
  }
}

TEST_CASE("amplitude_sum sign pattern") {
  const std::vector<double> lam = {-1.0, 1.0};
  const std::vector<double> w = {0.5, 0.5};
  // N = 1: signs (-1)^{1+s} = (-1, +1): x_N(t) = -i sin t.
  const auto z = kernels::amplitude_sum(lam, w, true, 0.3);
  CHECK(std::abs(z - std::complex<double>(0.0, -std::sin(0.3))) < 1e-15);
}
