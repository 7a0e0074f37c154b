#include "pst/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pst::kernels {

namespace {

// Smallest pivot magnitude allowed in the Sturm recurrence; a zero pivot is
// replaced by -kPivotFloor so the count stays consistent.
double pivot_floor(std::span<const double> offdiag) noexcept {
  double bmax = 0.0;
  for (double b : offdiag) bmax = std::max(bmax, b * b);
  return std::numeric_limits<double>::min() * std::max(1.0, bmax);
}

void gershgorin(std::span<const double> diag, std::span<const double> offdiag,
                double& lo, double& hi) noexcept {
  const std::size_t n = diag.size();
  lo = std::numeric_limits<double>::infinity();
  hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(offdiag[i - 1]);
    if (i + 1 < n) r += std::abs(offdiag[i]);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(lo), std::abs(hi)) +
                     std::numeric_limits<double>::min();
  lo -= pad;
  hi += pad;
}

double bisect_one(std::span<const double> diag, std::span<const double> offdiag,
                  std::size_t k, double lo, double hi) noexcept {
  // Invariant: count(lo) <= k < count(hi).
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, offdiag, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                        double x) noexcept {
  const double floor = pivot_floor(offdiag);
  std::size_t negatives = 0;
  double d = diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(d) < floor) d = -floor;
    if (d < 0.0) ++negatives;
    if (i + 1 == diag.size()) break;
    d = (diag[i + 1] - x) - offdiag[i] * offdiag[i] / d;
  }
  return negatives;
}

void bisect_eigenvalues_serial(std::span<const double> diag,
                               std::span<const double> offdiag, std::span<double> out) {
  double lo, hi;
  gershgorin(diag, offdiag, lo, hi);
  for (std::size_t k = 0; k < diag.size(); ++k)
    out[k] = bisect_one(diag, offdiag, k, lo, hi);
}

void bisect_eigenvalues_parallel(std::span<const double> diag,
                                 std::span<const double> offdiag, std::span<double> out) {
  double lo, hi;
  gershgorin(diag, offdiag, lo, hi);
  const auto n = static_cast<std::ptrdiff_t>(diag.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k)
    out[k] = bisect_one(diag, offdiag, static_cast<std::size_t>(k), lo, hi);
}

std::complex<double> amplitude_sum(std::span<const double> eigenvalues,
                                   std::span<const double> weights, bool alternate,
                                   double t) noexcept {
  const std::size_t n = eigenvalues.size();
  double re = 0.0, im = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    double w = weights[s];
    // (-1)^{N+s} with N = n - 1
    if (alternate && ((n - 1 + s) & 1U)) w = -w;
    const double phase = eigenvalues[s] * t;
    re += w * std::cos(phase);
    im -= w * std::sin(phase);
  }
  return {re, im};
}

void amplitude_grid_serial(std::span<const double> eigenvalues,
                           std::span<const double> weights, bool alternate,
                           std::span<const double> times,
                           std::span<std::complex<double>> out) {
  for (std::size_t i = 0; i < times.size(); ++i)
    out[i] = amplitude_sum(eigenvalues, weights, alternate, times[i]);
}

void amplitude_grid_parallel(std::span<const double> eigenvalues,
                             std::span<const double> weights, bool alternate,
                             std::span<const double> times,
                             std::span<std::complex<double>> out) {
  const auto n = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[i] = amplitude_sum(eigenvalues, weights, alternate, times[i]);
}

int max_threads() noexcept {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace pst::kernels
