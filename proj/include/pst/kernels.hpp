#pragma once

// Data-parallel inner loops. Every kernel has a serial reference version and an
// OpenMP version; both compute each output element with the same arithmetic,
// so their results are bitwise identical and tests compare them exactly.

#include <complex>
#include <cstddef>
#include <span>

namespace pst::kernels {

/// Number of eigenvalues of the tridiagonal matrix strictly below x
/// (negative pivots of the LDL^T factorisation of J - xI).
std::size_t sturm_count(std::span<const double> diag, std::span<const double> offdiag,
                        double x) noexcept;

/// Bisects every eigenvalue to full working precision; `out` has size n_sites.
void bisect_eigenvalues_serial(std::span<const double> diag,
                               std::span<const double> offdiag, std::span<double> out);
void bisect_eigenvalues_parallel(std::span<const double> diag,
                                 std::span<const double> offdiag, std::span<double> out);

/// out[i] = sum_s sign_s * weights[s] * exp(-i * eigenvalues[s] * times[i]),
/// where sign_s = (-1)^{N+s} when `alternate` is set and 1 otherwise.
void amplitude_grid_serial(std::span<const double> eigenvalues,
                           std::span<const double> weights, bool alternate,
                           std::span<const double> times,
                           std::span<std::complex<double>> out);
void amplitude_grid_parallel(std::span<const double> eigenvalues,
                             std::span<const double> weights, bool alternate,
                             std::span<const double> times,
                             std::span<std::complex<double>> out);

/// Single-point version shared by the grid kernels.
std::complex<double> amplitude_sum(std::span<const double> eigenvalues,
                                   std::span<const double> weights, bool alternate,
                                   double t) noexcept;

/// Maximum number of OpenMP threads available (1 when built without OpenMP).
int max_threads() noexcept;

}  // namespace pst::kernels
