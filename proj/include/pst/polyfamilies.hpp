#pragma once

// Krawtchouk (p = 1/2) and Chebyshev machinery: named chain constructions,
// closed-form amplitudes used as oracles, and the Chebyshev picture of x_0(t)
// for half-integer symmetric spectra.

#include <cstddef>
#include <map>

#include "pst/inverse_spectral.hpp"
#include "pst/jacobi.hpp"

namespace pst {

/// Sparse combination Q(x) = sum_j A_j T_j(x) with non-zero lowest coefficient.
class ChebyshevCombination {
 public:
  explicit ChebyshevCombination(std::map<int, double> coefficients);

  const std::map<int, double>& coefficients() const noexcept { return coefficients_; }
  int lowest_degree() const noexcept { return coefficients_.begin()->first; }
  int highest_degree() const noexcept { return coefficients_.rbegin()->first; }
  double coefficient(int degree) const noexcept;

  /// Clenshaw summation.
  double operator()(double x) const noexcept;

 private:
  std::map<int, double> coefficients_;
};

/// Zero-diagonal chain with b_k = sqrt((k+1)(N-k))/2, k = 0..N-1.
JacobiMatrix krawtchouk_chain(int N);

/// Monic Krawtchouk polynomial K_n(x; 1/2, N) by forward recurrence,
/// K_{n+1} = (x - N/2) K_n - (N+1-n) n / 4 K_{n-1}.
double monic_krawtchouk(int N, int n, double x);

/// Order-2n symmetric spectrum with unit gaps except a middle gap of 2m+1.
SpectrumRequest gap_family_spectrum(int n, int m);

/// The 4x4 chain with diag 0 and offdiag (sqrt(15)/2, 1, sqrt(15)/2).
JacobiMatrix example_4x4();

struct FourByFourAmplitudes {
  double x0;
  double x3_modulus;
};

/// x_0(t) = cos^3(t/2)(3 cos t - 2), |x_3(t)| = |sin^3(t/2)(3 cos t + 2)|.
FourByFourAmplitudes closed_form_4x4(double t) noexcept;

/// cos^N(t/2).
double closed_form_krawtchouk_x0(int N, double t);

/// ((N+1)/2 + 1) cos t - (N+1)/2) cos^N(t/2) for odd N >= 3.
double closed_form_surgery_x0(int N, double t);

/// T_j(x) by the three-term recurrence; requires |x| <= 1.
double chebyshev_eval(int j, double x);

/// x_0(t) written as a combination of odd Chebyshev polynomials in
/// x = cos(t/2). Requires a spectrum symmetric about zero made of odd
/// half-integers (matching tolerance 1e-9) with symmetric weights.
ChebyshevCombination amplitude_as_chebyshev(const SpectralData& sd);

inline constexpr std::size_t kDefaultSignSamples = 8192;

/// Sign changes of Q over `samples` interior points of (-1, 1). The points are
/// the first `samples` terms of the base-2 van der Corput sequence mapped to
/// (-1, 1), so increasing `samples` only ever refines the point set; for
/// samples = 2^L - 1 the set is the uniform grid of spacing 2^{1-L}.
std::size_t count_sign_changes(const ChebyshevCombination& c,
                               std::size_t samples = kDefaultSignSamples);

}  // namespace pst
