#include "pst/polyfamilies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pst {

namespace {

constexpr double kHalfIntegerTolerance = 1e-9;

// Base-2 radical inverse of i, in (0, 1) for i >= 1.
double van_der_corput(std::uint64_t i) noexcept {
  double v = 0.0, scale = 0.5;
  while (i != 0) {
    if (i & 1U) v += scale;
    i >>= 1U;
    scale *= 0.5;
  }
  return v;
}

}  // namespace

ChebyshevCombination::ChebyshevCombination(std::map<int, double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty())
    throw std::invalid_argument("ChebyshevCombination: no coefficients");
  if (coefficients_.begin()->first < 0)
    throw std::invalid_argument("ChebyshevCombination: negative degree");
  if (coefficients_.begin()->second == 0.0)
    throw std::invalid_argument("ChebyshevCombination: lowest-degree coefficient must be non-zero");
}

double ChebyshevCombination::coefficient(int degree) const noexcept {
  const auto it = coefficients_.find(degree);
  return it == coefficients_.end() ? 0.0 : it->second;
}

double ChebyshevCombination::operator()(double x) const noexcept {
  const int top = highest_degree();
  double b1 = 0.0, b2 = 0.0;
  for (int k = top; k >= 1; --k) {
    const double b0 = coefficient(k) + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coefficient(0) + x * b1 - b2;
}

JacobiMatrix krawtchouk_chain(int N) {
  if (N < 1) throw std::domain_error("krawtchouk_chain: N must be >= 1");
  std::vector<double> diag(static_cast<std::size_t>(N) + 1, 0.0);
  std::vector<double> offdiag(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k)
    offdiag[static_cast<std::size_t>(k)] = std::sqrt(static_cast<double>(k + 1) * (N - k)) / 2.0;
  return JacobiMatrix(std::move(diag), std::move(offdiag));
}

double monic_krawtchouk(int N, int n, double x) {
  if (N < 1 || n < 0 || n > N + 1)
    throw std::domain_error("monic_krawtchouk: need N >= 1 and 0 <= n <= N+1");
  double prev = 0.0, cur = 1.0;
  for (int j = 0; j < n; ++j) {
    const double c = static_cast<double>(N + 1 - j) * j / 4.0;
    const double next = (x - N / 2.0) * cur - c * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

SpectrumRequest gap_family_spectrum(int n, int m) {
  if (n < 2) throw std::domain_error("gap_family_spectrum: n must be >= 2");
  if (m < 1) throw std::domain_error("gap_family_spectrum: m must be >= 1");
  const auto size = static_cast<std::size_t>(2 * n);
  std::vector<double> lam(size);
  for (int k = 0; k < n; ++k) {
    const double upper = (2.0 * m + 2.0 * k + 1.0) / 2.0;
    lam[static_cast<std::size_t>(n + k)] = upper;
    lam[static_cast<std::size_t>(n - 1 - k)] = -upper;
  }
  return SpectrumRequest(std::move(lam));
}

JacobiMatrix example_4x4() {
  const double corner = std::sqrt(15.0) / 2.0;
  return JacobiMatrix({0.0, 0.0, 0.0, 0.0}, {corner, 1.0, corner});
}

FourByFourAmplitudes closed_form_4x4(double t) noexcept {
  const double c = std::cos(t / 2.0);
  const double s = std::sin(t / 2.0);
  return {c * c * c * (3.0 * std::cos(t) - 2.0),
          std::abs(s * s * s * (3.0 * std::cos(t) + 2.0))};
}

double closed_form_krawtchouk_x0(int N, double t) {
  if (N < 1) throw std::domain_error("closed_form_krawtchouk_x0: N must be >= 1");
  return std::pow(std::cos(t / 2.0), N);
}

double closed_form_surgery_x0(int N, double t) {
  if (N < 3 || N % 2 == 0)
    throw std::domain_error("closed_form_surgery_x0: N must be odd and >= 3");
  const double half = (N + 1) / 2.0;
  return ((half + 1.0) * std::cos(t) - half) * std::pow(std::cos(t / 2.0), N);
}

double chebyshev_eval(int j, double x) {
  if (j < 0) throw std::domain_error("chebyshev_eval: negative degree");
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("chebyshev_eval: |x| must be <= 1");
  if (j == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < j; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

ChebyshevCombination amplitude_as_chebyshev(const SpectralData& sd) {
  const auto& lam = sd.eigenvalues();
  const auto& w = sd.weights();
  const std::size_t n = lam.size();
  auto reject = [](const std::string& why) {
    throw std::invalid_argument("amplitude_as_chebyshev: not Chebyshev-representable: " + why);
  };
  if (n % 2 != 0) reject("odd number of eigenvalues");
  std::map<int, double> coeffs;
  for (std::size_t s = 0; s < n / 2; ++s) {
    const double lo = lam[s];
    const double hi = lam[n - 1 - s];
    if (std::abs(lo + hi) > kHalfIntegerTolerance) reject("spectrum not symmetric about 0");
    if (std::abs(w[s] - w[n - 1 - s]) > kHalfIntegerTolerance) reject("weights not symmetric");
    const double twice = 2.0 * hi;
    const double odd = std::round(twice);
    if (std::abs(twice - odd) > 2.0 * kHalfIntegerTolerance ||
        static_cast<long long>(odd) % 2 == 0)
      reject("eigenvalue " + std::to_string(hi) + " is not an odd half-integer");
    coeffs[static_cast<int>(odd)] += w[s] + w[n - 1 - s];
  }
  return ChebyshevCombination(std::move(coeffs));
}

std::size_t count_sign_changes(const ChebyshevCombination& c, std::size_t samples) {
  if (samples < 64) throw std::invalid_argument("count_sign_changes: need at least 64 samples");
  std::vector<double> xs(samples);
  for (std::size_t i = 0; i < samples; ++i) xs[i] = 2.0 * van_der_corput(i + 1) - 1.0;
  std::sort(xs.begin(), xs.end());

  std::size_t changes = 0;
  int last_sign = 0;
  for (double x : xs) {
    const double q = c(x);
    const int sign = (q > 0.0) - (q < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

}  // namespace pst
