#include "pst/inverse_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pst/polyfamilies.hpp"

namespace pst {

namespace {

constexpr double kPersymmetryRepairLimit = 1e-6;

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

SpectrumRequest::SpectrumRequest(std::vector<double> eigenvalues)
    : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.size() < 2)
    throw std::invalid_argument("SpectrumRequest: at least two eigenvalues required");
  for (double x : eigenvalues_)
    if (!std::isfinite(x)) throw std::invalid_argument("SpectrumRequest: non-finite eigenvalue");
  const double scale = spectral_radius(eigenvalues_);
  for (std::size_t s = 1; s < eigenvalues_.size(); ++s)
    if (!(eigenvalues_[s] - eigenvalues_[s - 1] > 1e-10 * scale))
      throw std::invalid_argument("SpectrumRequest: eigenvalues must be strictly increasing (index " +
                                  std::to_string(s) + ")");
}

SpectralData persymmetric_weights(const SpectrumRequest& req) {
  const auto& lam = req.eigenvalues();
  const std::size_t n = lam.size();
  if (n > kMaxSites)
    throw std::domain_error("persymmetric_weights: at most " + std::to_string(kMaxSites) +
                            " eigenvalues supported");
  const std::size_t N = n - 1;

  std::vector<double> logw(n);
  for (std::size_t s = 0; s < n; ++s) {
    double logabs = 0.0;
    std::size_t negatives = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == s) continue;
      const double diff = lam[s] - lam[k];
      logabs += std::log(std::abs(diff));
      if (diff < 0.0) ++negatives;
    }
    // (-1)^{N+s} times the sign of the product must be positive.
    if ((N + s + negatives) % 2 != 0)
      throw std::logic_error("persymmetric_weights: sign pattern violated at " + std::to_string(s));
    logw[s] = -logabs;
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(n);
  double sum = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    w[s] = std::exp(logw[s] - top);
    sum += w[s];
  }
  for (std::size_t s = 0; s < n; ++s) {
    w[s] /= sum;
    if (!(w[s] > 0.0))
      throw std::logic_error("persymmetric_weights: non-positive weight at " + std::to_string(s));
  }
  return SpectralData(lam, std::move(w));
}

JacobiMatrix reconstruct_jacobi(const SpectralData& sd) {
  const auto& lam = sd.eigenvalues();
  const auto& w = sd.weights();
  const std::size_t n = lam.size();
  const double scale = std::max(spectral_radius(lam), std::numeric_limits<double>::min());

  std::vector<std::vector<double>> q;
  q.reserve(n);
  std::vector<double> start(n);
  for (std::size_t s = 0; s < n; ++s) start[s] = std::sqrt(w[s]);
  {
    const double nrm = std::sqrt(dot(start, start));
    for (double& x : start) x /= nrm;
  }
  q.push_back(std::move(start));

  std::vector<double> diag(n), offdiag(n > 0 ? n - 1 : 0);
  std::vector<double> r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& qk = q[k];
    for (std::size_t s = 0; s < n; ++s) r[s] = lam[s] * qk[s];
    diag[k] = dot(qk, r);
    if (k + 1 == n) break;
    for (std::size_t s = 0; s < n; ++s) {
      r[s] -= diag[k] * qk[s];
      if (k > 0) r[s] -= offdiag[k - 1] * q[k - 1][s];
    }
    // Full reorthogonalisation, applied twice.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qj : q) {
        const double c = dot(qj, r);
        for (std::size_t s = 0; s < n; ++s) r[s] -= c * qj[s];
      }
    const double beta2 = dot(r, r);
    const double beta = std::sqrt(beta2);
    if (!(beta > 1e-13 * scale))
      throw ReconstructionError("reconstruct_jacobi: breakdown at step " + std::to_string(k) +
                                    " (b_k^2 = " + std::to_string(beta2) + ")",
                                k);
    offdiag[k] = beta;
    std::vector<double> next(n);
    for (std::size_t s = 0; s < n; ++s) next[s] = r[s] / beta;
    q.push_back(std::move(next));
  }

  JacobiMatrix raw(diag, offdiag);
  const auto report = check_persymmetry(raw, kPersymmetryRepairLimit * std::max(scale, 1.0));
  if (!report.is_persymmetric) return raw;
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double avg = 0.5 * (diag[k] + diag[n - 1 - k]);
    diag[k] = diag[n - 1 - k] = avg;
  }
  const std::size_t m = offdiag.size();
  for (std::size_t l = 0; l < m / 2; ++l) {
    const double avg = 0.5 * (offdiag[l] + offdiag[m - 1 - l]);
    offdiag[l] = offdiag[m - 1 - l] = avg;
  }
  return JacobiMatrix(std::move(diag), std::move(offdiag));
}

JacobiMatrix reconstruct_persymmetric(const SpectrumRequest& req) {
  JacobiMatrix J = reconstruct_jacobi(persymmetric_weights(req));
  const double scale = std::max(spectral_radius(req.eigenvalues()), 1.0);
  const auto report = check_persymmetry(J, kPersymmetryRepairLimit * scale);
  if (!report.is_persymmetric)
    throw ReconstructionError("reconstruct_persymmetric: result not persymmetric (asymmetry " +
                                  std::to_string(std::max(report.max_diag_asymmetry,
                                                          report.max_offdiag_asymmetry)) +
                                  ")",
                              J.n_sites());
  return J;
}

SpectrumRequest surgery_spectrum(int N) {
  if (N < 3 || N % 2 == 0)
    throw std::domain_error("surgery_spectrum: N must be odd and >= 3, got " + std::to_string(N));
  return gap_family_spectrum((N + 1) / 2, 1);
}

}  // namespace pst
