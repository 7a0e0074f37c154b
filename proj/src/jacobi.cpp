#include "pst/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pst/kernels.hpp"

namespace pst {

JacobiMatrix::JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag)
    : diag_(std::move(diag)), offdiag_(std::move(offdiag)) {
  if (diag_.empty()) throw std::invalid_argument("JacobiMatrix: no sites");
  if (offdiag_.size() + 1 != diag_.size())
    throw std::invalid_argument("JacobiMatrix: offdiag must have n_sites - 1 entries");
  for (double a : diag_)
    if (!std::isfinite(a)) throw std::invalid_argument("JacobiMatrix: non-finite diagonal");
  for (std::size_t k = 0; k < offdiag_.size(); ++k)
    if (!(offdiag_[k] > 0.0) || !std::isfinite(offdiag_[k]))
      throw std::invalid_argument("JacobiMatrix: offdiag[" + std::to_string(k) +
                                  "] must be strictly positive");
}

double JacobiMatrix::norm() const noexcept {
  double best = 0.0;
  const std::size_t n = diag_.size();
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::abs(diag_[i]);
    if (i > 0) r += offdiag_[i - 1];
    if (i + 1 < n) r += offdiag_[i];
    best = std::max(best, r);
  }
  return best;
}

double spectral_radius(std::span<const double> eigenvalues) noexcept {
  double r = 0.0;
  for (double x : eigenvalues) r = std::max(r, std::abs(x));
  return r;
}

SpectralData::SpectralData(std::vector<double> eigenvalues, std::vector<double> weights)
    : eigenvalues_(std::move(eigenvalues)), weights_(std::move(weights)) {
  if (eigenvalues_.empty()) throw std::invalid_argument("SpectralData: empty spectrum");
  if (weights_.size() != eigenvalues_.size())
    throw std::invalid_argument("SpectralData: one weight per eigenvalue required");
  const double scale = spectral_radius(eigenvalues_);
  for (std::size_t s = 1; s < eigenvalues_.size(); ++s)
    if (!(eigenvalues_[s] - eigenvalues_[s - 1] > kRelativeGapTolerance * scale))
      throw std::invalid_argument("SpectralData: eigenvalues not strictly increasing at " +
                                  std::to_string(s));
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0)) throw std::invalid_argument("SpectralData: weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance)
    throw std::invalid_argument("SpectralData: weights must sum to 1");
}

namespace {

// Eigenvector for a (computed) eigenvalue via the twisted factorisation
// J - lambda I = N_r D_r N_r^T: forward pivots d, backward pivots e, twist
// index r minimising |gamma_r|, then the recurrence outward from r.
std::vector<double> twisted_eigenvector(const JacobiMatrix& J, double lambda) {
  const auto& a = J.diag();
  const auto& b = J.offdiag();
  const std::size_t n = a.size();
  std::vector<double> v(n, 1.0);
  if (n == 1) return v;

  const double floor = std::numeric_limits<double>::epsilon() * std::max(J.norm(), 1e-300);
  auto guard = [floor](double x) {
    if (std::abs(x) < floor) return x < 0.0 ? -floor : floor;
    return x;
  };

  std::vector<double> d(n), e(n);
  d[0] = guard(a[0] - lambda);
  for (std::size_t i = 1; i < n; ++i)
    d[i] = guard((a[i] - lambda) - b[i - 1] * b[i - 1] / d[i - 1]);
  e[n - 1] = guard(a[n - 1] - lambda);
  for (std::size_t i = n - 1; i-- > 0;)
    e[i] = guard((a[i] - lambda) - b[i] * b[i] / e[i + 1]);

  std::size_t r = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double gamma = std::abs(d[i] + e[i] - (a[i] - lambda));
    if (gamma < best) {
      best = gamma;
      r = i;
    }
  }

  v[r] = 1.0;
  for (std::size_t k = r; k-- > 0;) v[k] = -b[k] * v[k + 1] / d[k];
  for (std::size_t k = r + 1; k < n; ++k) v[k] = -b[k - 1] * v[k - 1] / e[k];

  // Rescale before the norm to keep the sum of squares finite.
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  double norm2 = 0.0;
  for (double& x : v) {
    x /= vmax;
    norm2 += x * x;
  }
  const double inv = (v[0] < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2);
  for (double& x : v) x *= inv;
  return v;
}

}  // namespace

Eigensystem eigensystem(const JacobiMatrix& J) {
  const std::size_t n = J.n_sites();
  Eigensystem es;
  es.eigenvalues.resize(n);
  kernels::bisect_eigenvalues_parallel(J.diag(), J.offdiag(), es.eigenvalues);

  const double scale = std::max(spectral_radius(es.eigenvalues), J.norm());
  for (std::size_t s = 1; s < n; ++s)
    if (es.eigenvalues[s] - es.eigenvalues[s - 1] < 1e-10 * scale)
      throw SolverError("eigensolver: eigenvalues " + std::to_string(s - 1) + " and " +
                            std::to_string(s) + " are numerically degenerate",
                        s);

  es.eigenvectors.resize(n);
  std::size_t cluster_start = 0;
  for (std::size_t s = 0; s < n; ++s) {
    auto& v = es.eigenvectors[s];
    v = twisted_eigenvector(J, es.eigenvalues[s]);
    for (double x : v)
      if (!std::isfinite(x)) throw SolverError("eigensolver: eigenvector assembly failed", s);
    // close eigenvalues: Gram-Schmidt (twice) against the rest of the cluster
    if (s == 0 || es.eigenvalues[s] - es.eigenvalues[s - 1] > 1e-3 * scale) cluster_start = s;
    if (cluster_start == s) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t q = cluster_start; q < s; ++q) {
        const auto& u = es.eigenvectors[q];
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += u[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * u[i];
      }
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    const double inv = (v[0] < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2);
    for (double& x : v) x *= inv;
  }
  return es;
}

SpectralData eigendecompose(const JacobiMatrix& J) {
  Eigensystem es = eigensystem(J);
  std::vector<double> weights(es.eigenvalues.size());
  for (std::size_t s = 0; s < weights.size(); ++s)
    weights[s] = es.eigenvectors[s][0] * es.eigenvectors[s][0];
  for (std::size_t s = 0; s < weights.size(); ++s)
    if (!(weights[s] > 0.0))
      throw SolverError("eigensolver: vanishing first component", s);
  // loss of orthogonality between close eigenvectors shows up here
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-8) throw SolverError("eigensolver: first components not normalised", 0);
  for (double& w : weights) w /= total;
  return SpectralData(std::move(es.eigenvalues), std::move(weights));
}

PersymmetryReport check_persymmetry(const JacobiMatrix& J, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_persymmetry: tol must be positive");
  PersymmetryReport rep;
  rep.tolerance = tol;
  const auto& a = J.diag();
  const auto& b = J.offdiag();
  for (std::size_t k = 0; k < a.size(); ++k)
    rep.max_diag_asymmetry = std::max(rep.max_diag_asymmetry, std::abs(a[k] - a[a.size() - 1 - k]));
  for (std::size_t l = 0; l < b.size(); ++l)
    rep.max_offdiag_asymmetry =
        std::max(rep.max_offdiag_asymmetry, std::abs(b[l] - b[b.size() - 1 - l]));
  rep.is_persymmetric = rep.max_diag_asymmetry <= tol && rep.max_offdiag_asymmetry <= tol;
  return rep;
}

Complex amplitude(const SpectralData& sd, Site site, double t) {
  return kernels::amplitude_sum(sd.eigenvalues(), sd.weights(), site == Site::last, t);
}

AmplitudeSeries amplitude_series(const SpectralData& sd, double t0, double t1,
                                 std::size_t steps) {
  if (!(t0 < t1)) throw std::invalid_argument("amplitude_series: requires t0 < t1");
  if (steps < 2) throw std::invalid_argument("amplitude_series: requires steps >= 2");
  AmplitudeSeries out;
  out.times.resize(steps);
  const double dt = (t1 - t0) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out.times[i] = t0 + dt * static_cast<double>(i);
  out.times.back() = t1;
  out.x0.resize(steps);
  out.xN.resize(steps);
  kernels::amplitude_grid_parallel(sd.eigenvalues(), sd.weights(), false, out.times, out.x0);
  kernels::amplitude_grid_parallel(sd.eigenvalues(), sd.weights(), true, out.times, out.xN);
  return out;
}

std::vector<Complex> full_evolution_column(const JacobiMatrix& J, double t) {
  const Eigensystem es = eigensystem(J);
  const std::size_t n = J.n_sites();
  std::vector<Complex> column(n, Complex(0.0, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    const auto& v = es.eigenvectors[s];
    const Complex phase = std::polar(1.0, -es.eigenvalues[s] * t);
    for (std::size_t j = 0; j < n; ++j) column[j] += v[0] * v[j] * phase;
  }
  return column;
}

}  // namespace pst
