#include "pst/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "pst/kernels.hpp"

namespace pst {

namespace {

constexpr std::size_t kScanDivisions = 256;
constexpr double kEdgeFraction = 1e-6;

double modulus_x0(const SpectralData& sd, double t) {
  return std::abs(kernels::amplitude_sum(sd.eigenvalues(), sd.weights(), false, t));
}

// Golden-section minimisation of |x_0| on [a, b].
double golden_minimum(const SpectralData& sd, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = modulus_x0(sd, c);
  double fd = modulus_x0(sd, d);
  for (int it = 0; it < 400; ++it) {
    const double width = b - a;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)))
      break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = modulus_x0(sd, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = modulus_x0(sd, d);
    }
  }
  return fc <= fd ? c : d;
}

std::vector<double> uniform_grid(double t0, double t1, double max_step) {
  const auto intervals =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil((t1 - t0) / max_step)));
  std::vector<double> ts(intervals + 1);
  const double dt = (t1 - t0) / static_cast<double>(intervals);
  for (std::size_t i = 0; i <= intervals; ++i) ts[i] = t0 + dt * static_cast<double>(i);
  ts.back() = t1;
  return ts;
}

std::vector<double> modulus_grid(const SpectralData& sd, const std::vector<double>& ts) {
  std::vector<Complex> values(ts.size());
  kernels::amplitude_grid_parallel(sd.eigenvalues(), sd.weights(), false, ts, values);
  std::vector<double> f(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) f[i] = std::abs(values[i]);
  return f;
}

bool is_local_minimum(const std::vector<double>& f, std::size_t i) {
  return f[i] <= f[i - 1] && f[i] <= f[i + 1] && (f[i] < f[i - 1] || f[i] < f[i + 1]);
}

double scan_step(const SpectralData& sd, double span) {
  const auto& lam = sd.eigenvalues();
  const double width = lam.back() - lam.front();
  double base = span;
  if (width > 0.0) base = std::min(base, 2.0 * std::numbers::pi / width);
  return base / static_cast<double>(kScanDivisions);
}

}  // namespace

PstCertificate detect_pst(const SpectrumRequest& req, double tol) {
  if (!(tol > 0.0 && tol <= 1e-4))
    throw std::invalid_argument("detect_pst: tol must lie in (0, 1e-4]");
  const auto& lam = req.eigenvalues();
  const std::size_t gaps = lam.size() - 1;
  std::vector<double> g(gaps);
  for (std::size_t k = 0; k < gaps; ++k) g[k] = lam[k + 1] - lam[k];
  const double gmin = *std::min_element(g.begin(), g.end());

  PstCertificate cert;
  const long max_q = 2 * kMaxOddInteger + 1;
  std::vector<long> quotient(gaps);
  for (long q = 1; q <= max_q; ++q) {
    const double unit = gmin / static_cast<double>(q);
    bool commensurate = true;
    for (std::size_t k = 0; k < gaps && commensurate; ++k) {
      const double r = g[k] / unit;
      const double c = std::round(r);
      commensurate = c >= 1.0 && std::abs(r - c) <= tol * r;
      quotient[k] = static_cast<long>(c);
    }
    if (!commensurate) continue;

    const bool all_odd =
        std::all_of(quotient.begin(), quotient.end(), [](long c) { return c % 2 == 1; });
    if (!all_odd) {
      cert.status = PstStatus::no_transfer;
      return cert;
    }
    long total = 0;
    cert.gap_odd_integers.resize(gaps);
    for (std::size_t k = 0; k < gaps; ++k) {
      total += quotient[k];
      cert.gap_odd_integers[k] = (quotient[k] - 1) / 2;
    }
    cert.status = PstStatus::transfer;
    // Least-squares unit over all gaps: span / sum of quotients.
    const double delta = (lam.back() - lam.front()) / static_cast<double>(total);
    cert.transfer_time = std::numbers::pi / delta;
    if (lam.size() <= kMaxSites)
      cert.phase = amplitude(persymmetric_weights(req), Site::last, *cert.transfer_time);
    return cert;
  }
  cert.status = PstStatus::undecidable;
  return cert;
}

EseReport detect_ese(const SpectralData& sd, const PstCertificate& cert, double tol) {
  if (!cert.has_pst() || !cert.transfer_time)
    throw std::invalid_argument("detect_ese: certificate has no perfect state transfer");
  if (!(tol > 0.0)) throw std::invalid_argument("detect_ese: tol must be positive");
  const auto& lam = sd.eigenvalues();
  const double T0 = *cert.transfer_time;
  if (cert.gap_odd_integers.size() + 1 != lam.size())
    throw std::invalid_argument("detect_ese: spectral data size does not match certificate");
  for (std::size_t k = 0; k + 1 < lam.size(); ++k) {
    const double gap = lam[k + 1] - lam[k];
    const double expected =
        static_cast<double>(2 * cert.gap_odd_integers[k] + 1) * std::numbers::pi / T0;
    if (std::abs(gap - expected) > 1e-6 * gap)
      throw std::invalid_argument("detect_ese: spectral data inconsistent with certificate at gap " +
                                  std::to_string(k));
  }

  EseReport rep;
  rep.tolerance = tol;
  rep.scan_resolution = scan_step(sd, T0);
  const double edge = kEdgeFraction * T0;
  const std::vector<double> ts = uniform_grid(edge, T0 - edge, rep.scan_resolution);
  const std::vector<double> f = modulus_grid(sd, ts);
  const std::size_t M = ts.size();

  // Rounding noise of the spectral sum; weights sum to one.
  const double noise = 16.0 * static_cast<double>(lam.size()) *
                       std::numeric_limits<double>::epsilon();
  const double floor = 1e3 * noise;
  std::size_t window = M;
  while (window > 0 && f[window - 1] <= floor) --window;
  if (window < M) rep.noise_window_start = ts[window];

  for (std::size_t i = 1; i + 1 < M && i < window; ++i) {
    if (!is_local_minimum(f, i)) continue;
    const double a = ts[i - 1], b = ts[i + 1];
    const double t = golden_minimum(sd, a, b);
    const double residual = modulus_x0(sd, t);
    if (residual < tol) {
      const double last = std::abs(amplitude(sd, Site::last, t));
      if (last >= 1.0 - kTransferExclusionMargin) {
        ++rep.early_pst_anomalies;
        continue;
      }
      if (!rep.zeros.empty() && t - rep.zeros.back().time < 0.5 * rep.scan_resolution) {
        if (residual < rep.zeros.back().residual) rep.zeros.back() = {t, residual, last};
        continue;
      }
      rep.zeros.push_back({t, residual, last});
      continue;
    }
    // Not refined below tol: keep it only if x_0 visibly passes through zero.
    const Complex xa = amplitude(sd, Site::first, a);
    const Complex xb = amplitude(sd, Site::first, b);
    const bool crossing = std::real(xa * std::conj(xb)) < 0.0 &&
                          residual < 1e-3 * std::min(std::abs(xa), std::abs(xb));
    if (crossing) rep.unresolved.push_back(t);
  }
  return rep;
}

OverlapMinimum min_overlap(const SpectralData& sd, double t0, double t1) {
  if (!(t0 < t1)) throw std::invalid_argument("min_overlap: requires t0 < t1");
  const std::vector<double> ts = uniform_grid(t0, t1, scan_step(sd, t1 - t0));
  const std::vector<double> f = modulus_grid(sd, ts);
  OverlapMinimum best{f.front(), ts.front()};
  if (f.back() < best.min_value) best = {f.back(), ts.back()};
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (f[i] < best.min_value) best = {f[i], ts[i]};
    if (!is_local_minimum(f, i)) continue;
    const double t = golden_minimum(sd, ts[i - 1], ts[i + 1]);
    const double v = modulus_x0(sd, t);
    if (v < best.min_value) best = {v, t};
  }
  return best;
}

}  // namespace pst
