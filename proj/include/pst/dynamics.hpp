#pragma once

// Perfect state transfer from the spectrum side, and early state exclusion:
// zeros of x_0(t) strictly before the earliest transfer time.

#include <cstddef>
#include <optional>
#include <vector>

#include "pst/inverse_spectral.hpp"
#include "pst/jacobi.hpp"

namespace pst {

enum class PstStatus {
  transfer,     ///< every gap is an odd multiple of a common unit
  no_transfer,  ///< the gaps are commensurate but some quotient is even
  undecidable,  ///< no common unit with odd quotients up to kMaxOddInteger
};

inline constexpr long kMaxOddInteger = 10000;

struct PstCertificate {
  PstStatus status = PstStatus::undecidable;
  std::optional<double> transfer_time;  ///< earliest T0
  std::vector<long> gap_odd_integers;   ///< n_k with gap_k = (2 n_k + 1) pi / T0
  std::optional<Complex> phase;         ///< x_N(T0) for the persymmetric realisation

  bool has_pst() const noexcept { return status == PstStatus::transfer; }
};

inline constexpr double kDefaultPstTolerance = 1e-8;
inline constexpr double kDefaultZeroTolerance = 1e-10;
inline constexpr double kTransferExclusionMargin = 1e-6;

/// Largest delta with every gap g_k = (2 n_k + 1) delta to within tol * g_k.
/// Candidate units are g_min / q, q = 1, 2, ...; the first q at which all gaps
/// are integer multiples decides: all quotients odd means transfer at
/// T0 = pi / delta, any even quotient rules transfer out.
PstCertificate detect_pst(const SpectrumRequest& req, double tol = kDefaultPstTolerance);

struct EseZero {
  double time;
  double residual;           ///< |x_0| at the refined time
  double last_site_modulus;  ///< |x_N| at the refined time
};

struct EseReport {
  std::vector<EseZero> zeros;
  /// Times where x_0 demonstrably crosses zero but refinement stalled above
  /// the tolerance.
  std::vector<double> unresolved;
  /// Zeros with |x_N| >= 1 - 1e-6; impossible for an earliest-T0 certificate.
  std::size_t early_pst_anomalies = 0;
  double scan_resolution = 0.0;
  double tolerance = 0.0;
  /// Start of the window before T0 in which |x_0| is below the double
  /// precision noise floor. x_0 has a zero of order N at T0, so for long
  /// chains this window is not empty and no zero inside it can be resolved.
  std::optional<double> noise_window_start;

  bool has_ese() const noexcept { return !zeros.empty(); }
};

/// Zeros of |x_0| on (eps, T0 - eps), eps = 1e-6 T0, by a uniform scan of step
/// min(T0, 2 pi / (lambda_N - lambda_0)) / 256 and golden-section refinement of
/// each local minimum.
EseReport detect_ese(const SpectralData& sd, const PstCertificate& cert,
                     double tol = kDefaultZeroTolerance);

struct OverlapMinimum {
  double min_value;
  double argmin;
};

/// Global minimum of |x_0(t)| over [t0, t1].
OverlapMinimum min_overlap(const SpectralData& sd, double t0, double t1);

}  // namespace pst
