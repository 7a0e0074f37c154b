#pragma once

// Persymmetric inverse eigenvalue problem: given a simple spectrum, build the
// unique persymmetric Jacobi matrix that has it.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "pst/jacobi.hpp"

namespace pst {

/// Strictly increasing list of at least two reals (relative gap > 1e-10).
class SpectrumRequest {
 public:
  explicit SpectrumRequest(std::vector<double> eigenvalues);

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  std::vector<double> eigenvalues_;
};

class ReconstructionError : public std::runtime_error {
 public:
  ReconstructionError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Largest supported chain: N = 40, i.e. 41 sites.
inline constexpr std::size_t kMaxSites = 41;

/// w_s proportional to (-1)^{N+s} / prod_{k != s} (lambda_s - lambda_k),
/// evaluated in log space and normalised to sum to one.
SpectralData persymmetric_weights(const SpectrumRequest& req);

/// Stieltjes/Lanczos tridiagonalisation of diag(lambda) started from
/// (sqrt w_0, ..., sqrt w_N) with full reorthogonalisation.
///
/// When the raw result is persymmetric to within 1e-6 it is symmetrised about
/// the anti-diagonal to remove round-off; otherwise it is returned unchanged.
JacobiMatrix reconstruct_jacobi(const SpectralData& sd);

/// persymmetric_weights followed by reconstruct_jacobi. Throws
/// ReconstructionError when the result is not persymmetric to within 1e-6.
JacobiMatrix reconstruct_persymmetric(const SpectrumRequest& req);

/// Unit-gap symmetric spectrum of order N+3 with the two inner-most
/// eigenvalues +-1/2 removed. N must be odd and >= 3.
SpectrumRequest surgery_spectrum(int N);

}  // namespace pst
