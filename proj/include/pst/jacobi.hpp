#pragma once

// Core value types for nearest-neighbour chains: the Jacobi matrix, its
// spectral data (eigenvalues and first-component weights) and evaluation of
// the boundary transfer amplitudes x_0(t), x_N(t).

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pst {

using Complex = std::complex<double>;

/// Thrown when the tridiagonal eigensolver cannot deliver a simple spectrum.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  /// Index of the offending eigenvalue.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Real symmetric tridiagonal matrix with strictly positive off-diagonal.
///
/// Sites are numbered 0..N, so a chain of order N+1 stores N+1 diagonal
/// entries a_k and N off-diagonal entries b_k.
class JacobiMatrix {
 public:
  JacobiMatrix(std::vector<double> diag, std::vector<double> offdiag);

  std::size_t n_sites() const noexcept { return diag_.size(); }
  const std::vector<double>& diag() const noexcept { return diag_; }
  const std::vector<double>& offdiag() const noexcept { return offdiag_; }

  /// Infinity norm (max absolute row sum).
  double norm() const noexcept;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
};

/// Simple ordered eigenvalues with positive weights summing to one.
class SpectralData {
 public:
  SpectralData(std::vector<double> eigenvalues, std::vector<double> weights);

  std::size_t size() const noexcept { return eigenvalues_.size(); }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  static constexpr double kWeightSumTolerance = 1e-12;
  static constexpr double kRelativeGapTolerance = 1e-10;

 private:
  std::vector<double> eigenvalues_;
  std::vector<double> weights_;
};

struct PersymmetryReport {
  bool is_persymmetric = false;
  double max_diag_asymmetry = 0.0;
  double max_offdiag_asymmetry = 0.0;
  double tolerance = 0.0;
};

struct AmplitudeSeries {
  std::vector<double> times;
  std::vector<Complex> x0;
  std::vector<Complex> xN;
};

enum class Site { first, last };

/// Full eigensystem: eigenvalues ascending, eigenvectors[s] is the unit
/// eigenvector for eigenvalues[s] normalised so that its first component is
/// positive.
struct Eigensystem {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
};

/// Sturm bisection for the eigenvalues, twisted-factorisation recurrence for
/// the eigenvectors. Throws SolverError if two computed eigenvalues are closer
/// than 1e-10 * max|lambda|.
Eigensystem eigensystem(const JacobiMatrix& J);

SpectralData eigendecompose(const JacobiMatrix& J);

PersymmetryReport check_persymmetry(const JacobiMatrix& J, double tol);

/// x_0(t) for Site::first. For Site::last the persymmetric sign pattern
/// (-1)^{N+s} is used, so the result is only meaningful when the spectral
/// data belongs to a persymmetric matrix.
Complex amplitude(const SpectralData& sd, Site site, double t);

/// Uniform grid on [t0, t1] with `steps` points, both ends included.
AmplitudeSeries amplitude_series(const SpectralData& sd, double t0, double t1,
                                 std::size_t steps);

/// e^{-iJt} e_0, every component.
std::vector<Complex> full_evolution_column(const JacobiMatrix& J, double t);

/// Largest |lambda| over the spectrum; used as the scale for relative tests.
double spectral_radius(std::span<const double> eigenvalues) noexcept;

}  // namespace pst
