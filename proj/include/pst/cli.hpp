#pragma once

// Subcommands of the `pstchain` tool. The entry point is exposed as a library
// function so tests can drive the tool in-process.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pst/dynamics.hpp"
#include "pst/jacobi.hpp"

namespace pst::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitBadArguments = 2,
  kExitNumerical = 3,
};

/// Unreadable or malformed input file.
class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Output file could not be written.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A chain as read from an input file: spectrum, spectral data and matrix.
struct Chain {
  std::vector<double> spectrum;
  SpectralData spectral;
  JacobiMatrix matrix;
};

/// Accepts a JSON array of eigenvalues, a document with `spectrum` and
/// `weights` (and optionally `matrix`), or a document with only `matrix`.
Chain load_chain(const std::string& path);

struct Analysis {
  PersymmetryReport persymmetry;
  PstCertificate pst;
  std::optional<EseReport> ese;
};

/// PST requires the spectral condition and a persymmetric matrix; ESE is only
/// analysed when PST holds.
Analysis analyze_chain(const Chain& chain, double pst_tol, std::optional<double> ese_tol);

/// Boundary amplitudes on a uniform grid. Uses the persymmetric sign pattern
/// for x_N when the matrix is persymmetric and full eigenvectors otherwise.
AmplitudeSeries chain_series(const Chain& chain, double t0, double t1, std::size_t steps);

/// Writes `content` to `path` through a temporary file so that a failed run
/// never leaves a partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

/// Parses argv, dispatches, prints the run manifest to `out` and diagnostics
/// to `err`. Returns one of the ExitCode values.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pst::cli
