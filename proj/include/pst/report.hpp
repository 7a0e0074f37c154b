#pragma once

// Serialisation for the command-line tool: JSON documents, CSV series and a
// hand-written SVG plot. All numbers are written with 12 significant digits
// and keys in a fixed order so identical runs give identical bytes.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "pst/dynamics.hpp"
#include "pst/jacobi.hpp"

namespace pst::report {

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits.
double round12(double x);
/// "%.12g"
std::string format12(double x);

Json to_json(const std::vector<double>& values);
Json to_json(const JacobiMatrix& J);
Json to_json(const PersymmetryReport& rep);
Json to_json(const PstCertificate& cert);
Json to_json(const EseReport& rep);

const char* status_name(PstStatus status) noexcept;

/// Columns t, re_x0, im_x0, abs_x0, re_xN, im_xN, abs_xN.
std::string to_csv(const AmplitudeSeries& series);
Json series_to_json(const AmplitudeSeries& series);

struct PlotMarkers {
  std::vector<double> ese_times;
  std::optional<double> transfer_time;
};

/// Standalone SVG: |x_0| solid, |x_N| dashed, axis ticks, a circle at each ESE
/// time and a vertical line at T0 when it falls inside the plotted range.
std::string render_svg(const AmplitudeSeries& series, const PlotMarkers& markers);

}  // namespace pst::report
