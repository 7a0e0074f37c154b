#include "pst/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace pst::report {

std::string format12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format12(x).c_str(), nullptr);
}

Json to_json(const std::vector<double>& values) {
  Json arr = Json::array();
  for (double v : values) arr.push_back(round12(v));
  return arr;
}

Json to_json(const JacobiMatrix& J) {
  Json j;
  j["diag"] = to_json(J.diag());
  j["offdiag"] = to_json(J.offdiag());
  return j;
}

Json to_json(const PersymmetryReport& rep) {
  Json j;
  j["is_persymmetric"] = rep.is_persymmetric;
  j["max_diag_asymmetry"] = round12(rep.max_diag_asymmetry);
  j["max_offdiag_asymmetry"] = round12(rep.max_offdiag_asymmetry);
  j["tolerance"] = round12(rep.tolerance);
  return j;
}

const char* status_name(PstStatus status) noexcept {
  switch (status) {
    case PstStatus::transfer:
      return "transfer";
    case PstStatus::no_transfer:
      return "no_transfer";
    case PstStatus::undecidable:
      return "undecidable";
  }
  return "undecidable";
}

Json to_json(const PstCertificate& cert) {
  Json j;
  j["has_pst"] = cert.has_pst();
  j["status"] = status_name(cert.status);
  j["transfer_time"] = cert.transfer_time ? Json(round12(*cert.transfer_time)) : Json(nullptr);
  Json ints = Json::array();
  for (long n : cert.gap_odd_integers) ints.push_back(n);
  j["gap_odd_integers"] = ints;
  j["phase_re"] = cert.phase ? Json(round12(cert.phase->real())) : Json(nullptr);
  j["phase_im"] = cert.phase ? Json(round12(cert.phase->imag())) : Json(nullptr);
  return j;
}

Json to_json(const EseReport& rep) {
  Json zeros = Json::array();
  for (const auto& z : rep.zeros) {
    Json e;
    e["time"] = round12(z.time);
    e["residual"] = round12(z.residual);
    e["last_site_modulus"] = round12(z.last_site_modulus);
    zeros.push_back(e);
  }
  Json j;
  j["zeros"] = zeros;
  j["unresolved"] = to_json(rep.unresolved);
  j["early_pst_anomalies"] = rep.early_pst_anomalies;
  j["scan_resolution"] = round12(rep.scan_resolution);
  j["tolerance"] = round12(rep.tolerance);
  j["noise_window_start"] =
      rep.noise_window_start ? Json(round12(*rep.noise_window_start)) : Json(nullptr);
  return j;
}

std::string to_csv(const AmplitudeSeries& series) {
  std::ostringstream os;
  os << "t,re_x0,im_x0,abs_x0,re_xN,im_xN,abs_xN\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const auto& a = series.x0[i];
    const auto& b = series.xN[i];
    os << format12(series.times[i]) << ',' << format12(a.real()) << ',' << format12(a.imag())
       << ',' << format12(std::abs(a)) << ',' << format12(b.real()) << ','
       << format12(b.imag()) << ',' << format12(std::abs(b)) << '\n';
  }
  return os.str();
}

Json series_to_json(const AmplitudeSeries& series) {
  std::vector<double> re0, im0, abs0, reN, imN, absN;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    re0.push_back(series.x0[i].real());
    im0.push_back(series.x0[i].imag());
    abs0.push_back(std::abs(series.x0[i]));
    reN.push_back(series.xN[i].real());
    imN.push_back(series.xN[i].imag());
    absN.push_back(std::abs(series.xN[i]));
  }
  Json j;
  j["t"] = to_json(series.times);
  j["re_x0"] = to_json(re0);
  j["im_x0"] = to_json(im0);
  j["abs_x0"] = to_json(abs0);
  j["re_xN"] = to_json(reN);
  j["im_xN"] = to_json(imN);
  j["abs_xN"] = to_json(absN);
  return j;
}

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const AmplitudeSeries& series, const PlotMarkers& markers) {
  const double t0 = series.times.front();
  const double t1 = series.times.back();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
  auto sy = [&](double y) { return kTop + (1.0 - std::clamp(y, 0.0, 1.05) / 1.05) * plot_h; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";

  // axes
  os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
     << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(0.0)) << "\" x2=\""
     << px(kLeft + plot_w) << "\" y2=\"" << px(sy(0.0)) << "\"/>\n"
     << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(sy(0.0)) << "\" x2=\"" << px(kLeft)
     << "\" y2=\"" << px(kTop) << "\"/>\n";
  const int xticks = 8;
  for (int i = 0; i <= xticks; ++i) {
    const double t = t0 + (t1 - t0) * i / xticks;
    os << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(sy(0.0)) << "\" x2=\"" << px(sx(t))
       << "\" y2=\"" << px(sy(0.0) + 6.0) << "\"/>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = 0.25 * i;
    os << "<line x1=\"" << px(kLeft - 6.0) << "\" y1=\"" << px(sy(y)) << "\" x2=\""
       << px(kLeft) << "\" y2=\"" << px(sy(y)) << "\"/>\n";
  }
  os << "</g>\n<g class=\"tick-labels\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (int i = 0; i <= xticks; ++i) {
    const double t = t0 + (t1 - t0) * i / xticks;
    char label[32];
    std::snprintf(label, sizeof label, "%.3g", t);
    os << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(sy(0.0) + 20.0)
       << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = 0.25 * i;
    char label[32];
    std::snprintf(label, sizeof label, "%.2f", y);
    os << "<text x=\"" << px(kLeft - 10.0) << "\" y=\"" << px(sy(y) + 4.0)
       << "\" text-anchor=\"end\">" << label << "</text>\n";
  }
  os << "<text x=\"" << px(kLeft + plot_w / 2.0) << "\" y=\"" << px(kHeight - 15.0)
     << "\" text-anchor=\"middle\">t</text>\n</g>\n";

  auto polyline = [&](const std::vector<Complex>& values, const char* cls, const char* color,
                      const char* dash) {
    os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\"";
    if (dash) os << " stroke-dasharray=\"" << dash << "\"";
    os << " points=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) os << ' ';
      os << px(sx(series.times[i])) << ',' << px(sy(std::abs(values[i])));
    }
    os << "\"/>\n";
  };
  polyline(series.x0, "curve-x0", "#1f77b4", nullptr);
  polyline(series.xN, "curve-xN", "#d62728", "8,5");

  for (double t : markers.ese_times) {
    if (t < t0 || t > t1) continue;
    os << "<circle class=\"ese-marker\" cx=\"" << px(sx(t)) << "\" cy=\"" << px(sy(0.0))
       << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"><title>ESE t="
       << format12(t) << "</title></circle>\n";
  }
  if (markers.transfer_time && *markers.transfer_time >= t0 && *markers.transfer_time <= t1) {
    const double x = sx(*markers.transfer_time);
    os << "<line class=\"transfer-marker\" x1=\"" << px(x) << "\" y1=\"" << px(sy(0.0))
       << "\" x2=\"" << px(x) << "\" y2=\"" << px(sy(1.0))
       << "\" stroke=\"gray\" stroke-dasharray=\"2,3\"><title>T0="
       << format12(*markers.transfer_time) << "</title></line>\n";
  }

  const double lx = kLeft + plot_w - 150.0;
  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n"
     << "<line x1=\"" << px(lx) << "\" y1=\"" << px(kTop + 10.0) << "\" x2=\"" << px(lx + 30.0)
     << "\" y2=\"" << px(kTop + 10.0) << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n"
     << "<text x=\"" << px(lx + 38.0) << "\" y=\"" << px(kTop + 14.0) << "\">|x_0(t)|</text>\n"
     << "<line x1=\"" << px(lx) << "\" y1=\"" << px(kTop + 30.0) << "\" x2=\"" << px(lx + 30.0)
     << "\" y2=\"" << px(kTop + 30.0)
     << "\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"8,5\"/>\n"
     << "<text x=\"" << px(lx + 38.0) << "\" y=\"" << px(kTop + 34.0) << "\">|x_N(t)|</text>\n"
     << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace pst::report
