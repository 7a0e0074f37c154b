#include "pst/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "pst/inverse_spectral.hpp"
#include "pst/polyfamilies.hpp"
#include "pst/report.hpp"

namespace pst::cli {

using report::Json;

namespace {

constexpr double kPersymmetryTolerance = 1e-8;

std::vector<double> read_reals(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(std::string(what) + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

JacobiMatrix read_matrix(const Json& j) {
  if (!j.is_object() || !j.contains("diag") || !j.contains("offdiag"))
    throw InputError("matrix must have `diag` and `offdiag`");
  return JacobiMatrix(read_reals(j["diag"], "matrix.diag"),
                      read_reals(j["offdiag"], "matrix.offdiag"));
}

Json chain_json(const Chain& chain, const Analysis& analysis) {
  Json doc;
  doc["spectrum"] = report::to_json(chain.spectrum);
  doc["weights"] = report::to_json(chain.spectral.weights());
  doc["matrix"] = report::to_json(chain.matrix);
  doc["persymmetry"] = report::to_json(analysis.persymmetry);
  doc["pst"] = report::to_json(analysis.pst);
  return doc;
}

Chain chain_from_spectrum(std::vector<double> spectrum) {
  SpectralData sd = persymmetric_weights(SpectrumRequest(spectrum));
  JacobiMatrix J = reconstruct_jacobi(sd);
  return Chain{std::move(spectrum), std::move(sd), std::move(J)};
}

std::vector<double> shifted_range(int N) {
  std::vector<double> lam(static_cast<std::size_t>(N) + 1);
  for (int s = 0; s <= N; ++s) lam[static_cast<std::size_t>(s)] = s - N / 2.0;
  return lam;
}

Json manifest(const std::string& command, Json inputs, const std::vector<std::string>& outputs) {
  Json m;
  m["command"] = command;
  m["inputs"] = std::move(inputs);
  m["outputs"] = outputs;
  m["tool_version"] = kToolVersion;
  return m;
}

}  // namespace

Chain load_chain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }

  if (doc.is_array()) return chain_from_spectrum(read_reals(doc, "spectrum"));
  if (!doc.is_object()) throw InputError("input must be a JSON array or object");

  if (doc.contains("spectrum") && doc.contains("weights")) {
    std::vector<double> spectrum = read_reals(doc["spectrum"], "spectrum");
    std::vector<double> weights = read_reals(doc["weights"], "weights");
    // Weights are stored with 12 significant digits; restore the unit sum.
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) w /= sum;
    SpectralData sd(spectrum, std::move(weights));
    JacobiMatrix J = doc.contains("matrix") ? read_matrix(doc["matrix"]) : reconstruct_jacobi(sd);
    if (J.n_sites() != sd.size()) throw InputError("matrix size does not match spectrum");
    return Chain{std::move(spectrum), std::move(sd), std::move(J)};
  }
  if (doc.contains("matrix")) {
    JacobiMatrix J = read_matrix(doc["matrix"]);
    SpectralData sd = eigendecompose(J);
    std::vector<double> spectrum = sd.eigenvalues();
    return Chain{std::move(spectrum), std::move(sd), std::move(J)};
  }
  throw InputError("input object needs `spectrum` and `weights`, or `matrix`");
}

Analysis analyze_chain(const Chain& chain, double pst_tol, std::optional<double> ese_tol) {
  Analysis a;
  const double scale = std::max(1.0, chain.matrix.norm());
  a.persymmetry = check_persymmetry(chain.matrix, kPersymmetryTolerance * scale);
  a.pst = detect_pst(SpectrumRequest(chain.spectrum), pst_tol);
  if (a.pst.has_pst() && !a.persymmetry.is_persymmetric) {
    a.pst = PstCertificate{};
    a.pst.status = PstStatus::no_transfer;
  }
  if (a.pst.has_pst() && ese_tol) a.ese = detect_ese(chain.spectral, a.pst, *ese_tol);
  return a;
}

AmplitudeSeries chain_series(const Chain& chain, double t0, double t1, std::size_t steps) {
  AmplitudeSeries series = amplitude_series(chain.spectral, t0, t1, steps);
  const double scale = std::max(1.0, chain.matrix.norm());
  if (check_persymmetry(chain.matrix, kPersymmetryTolerance * scale).is_persymmetric)
    return series;
  const Eigensystem es = eigensystem(chain.matrix);
  const std::size_t last = chain.matrix.n_sites() - 1;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    Complex x(0.0, 0.0);
    for (std::size_t s = 0; s < es.eigenvalues.size(); ++s)
      x += es.eigenvectors[s][0] * es.eigenvectors[s][last] *
           std::polar(1.0, -es.eigenvalues[s] * series.times[i]);
    series.xN[i] = x;
  }
  return series;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".partial";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open output file: " + path);
    os << content;
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("failed writing output file: " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place: " + path);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect state transfer and early state exclusion in Jacobi chains", "pstchain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string kind, in_path, out_path, format = "csv";
  int N = 0, n = 0, m = 0;
  double t0 = 0.0, t1 = 0.0;
  std::size_t steps = 0;
  double ese_tol = kDefaultZeroTolerance, pst_tol = kDefaultPstTolerance;

  auto* construct = app.add_subcommand("construct", "Build a chain and certify PST");
  construct->add_option("kind", kind, "krawtchouk | gap-family | surgery | example-4x4 | from-spectrum")
      ->required()
      ->check(CLI::IsMember({"krawtchouk", "gap-family", "surgery", "example-4x4", "from-spectrum"}));
  construct->add_option("--N", N, "chain length parameter (krawtchouk, surgery)");
  construct->add_option("--n", n, "half-size of the gap family");
  construct->add_option("--m", m, "middle-gap parameter of the gap family");
  construct->add_option("--in", in_path, "spectrum file (from-spectrum)");
  construct->add_option("--out", out_path, "output JSON")->required();
  construct->add_option("--tol", pst_tol, "relative gap tolerance of the PST test");

  auto* analyze = app.add_subcommand("analyze", "PST certificate and ESE report");
  analyze->add_option("--in", in_path, "matrix, spectrum or construct output")->required();
  analyze->add_option("--out", out_path, "output JSON")->required();
  analyze->add_option("--tol", ese_tol, "residual tolerance for ESE zeros");
  analyze->add_option("--pst-tol", pst_tol, "relative gap tolerance of the PST test");

  auto* evolve = app.add_subcommand("evolve", "Sample x_0(t) and x_N(t)");
  evolve->add_option("--in", in_path)->required();
  evolve->add_option("--t0", t0)->required();
  evolve->add_option("--t1", t1)->required();
  evolve->add_option("--steps", steps)->required();
  evolve->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  evolve->add_option("--out", out_path)->required();

  std::optional<double> plot_t1;
  std::size_t plot_steps = 1000;
  auto* plot = app.add_subcommand("plot", "SVG plot of |x_0| and |x_N| with ESE markers");
  plot->add_option("--in", in_path)->required();
  plot->add_option("--t0", t0, "start time (default 0)");
  plot->add_option("--t1", plot_t1, "end time (default T0)");
  plot->add_option("--steps", plot_steps);
  plot->add_option("--tol", ese_tol, "residual tolerance for ESE zeros");
  plot->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadArguments;
  }

  try {
    if (construct->parsed()) {
      Json inputs;
      inputs["kind"] = kind;
      Chain chain = [&]() -> Chain {
        if (kind == "krawtchouk") {
          if (construct->count("--N") == 0) throw std::invalid_argument("krawtchouk requires --N");
          inputs["N"] = N;
          SpectralData sd = persymmetric_weights(SpectrumRequest(shifted_range(N)));
          JacobiMatrix J = krawtchouk_chain(N);
          return Chain{sd.eigenvalues(), sd, std::move(J)};
        }
        if (kind == "gap-family" || kind == "surgery") {
          SpectrumRequest req = [&] {
            if (kind == "surgery") {
              if (construct->count("--N") == 0) throw std::invalid_argument("surgery requires --N");
              inputs["N"] = N;
              return surgery_spectrum(N);
            }
            if (construct->count("--n") == 0 || construct->count("--m") == 0)
              throw std::invalid_argument("gap-family requires --n and --m");
            inputs["n"] = n;
            inputs["m"] = m;
            return gap_family_spectrum(n, m);
          }();
          SpectralData sd = persymmetric_weights(req);
          JacobiMatrix J = reconstruct_persymmetric(req);
          return Chain{req.eigenvalues(), std::move(sd), std::move(J)};
        }
        if (kind == "example-4x4") {
          SpectralData sd = persymmetric_weights(SpectrumRequest({-2.5, -1.5, 1.5, 2.5}));
          return Chain{sd.eigenvalues(), sd, example_4x4()};
        }
        if (in_path.empty()) throw std::invalid_argument("from-spectrum requires --in");
        inputs["in"] = in_path;
        std::ifstream is(in_path);
        if (!is) throw InputError("cannot open input file: " + in_path);
        Json doc;
        try {
          doc = Json::parse(is);
        } catch (const Json::parse_error& e) {
          throw InputError(std::string("malformed spectrum file: ") + e.what());
        }
        return chain_from_spectrum(read_reals(doc, "spectrum"));
      }();
      const Analysis analysis = analyze_chain(chain, pst_tol, std::nullopt);
      write_file_atomic(out_path, chain_json(chain, analysis).dump(2) + "\n");
      out << manifest("construct", inputs, {out_path}).dump(2) << "\n";
      return kExitOk;
    }

    if (analyze->parsed()) {
      const Chain chain = load_chain(in_path);
      const Analysis analysis = analyze_chain(chain, pst_tol, ese_tol);
      Json doc = chain_json(chain, analysis);
      doc["ese"] = analysis.ese ? report::to_json(*analysis.ese) : Json(nullptr);
      doc["verdict"] = !analysis.pst.has_pst()  ? "no PST"
                       : analysis.ese->has_ese() ? "ESE present"
                                                 : "ESE absent";
      write_file_atomic(out_path, doc.dump(2) + "\n");
      Json inputs;
      inputs["in"] = in_path;
      inputs["tol"] = ese_tol;
      inputs["pst_tol"] = pst_tol;
      out << manifest("analyze", inputs, {out_path}).dump(2) << "\n";
      return kExitOk;
    }

    if (evolve->parsed()) {
      if (!(t0 < t1)) throw std::invalid_argument("evolve requires t0 < t1");
      if (steps < 2) throw std::invalid_argument("evolve requires steps >= 2");
      const Chain chain = load_chain(in_path);
      const AmplitudeSeries series = chain_series(chain, t0, t1, steps);
      const std::string body = format == "csv" ? report::to_csv(series)
                                               : report::series_to_json(series).dump(2) + "\n";
      write_file_atomic(out_path, body);
      Json inputs;
      inputs["in"] = in_path;
      inputs["t0"] = t0;
      inputs["t1"] = t1;
      inputs["steps"] = steps;
      inputs["format"] = format;
      out << manifest("evolve", inputs, {out_path}).dump(2) << "\n";
      return kExitOk;
    }

    // plot
    const Chain chain = load_chain(in_path);
    const Analysis analysis = analyze_chain(chain, pst_tol, ese_tol);
    double end = 0.0;
    if (plot_t1)
      end = *plot_t1;
    else if (analysis.pst.has_pst())
      end = *analysis.pst.transfer_time;
    else
      throw std::invalid_argument("plot needs --t1 when the chain has no PST");
    if (!(t0 < end)) throw std::invalid_argument("plot requires t0 < t1");
    if (plot_steps < 2) throw std::invalid_argument("plot requires steps >= 2");
    const AmplitudeSeries series = chain_series(chain, t0, end, plot_steps);
    report::PlotMarkers markers;
    if (analysis.ese)
      for (const auto& z : analysis.ese->zeros) markers.ese_times.push_back(z.time);
    markers.transfer_time = analysis.pst.transfer_time;
    write_file_atomic(out_path, report::render_svg(series, markers));
    Json inputs;
    inputs["in"] = in_path;
    inputs["t0"] = t0;
    inputs["t1"] = end;
    inputs["steps"] = plot_steps;
    out << manifest("plot", inputs, {out_path}).dump(2) << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const SolverError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ReconstructionError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace pst::cli
