#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "cli_harness.hpp"
#include "doctest.h"
#include "json.hpp"

using harness::invoke;
using harness::slurp;
using Json = nlohmann::json;
using std::numbers::pi;

namespace {

Json read_json(const std::string& path) { return Json::parse(slurp(path)); }

bool well_formed_xml(const std::string& text) {
  std::istringstream in(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_xml(in, tree);
  } catch (const boost::property_tree::xml_parser_error&) {
    return false;
  }
  return tree.count("svg") == 1;
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("construct gap-family n=2 m=1") {
  harness::ScratchDir dir;
  const auto out = dir.file("c.json");
  const auto r = invoke({"construct", "gap-family", "--n", "2", "--m", "1", "--out", out});
  REQUIRE(r.code == 0);
  const auto doc = read_json(out);
  const double b[] = {std::sqrt(15.0) / 2, 1.0, std::sqrt(15.0) / 2};
  for (int k = 0; k < 3; ++k) CHECK(std::abs(doc["matrix"]["offdiag"][k].get<double>() - b[k]) < 1e-10);
  CHECK(doc["pst"]["has_pst"] == true);
  CHECK(std::abs(doc["pst"]["transfer_time"].get<double>() - pi) < 1e-10);
  CHECK(doc["persymmetry"]["is_persymmetric"] == true);

  const auto manifest = Json::parse(r.out);
  CHECK(manifest["command"] == "construct");
  CHECK(manifest["outputs"][0] == out);
  CHECK(manifest["inputs"]["n"] == 2);
  CHECK(manifest["tool_version"] == pst::cli::kToolVersion);
  CHECK(std::filesystem::file_size(out) > 0);
}

TEST_CASE("construct krawtchouk N=1 and from-spectrum") {
  harness::ScratchDir dir;
  REQUIRE(invoke({"construct", "krawtchouk", "--N", "1", "--out", dir.file("k.json")}).code == 0);
  const auto k = read_json(dir.file("k.json"));
  CHECK(k["matrix"]["offdiag"][0].get<double>() == 0.5);
  CHECK(std::abs(k["pst"]["transfer_time"].get<double>() - pi) < 1e-10);

  const auto spec = dir.write("s.json", "[0, 1, 2.5]");
  REQUIRE(invoke({"construct", "from-spectrum", "--in", spec, "--out", dir.file("f.json")}).code == 0);
  const auto f = read_json(dir.file("f.json"));
  CHECK(f["pst"]["has_pst"] == false);
  CHECK(f["pst"]["transfer_time"].is_null());
}

TEST_CASE("construct: bad parameters exit 2 and name the problem") {
  harness::ScratchDir dir;
  const auto out = dir.file("x.json");
  auto r = invoke({"construct", "surgery", "--N", "4", "--out", out});
  CHECK(r.code == 2);
  CHECK(r.err.find("odd") != std::string::npos);
  r = invoke({"construct", "gap-family", "--n", "2", "--out", out});
  CHECK(r.code == 2);
  CHECK(r.err.find("--m") != std::string::npos);
  CHECK(invoke({"construct", "nonsense", "--out", out}).code == 2);
  CHECK(invoke({"construct", "krawtchouk", "--N", "0", "--out", out}).code == 2);
  CHECK(invoke({"bogus"}).code == 2);
  CHECK_FALSE(std::filesystem::exists(out));
}

TEST_CASE("numerical failure exits 3") {
  harness::ScratchDir dir;
  // Weights so lopsided that the Lanczos recurrence breaks down.
  const auto in = dir.write("w.json", R"({"spectrum": [0, 1, 2], "weights": [0.5, 1e-40, 0.5]})");
  const auto r = invoke({"analyze", "--in", in, "--out", dir.file("a.json")});
  CHECK(r.code == 3);
  CHECK_FALSE(std::filesystem::exists(dir.file("a.json")));
}

TEST_CASE("analyze: worked examples") {
  harness::ScratchDir dir;
  SUBCASE("4x4") {
    REQUIRE(invoke({"construct", "example-4x4", "--out", dir.file("c.json")}).code == 0);
    REQUIRE(invoke({"analyze", "--in", dir.file("c.json"), "--out", dir.file("a.json")}).code == 0);
    const auto a = read_json(dir.file("a.json"));
    REQUIRE(a["ese"]["zeros"].size() == 1);
    CHECK(std::abs(a["ese"]["zeros"][0]["time"].get<double>() - 0.8410687) < 1e-6);
    CHECK(std::abs(a["ese"]["zeros"][0]["last_site_modulus"].get<double>() - 0.2721655) < 1e-6);
    CHECK(a["verdict"] == "ESE present");
  }
  SUBCASE("Krawtchouk N=5") {
    REQUIRE(invoke({"construct", "krawtchouk", "--N", "5", "--out", dir.file("c.json")}).code == 0);
    REQUIRE(invoke({"analyze", "--in", dir.file("c.json"), "--out", dir.file("a.json")}).code == 0);
    const auto a = read_json(dir.file("a.json"));
    CHECK(a["ese"]["zeros"].empty());
    CHECK(a["verdict"] == "ESE absent");
  }
  SUBCASE("gap family n=4 m=3") {
    REQUIRE(invoke({"construct", "gap-family", "--n", "4", "--m", "3", "--out", dir.file("c.json")}).code == 0);
    REQUIRE(invoke({"analyze", "--in", dir.file("c.json"), "--out", dir.file("a.json")}).code == 0);
    const auto a = read_json(dir.file("a.json"));
    CHECK(a["ese"]["zeros"].size() >= 3);
    for (const auto& z : a["ese"]["zeros"]) {
      CHECK(z["time"].get<double>() > 0.0);
      CHECK(z["time"].get<double>() < pi);
    }
  }
  SUBCASE("non-PST input is still a valid answer") {
    const auto in = dir.write("s.json", "[0, 1, 2.5]");
    REQUIRE(invoke({"analyze", "--in", in, "--out", dir.file("a.json")}).code == 0);
    const auto a = read_json(dir.file("a.json"));
    CHECK(a["pst"]["has_pst"] == false);
    CHECK(a["ese"].is_null());
    CHECK(a["verdict"] == "no PST");
  }
  SUBCASE("bare matrix input") {
    const auto in = dir.write("m.json", R"({"matrix": {"diag": [0, 0, 0], "offdiag": [0.7071067811865476, 0.7071067811865476]}})");
    REQUIRE(invoke({"analyze", "--in", in, "--out", dir.file("a.json")}).code == 0);
    const auto a = read_json(dir.file("a.json"));
    CHECK(a["pst"]["has_pst"] == true);
    CHECK(a["ese"]["zeros"].empty());
  }
  SUBCASE("non-persymmetric matrix has no PST") {
    const auto in = dir.write("m.json", R"({"matrix": {"diag": [0, 0, 0], "offdiag": [1, 2]}})");
    REQUIRE(invoke({"analyze", "--in", in, "--out", dir.file("a.json")}).code == 0);
    const auto a = read_json(dir.file("a.json"));
    CHECK(a["persymmetry"]["is_persymmetric"] == false);
    CHECK(a["pst"]["has_pst"] == false);
  }
}

TEST_CASE("construct -> analyze reproduces the certificate exactly") {
  harness::ScratchDir dir;
  const std::vector<std::vector<std::string>> cases = {
      {"krawtchouk", "--N", "7"}, {"gap-family", "--n", "3", "--m", "2"}, {"surgery", "--N", "9"}, {"example-4x4"}};
  for (auto args : cases) {
    args.insert(args.begin(), "construct");
    args.insert(args.end(), {"--out", dir.file("c.json")});
    REQUIRE(invoke(args).code == 0);
    REQUIRE(invoke({"analyze", "--in", dir.file("c.json"), "--out", dir.file("a.json")}).code == 0);
    const auto c = read_json(dir.file("c.json"));
    const auto a = read_json(dir.file("a.json"));
    CHECK_MESSAGE(c["pst"].dump() == a["pst"].dump(), args[1]);
    CHECK(c["matrix"].dump() == a["matrix"].dump());
  }
}

TEST_CASE("evolve") {
  harness::ScratchDir dir;
  REQUIRE(invoke({"construct", "example-4x4", "--out", dir.file("c.json")}).code == 0);
  SUBCASE("csv rows at both ends") {
    REQUIRE(invoke({"evolve", "--in", dir.file("c.json"), "--t0", "0", "--t1", "3.141592653589793", "--steps",
                    "315", "--out", dir.file("e.csv")})
                .code == 0);
    std::istringstream in(slurp(dir.file("e.csv")));
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,re_x0,im_x0,abs_x0,re_xN,im_xN,abs_xN");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
      std::vector<double> row;
      std::istringstream ls(line);
      for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
      REQUIRE(row.size() == 7);
      rows.push_back(row);
    }
    REQUIRE(rows.size() == 315);
    CHECK(rows.front()[3] == 1.0);
    CHECK(std::abs(rows.back()[6] - 1.0) < 1e-9);
  }
  SUBCASE("json format") {
    REQUIRE(invoke({"evolve", "--in", dir.file("c.json"), "--t0", "0", "--t1", "1", "--steps", "11", "--format",
                    "json", "--out", dir.file("e.json")})
                .code == 0);
    const auto doc = read_json(dir.file("e.json"));
    CHECK(doc.is_object());
    CHECK(doc.dump().find("abs_x0") != std::string::npos);
  }
  SUBCASE("Krawtchouk N=3 matches cos^3(t/2)") {
    REQUIRE(invoke({"construct", "krawtchouk", "--N", "3", "--out", dir.file("k.json")}).code == 0);
    REQUIRE(invoke({"evolve", "--in", dir.file("k.json"), "--t0", "0", "--t1", "6", "--steps", "61", "--out",
                    dir.file("k.csv")})
                .code == 0);
    std::istringstream in(slurp(dir.file("k.csv")));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const double t = std::stod(line.substr(0, line.find(',')));
      std::istringstream ls(line);
      std::string cell;
      for (int c = 0; c <= 3; ++c) std::getline(ls, cell, ',');
      CHECK(std::abs(std::stod(cell) - std::abs(std::pow(std::cos(t / 2), 3))) < 1e-11);
    }
  }
  SUBCASE("argument checks") {
    CHECK(invoke({"evolve", "--in", dir.file("c.json"), "--t0", "1", "--t1", "1", "--steps", "5", "--out",
                  dir.file("x.csv")})
              .code == 2);
    CHECK(invoke({"evolve", "--in", dir.file("c.json"), "--t0", "0", "--t1", "1", "--steps", "1", "--out",
                  dir.file("x.csv")})
              .code == 2);
    CHECK(invoke({"evolve", "--in", dir.file("c.json"), "--t0", "0", "--t1", "1", "--steps", "5", "--format",
                  "xml", "--out", dir.file("x.csv")})
              .code == 2);
    CHECK_FALSE(std::filesystem::exists(dir.file("x.csv")));
  }
}

TEST_CASE("plot") {
  harness::ScratchDir dir;
  SUBCASE("4x4 has one ESE marker near 0.841 and a transfer marker") {
    REQUIRE(invoke({"construct", "example-4x4", "--out", dir.file("c.json")}).code == 0);
    REQUIRE(invoke({"plot", "--in", dir.file("c.json"), "--out", dir.file("p.svg")}).code == 0);
    const auto svg = slurp(dir.file("p.svg"));
    CHECK(well_formed_xml(svg));
    CHECK(count(svg, "class=\"ese-marker\"") == 1);
    CHECK(count(svg, "class=\"transfer-marker\"") == 1);
    CHECK(svg.find("<title>ESE t=0.84106867") != std::string::npos);
  }
  SUBCASE("Krawtchouk N=4 has no ESE markers") {
    REQUIRE(invoke({"construct", "krawtchouk", "--N", "4", "--out", dir.file("k.json")}).code == 0);
    REQUIRE(invoke({"plot", "--in", dir.file("k.json"), "--t0", "0", "--t1", "3.141592653589793", "--out",
                    dir.file("k.svg")})
                .code == 0);
    const auto svg = slurp(dir.file("k.svg"));
    CHECK(well_formed_xml(svg));
    CHECK(count(svg, "ese-marker") == 0);
  }
  SUBCASE("malformed input leaves nothing behind") {
    const auto bad = dir.write("bad.json", "{\"spectrum\": [0, 1,");
    const auto r = invoke({"plot", "--in", bad, "--out", dir.file("bad.svg")});
    CHECK(r.code != 0);
    CHECK_FALSE(std::filesystem::exists(dir.file("bad.svg")));
    CHECK_FALSE(std::filesystem::exists(dir.file("bad.svg.partial")));
    CHECK(invoke({"plot", "--in", dir.file("missing.json"), "--out", dir.file("m.svg")}).code != 0);
    CHECK_FALSE(std::filesystem::exists(dir.file("m.svg")));
  }
  SUBCASE("unwritable output exits 1") {
    REQUIRE(invoke({"construct", "example-4x4", "--out", dir.file("c.json")}).code == 0);
    const auto r = invoke({"plot", "--in", dir.file("c.json"), "--out", dir.file("no/such/dir/p.svg")});
    CHECK(r.code == 1);
  }
}

TEST_CASE("identical invocations give identical bytes") {
  harness::ScratchDir dir;
  for (int run = 0; run < 2; ++run) {
    const auto tag = std::to_string(run);
    REQUIRE(invoke({"construct", "gap-family", "--n", "2", "--m", "1", "--out", dir.file("c" + tag + ".json")}).code == 0);
    REQUIRE(invoke({"analyze", "--in", dir.file("c0.json"), "--out", dir.file("a" + tag + ".json")}).code == 0);
    REQUIRE(invoke({"evolve", "--in", dir.file("c0.json"), "--t0", "0", "--t1", "3", "--steps", "100", "--out",
                    dir.file("e" + tag + ".csv")})
                .code == 0);
    REQUIRE(invoke({"plot", "--in", dir.file("c0.json"), "--out", dir.file("p" + tag + ".svg")}).code == 0);
  }
  for (const char* stem : {"c", "a", "e", "p"}) {
    const std::string ext = stem[0] == 'e' ? ".csv" : stem[0] == 'p' ? ".svg" : ".json";
    CHECK_MESSAGE(slurp(dir.file(stem + std::string("0") + ext)) == slurp(dir.file(stem + std::string("1") + ext)),
                  stem);
  }
}
