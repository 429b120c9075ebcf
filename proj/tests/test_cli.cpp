#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isoconv/cli.hpp"
#include "isoconv/descriptor.hpp"
#include "isoconv/error.hpp"

using namespace isoconv;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("isoconv_cli_" + name); }

}  // namespace

TEST_CASE("documented invocations") {
  Run r = run({"bound", "--kind", "summary-piecewise", "--n", "16", "--p", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  r = run({"meanwidth", "--body", "ball:8", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n");
  r = run({"verify", "--suite", "nosuch", "--seed", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("nosuch") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  Run r = run({"meanwidth", "--body", "ball:3", "--frobnicate", "1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--frobnicate") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"nocommand"}).code == 2);
  CHECK(run({"meanwidth", "--body", "blob:3"}).code == 2);
  CHECK(run({"bound", "--kind", "prop31"}).code == 2);
  CHECK(run({"vk", "--body", "cube:8", "--k", "7", "--seed", "1"}).code == 2);
}

TEST_CASE("help prints the grammar") {
  const Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("meanwidth") != std::string::npos);
  CHECK(r.out.find("lpball:N:P") != std::string::npos);
  CHECK(r.out.find("ISOCONV_THREADS") != std::string::npos);
  CHECK(run({"verify", "--help"}).out.find("--suite") != std::string::npos);
}

TEST_CASE("missing seed is generated, printed and embedded") {
  const Run r = run({"meanwidth", "--body", "cube:3", "--sphere-samples", "500", "--out", "json"});
  CHECK(r.code == 0);
  REQUIRE(r.err.rfind("seed: ", 0) == 0);
  const std::uint64_t printed = std::stoull(r.err.substr(6));
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["meta"]["config"]["seed"].get<std::uint64_t>() == printed);
  CHECK(j["rows"][0]["seed"].get<std::uint64_t>() == printed);

  // Rerunning with the printed seed reproduces the row.
  const Run again = run({"meanwidth", "--body", "cube:3", "--sphere-samples", "500", "--out", "json", "--seed",
                         std::to_string(printed)});
  CHECK(nlohmann::json::parse(again.out)["rows"] == j["rows"]);
}

TEST_CASE("csv output and config files") {
  const fs::path cfg = tmp("cfg.json"), out = tmp("out.csv");
  {
    std::ofstream f(cfg);
    f << R"({"measure": "gaussian:3", "p": 2, "samples": 2000, "directions": 3, "seed": 5})";
  }
  Run r = run({"zp", "--config", cfg.string(), "--out", out.string()});
  CHECK(r.code == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "suite,n,p,quantity,value,std_error,direction,seed,samples");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 3);
  // Command-line values win over the config file.
  r = run({"zp", "--config", cfg.string(), "--directions", "2", "--out", "csv"});
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);

  {
    std::ofstream f(cfg);
    f << "not json";
  }
  CHECK(run({"zp", "--config", cfg.string()}).code == 2);
  fs::remove(cfg);
  fs::remove(out);
  CHECK(run({"meanwidth", "--body", "ball:2", "--seed", "1", "--out", "/nonexistent-dir/x.csv"}).code == 3);
}

TEST_CASE("isotropy and vk commands") {
  Run r = run({"isotropy", "--measure", "uniform:cube:2:unit", "--samples", "20000", "--seed", "3"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["L"].get<double>() == doctest::Approx(0.28868).epsilon(0.02));
  CHECK(j["eigenvalues"].size() == 2);

  r = run({"isotropy", "--measure", "uniform:vpolytope:2:@/nonexistent", "--seed", "3"});
  CHECK(r.code != 0);

  r = run({"vk", "--body", "ball:4", "--k", "2", "--trials", "3", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("1 ", 0) == 0);
}

TEST_CASE("verify and scaling commands") {
  Run r = run({"verify", "--suite", "qm-isotropy", "--dims", "1", "--samples", "20000", "--seed", "4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  r = run({"verify", "--suite", "b1-scaling", "--dims", "300", "--seed", "4"});
  CHECK(r.code == 2);

  r = run({"scaling", "--family", "ball", "--dims", "2,4,8,16", "--raw", "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("slope 0 ") == 0);

  const fs::path csv = tmp("scaling.csv");
  {
    std::ofstream f(csv);
    f << "suite,n,p,quantity,value,std_error,direction,seed,samples\n";
    for (int n : {4, 16, 64, 256}) f << "x," << n << ",,q," << n * n << ",0,exact,0,0\n";
  }
  r = run({"scaling", "--input", csv.string(), "--quantity", "q"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("slope 2 ", 0) == 0);
  fs::remove(csv);
}

TEST_CASE("descriptors") {
  CHECK(parse_body("cube:3").support(Vec(Eigen::Vector3d(1, 1, 1))) == doctest::Approx(3.0));
  CHECK(parse_body("lpball:2:inf").support(Vec(Eigen::Vector2d(1, 1))) == doctest::Approx(2.0));
  CHECK(parse_body("ellipsoid:2:3,1").support(Vec(Eigen::Vector2d(1, 0))) == doctest::Approx(3.0));
  CHECK(*parse_body("cross:4:unit").analytic().volume == doctest::Approx(1.0));
  CHECK(parse_measure("gaussian:3:1,4,9:iso").dim() == 3);
  CHECK_THROWS_AS(parse_body("ball"), ConstructionError);
  CHECK_THROWS_AS(parse_body("ball:x"), ConstructionError);
  CHECK_THROWS_AS(parse_measure("uniform:vpolytope:2:@/nonexistent"), IoError);
  CHECK(parse_number_list("1, 2 3").size() == 3);
}
