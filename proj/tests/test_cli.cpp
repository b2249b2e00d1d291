#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "report_io.hpp"

namespace fs = std::filesystem;
using namespace qtradeoff::cli;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("qtradeoff_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> r;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) r.push_back(l);
  return r;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> r;
  std::istringstream in(s);
  for (std::string c; std::getline(in, c, ',');) r.push_back(c);
  return r;
}

}  // namespace

TEST_CASE("curve --n 10 writes four curves and a plot") {
  TempDir d("curve10");
  const auto r = run_cli({"curve", "--n", "10", "--out", d.path.string()});
  REQUIRE(r.code == 0);
  for (int k = 0; k < 4; ++k) CHECK(fs::exists(d.path / ("curve_N10_k" + std::to_string(k) + ".csv")));
  CHECK_FALSE(fs::exists(d.path / "curve_N10_k4.csv"));
  const auto svg = slurp(d.path / "curve_N10.svg");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("stroke-dasharray=\"8,4\"") != std::string::npos);
  const auto csv = lines(slurp(d.path / "curve_N10_k0.csv"));
  CHECK(csv.front() == kCurveCsvHeader);
  CHECK(csv.size() == 1 + 401);
}

TEST_CASE("curve --n 1 runs from (1, 1/2) to (2/3, 2/3)") {
  TempDir d("curve1");
  REQUIRE(run_cli({"curve", "--n", "1", "--out", d.path.string()}).code == 0);
  const auto csv = lines(slurp(d.path / "curve_N1_k0.csv"));
  const auto first = split(csv[1]);
  const auto last = split(csv.back());
  CHECK(std::abs(std::stod(first[5]) - 1.0) < 1e-10);
  CHECK(std::abs(std::stod(first[6]) - 0.5) < 1e-10);
  CHECK(std::abs(std::stod(last[5]) - 2.0 / 3.0) < 1e-10);
  CHECK(std::abs(std::stod(last[6]) - 2.0 / 3.0) < 1e-10);
  CHECK(last[2] == "inf");
  CHECK_FALSE(fs::exists(d.path / "curve_N1_k1.csv"));
}

TEST_CASE("curve --format json carries the schema version") {
  TempDir d("curvejson");
  REQUIRE(run_cli({"curve", "--n", "5", "--format", "json", "--out", d.path.string()}).code == 0);
  const auto doc = nlohmann::json::parse(slurp(d.path / "curve.json"));
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["config"]["command"] == "curve");
  CHECK(doc["results"].size() == 3);
  CHECK(doc["results"][0]["k"] == 0);
}

TEST_CASE("explicit --k list") {
  TempDir d("klist");
  REQUIRE(run_cli({"curve", "--n", "6", "--k", "0", "2", "--x-points", "11", "--out", d.path.string()}).code == 0);
  CHECK(fs::exists(d.path / "curve_N6_k2.csv"));
  CHECK_FALSE(fs::exists(d.path / "curve_N6_k1.csv"));
  CHECK(lines(slurp(d.path / "curve_N6_k2.csv")).size() == 12);
  CHECK(run_cli({"curve", "--n", "2", "--k", "3", "--out", d.path.string()}).code == 2);
}

TEST_CASE("envelope --n 10 chooses k=0 everywhere") {
  TempDir d("env10");
  REQUIRE(run_cli({"envelope", "--n", "10", "--out", d.path.string()}).code == 0);
  const auto csv = lines(slurp(d.path / "envelope_N10.csv"));
  CHECK(csv.front() == kEnvelopeCsvHeader);
  for (std::size_t i = 1; i < csv.size(); ++i) CHECK(split(csv[i])[2] == "0");
  CHECK(fs::exists(d.path / "envelope.svg"));
}

TEST_CASE("envelope --n 100 ends at G = 101/102") {
  TempDir d("env100");
  REQUIRE(run_cli({"envelope", "--n", "100", "--out", d.path.string()}).code == 0);
  const auto last = split(lines(slurp(d.path / "envelope_N100.csv")).back());
  CHECK(std::abs(std::stod(last[4]) - 101.0 / 102.0) < 1e-9);
  CHECK(std::abs(std::stod(last[3]) - 101.0 / 102.0) < 1e-9);
}

TEST_CASE("envelope --n 2 --x-points 51 is endpoint exact") {
  TempDir d("env2");
  REQUIRE(run_cli({"envelope", "--n", "2", "--x-points", "51", "--out", d.path.string()}).code == 0);
  const auto csv = lines(slurp(d.path / "envelope_N2.csv"));
  CHECK(csv.size() == 52);
  const auto first = split(csv[1]);
  const auto last = split(csv.back());
  CHECK(std::abs(std::stod(first[3]) - 1.0) < 1e-12);
  CHECK(std::abs(std::stod(first[4]) - 0.5) < 1e-12);
  CHECK(std::abs(std::stod(last[3]) - 0.75) < 1e-12);
  CHECK(std::abs(std::stod(last[4]) - 0.75) < 1e-12);
}

TEST_CASE("envelope for several N draws the family in one plot") {
  TempDir d("envmany");
  REQUIRE(run_cli({"envelope", "--n", "1", "5", "20", "100", "--relative", "--format", "json", "--out",
                   d.path.string()})
              .code == 0);
  const auto svg = slurp(d.path / "envelope.svg");
  for (const char* label : {"N=1", "N=5", "N=20", "N=100"}) CHECK(svg.find(label) != std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(d.path / "envelope.json"));
  CHECK(doc["results"].size() == 4);
  CHECK(doc["config"]["relative"] == true);
}

TEST_CASE("verify --n 1 passes its hard checks") {
  TempDir d("verify1");
  const auto r = run_cli({"verify", "--n", "1", "--samples", "20000", "--seed", "7", "--out", d.path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto doc = nlohmann::json::parse(slurp(d.path / "verify.json"));
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["all_hard_checks_passed"] == true);
  bool saw_end_to_end = false;
  for (const auto& c : doc["results"][0]["checks"])
    if (c["name"].get<std::string>().rfind("end_to_end", 0) == 0) saw_end_to_end = c["passed"].get<bool>();
  CHECK(saw_end_to_end);
}

TEST_CASE("identical config and seed give byte-identical output") {
  TempDir a("det_a");
  TempDir b("det_b");
  for (const auto* dir : {&a, &b}) {
    REQUIRE(run_cli({"curve", "--n", "7", "--out", dir->path.string()}).code == 0);
    REQUIRE(run_cli({"verify", "--n", "2", "--samples", "5000", "--seed", "3", "--out", dir->path.string()}).code == 0);
  }
  for (const auto& e : fs::directory_iterator(a.path)) {
    const auto name = e.path().filename();
    CAPTURE(name.string());
    CHECK(slurp(e.path()) == slurp(b.path / name));
  }
}

TEST_CASE("seed falls back to QTRADEOFF_SEED") {
  TempDir d("seedenv");
  ::setenv("QTRADEOFF_SEED", "1234", 1);
  const auto r = run_cli({"verify", "--n", "1", "--samples", "2000", "--out", d.path.string()});
  ::unsetenv("QTRADEOFF_SEED");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(d.path / "verify.json"));
  CHECK(doc["config"]["seed"] == 1234);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({"curve", "--n", "0"}).code == 2);
  CHECK(run_cli({"curve", "--n", "4", "--x-points", "1"}).code == 2);
  CHECK(run_cli({"verify", "--n", "2", "--samples", "10"}).code == 2);
  CHECK(run_cli({"verify", "--n", "9"}).code == 2);
  CHECK(run_cli({"curve", "--n", "4", "--format", "xml"}).code == 2);
  CHECK(run_cli({"curve", "--n", "x"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("unwritable output exits with 3") {
  TempDir d("io");
  const auto blocker = d.path / "file";
  std::ofstream(blocker) << "x";
  const auto r = run_cli({"curve", "--n", "2", "--out", (blocker / "sub").string()});
  CHECK(r.code == 3);
  CHECK(r.err.find("I/O") != std::string::npos);
}

TEST_CASE("relative series maps the endpoints to the unit square") {
  Series s{"N=4", {0.5, 5.0 / 6.0}, {1.0, 5.0 / 6.0}, 0};
  const auto r = relative_series(s, 4);
  CHECK(std::abs(r.G[0]) < 1e-15);
  CHECK(std::abs(r.G[1] - 1.0) < 1e-15);
  CHECK(std::abs(r.F[0] - 1.0) < 1e-15);
  CHECK(std::abs(r.F[1]) < 1e-15);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0 / 0.0) == "inf");
  CHECK(format_double(-1.0 / 0.0) == "-inf");
}
