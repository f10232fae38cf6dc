#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gapdiff/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("gapdiff_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& body) const {
    std::ofstream(path / name) << body;
    return (path / name).string();
  }
};

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gapdiff");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gapdiff::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kThreeState = R"({"states": [0, 1, 2], "rates": [1, 1, 1], "right_probs": [1, 0.5, 0]})";

}  // namespace

TEST_CASE("cli spectrum prints the atoms") {
  TempDir dir;
  const auto r = invoke({"spectrum", "--input", dir.write("c.json", kThreeState)});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"atoms\"") != std::string::npos);
  CHECK(r.out.find("0.2928932188") != std::string::npos);
  CHECK(r.out.find("1.707106781") != std::string::npos);
}

TEST_CASE("cli exponent and oracle headers") {
  TempDir dir;
  const auto in = dir.write("c.json", kThreeState);
  const auto e = invoke({"exponent", "-i", in, "--zn", "5"});
  REQUIRE(e.code == 0);
  CHECK(e.out.rfind("z,psi_z\n", 0) == 0);
  const auto o = invoke({"oracle", "-i", in, "--zmin", "1", "--zmax", "2", "--zn", "2", "--spacing", "lin"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("z,T_z\n1,0.2857142857", 0) == 0);
}

TEST_CASE("cli levy writes the density and a summary") {
  TempDir dir;
  const auto in = dir.write("c.json", kThreeState);
  const auto summary = (dir.path / "rep.json").string();
  const auto r = invoke({"levy", "-i", in, "--summary", summary, "--yn", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("y,n_y\n", 0) == 0);
  const std::string rep = slurp(summary);
  CHECK(rep.find("\"knight\"") != std::string::npos);
  CHECK(rep.find("chain-units") != std::string::npos);
}

TEST_CASE("cli rejects bad grids as usage errors") {
  TempDir dir;
  const auto r = invoke({"levy", "-i", dir.write("c.json", kThreeState), "--yn", "0"});
  CHECK(r.code != 0);
  CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("cli reports malformed input") {
  TempDir dir;
  const auto bad = invoke({"spectrum", "-i", dir.write("bad.json", "{\"states\": [0, 1")});
  CHECK(bad.code != 0);
  CHECK(bad.err.find("malformed JSON") != std::string::npos);
  const auto invalid =
      invoke({"spectrum", "-i", dir.write("neg.json", R"({"states": [0, 1], "rates": [1, -1], "right_probs": [1, 0]})")});
  CHECK(invalid.code != 0);
  CHECK(invalid.err.find("rate must be positive") != std::string::npos);
  const auto missing = invoke({"spectrum", "-i", (dir.path / "nope.json").string()});
  CHECK(missing.code != 0);
}

TEST_CASE("cli simulate is reproducible and needs a seed") {
  TempDir dir;
  const auto in = dir.write("c.json", kThreeState);
  const auto s1 = (dir.path / "s1.json").string();
  const auto s2 = (dir.path / "s2.json").string();
  const auto a = invoke({"simulate", "-i", in, "--seed", "42", "--replicas", "200", "--summary", s1});
  const auto b = invoke({"simulate", "-i", in, "--seed", "42", "--replicas", "200", "--summary", s2});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  CHECK(slurp(s1) == slurp(s2));
  CHECK(a.out.rfind("duration\n", 0) == 0);
  CHECK(slurp(s1).find("\"counts\"") != std::string::npos);

  const auto noseed = invoke({"simulate", "-i", in});
  CHECK(noseed.code != 0);
}

TEST_CASE("cli refine writes the prefixed outputs") {
  TempDir dir;
  const auto in = dir.write("m.json", R"({"density": "uniform", "endpoint": 1})");
  const auto prefix = (dir.path / "run").string();
  const auto r = invoke({"refine", "-i", in, "-o", prefix, "--sizes", "10,20,40", "--zn", "9", "--yn", "9"});
  REQUIRE(r.code == 0);
  for (const char* suffix : {"_psi.csv", "_density.csv", "_tail.csv", "_summary.json"})
    CHECK(fs::exists(prefix + suffix));
  CHECK(slurp(prefix + "_psi.csv").rfind("N,z_or_y,value\n", 0) == 0);
  CHECK(slurp(prefix + "_summary.json").find("gaps_strictly_decreasing") != std::string::npos);

  const auto unsorted = invoke({"refine", "-i", in, "-o", prefix, "--sizes", "20,10"});
  CHECK(unsorted.code != 0);
}

TEST_CASE("cli without a subcommand fails") {
  CHECK(invoke({}).code != 0);
  CHECK(invoke({"frobnicate"}).code != 0);
}
