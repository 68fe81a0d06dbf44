#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "frozen.hpp"
#include "zetalab/reporting/output.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI inside `dir` and captures stdout; stderr is discarded.
Run run_cli(const std::filesystem::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" ZETALAB_CLI_PATH "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("zetalab-cli-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_fitted_config(const std::filesystem::path& dir) {
  std::ofstream out(dir / "zetalab.conf");
  out.precision(17);
  for (int i = 0; i < 4; ++i) out << "a" << i + 1 << " = " << zetalab::frozen::kFitA[i] << "\n";
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("empty moment interval is zero") {
  const auto dir = fresh_dir("empty");
  const auto r = run_cli(dir, "moment --upper 0 --out json");
  CHECK(r.status == 0);
  const auto doc = zetalab::reporting::Json::parse(r.out);
  CHECK(doc["results"]["value"] == 0.0);
}

TEST_CASE("cached reruns are byte-identical") {
  const auto dir = fresh_dir("determinism");
  const auto first = run_cli(dir, "moment --kind crit2 --upper 300");
  const auto second = run_cli(dir, "moment --kind crit2 --upper 300");
  const auto fresh = run_cli(dir, "moment --kind crit2 --upper 300 --no-cache");
  CHECK(first.status == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == fresh.out);
}

TEST_CASE("usage errors exit with 1") {
  const auto dir = fresh_dir("usage");
  CHECK(run_cli(dir, "functional --name basic --tau 0").status == 1);
  CHECK(run_cli(dir, "fermat --triple 3 4 5 --n 2").status == 1);
  CHECK(run_cli(dir, "moment --kind crit2 --upper 10 --sigma 0.5").status == 1);
  CHECK(run_cli(dir, "ladder --mode sideways").status == 1);
  CHECK(run_cli(dir, "frobnicate").status == 1);
}

TEST_CASE("missing coefficients exit with 2") {
  const auto dir = fresh_dir("missing");
  const auto r = run_cli(dir, "functional --name crossbreed --tau 1000 --out json");
  CHECK(r.status == 2);
}

TEST_CASE("functional CSV has one row per tau") {
  const auto dir = fresh_dir("rows");
  write_fitted_config(dir);
  const auto r = run_cli(dir, "functional --name basic --tau 1000 --tau 2000 --tau 3000");
  REQUIRE(r.status == 0);
  std::istringstream in(r.out);
  std::string line;
  int data_rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++data_rows;
  }
  CHECK(data_rows == 3);
}

TEST_CASE("ladder prints ascending iterates") {
  const auto dir = fresh_dir("ladder");
  const auto r = run_cli(dir, "ladder --T 1000 --k 3 --out json");
  REQUIRE(r.status == 0);
  const auto doc = zetalab::reporting::Json::parse(r.out);
  const auto& it = doc["results"]["sequence"]["iterates"];
  REQUIRE(it.size() == 4);
  for (std::size_t i = 1; i < it.size(); ++i) CHECK(it[i].get<double>() > it[i - 1].get<double>());
}

TEST_CASE("fit stores a1..a4 in the config file") {
  const auto dir = fresh_dir("fit");
  const auto r = run_cli(dir, "fit --grid 500:2000:8");
  REQUIRE(r.status == 0);
  const std::string conf = read_file(dir / "zetalab.conf");
  for (const char* key : {"a1 = ", "a2 = ", "a3 = ", "a4 = "}) CHECK(conf.find(key) != std::string::npos);
  CHECK(run_cli(dir, "functional --name crossbreed --tau 1000").status == 0);
}

TEST_CASE("calibrate enables the S1 chain member") {
  const auto dir = fresh_dir("calibrate");
  write_fitted_config(dir);
  REQUIRE(run_cli(dir, "calibrate --tau-ref 1000").status == 0);
  CHECK(read_file(dir / "zetalab.conf").find("cbar.1 = ") != std::string::npos);
  const auto r = run_cli(dir, "chain --tau 1000 --tau 2000 --mode integral --out json");
  REQUIRE(r.status == 0);
  const auto doc = zetalab::reporting::Json::parse(r.out);
  CHECK(doc["errors"].empty());
}

TEST_CASE("fermat JSON reports every component") {
  const auto dir = fresh_dir("fermat");
  write_fitted_config(dir);
  const auto r = run_cli(dir, "fermat --triple 1 1 1 --n 3 --tau 300 --tau 450 --tau 600 --out json");
  REQUIRE(r.status == 0);
  const auto doc = zetalab::reporting::Json::parse(r.out);
  CHECK(doc["results"]["rational"] == "2");
  const auto& samples = doc["results"]["samples"];
  REQUIRE(samples.size() == 3);
  for (const auto& s : samples) {
    for (const char* key : {"ladder_lower", "ladder_upper", "sigma_integral", "crit2_integral",
                            "crit4_integral"}) {
      CHECK(s["components"].contains(key));
    }
  }
  CHECK(doc["results"].contains("verdict"));
}

}  // TEST_SUITE
