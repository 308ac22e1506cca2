#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "igam/models.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(IGAM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path fresh(const std::string& name) {
  auto dir = fs::temp_directory_path() / "igam_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("generate is byte-identical across reruns") {
  const auto a = fresh("gen_a"), b = fresh("gen_b");
  const std::string args = "generate --variant igam --b 3 --c 2 --H 4 --seed 1";
  REQUIRE(run("-o " + a.string() + " " + args) == 0);
  REQUIRE(run("-o " + b.string() + " " + args) == 0);
  for (const char* f : {"edges.txt", "heights.txt", "stats.json", "adjacency.svg"}) {
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
}

TEST_CASE("generated edge count sits near its expectation") {
  const igam::IgamParams p{3, 2.0, 5};
  const double mean = igam::expected_edges(p);
  // pairs are independent, so the variance is at most the mean
  const double sd = std::sqrt(mean);
  for (int seed : {1, 2, 3}) {
    const auto dir = fresh("gen_m" + std::to_string(seed));
    REQUIRE(run("-o " + dir.string() + " generate --b 3 --c 2 --H 5 --no-plot --seed " + std::to_string(seed)) == 0);
    const auto stats = json::parse(slurp(dir / "stats.json"));
    CHECK(stats["n"] == 364);
    CHECK(std::abs(stats["m"].get<double>() - mean) < 5 * sd);
    CHECK(stats["levels"].size() == 6);
    CHECK(stats.contains("gcc"));
    CHECK(stats["giant_component"].contains("diameter"));
  }
}

TEST_CASE("two-regime generation writes an adjacency map") {
  const auto dir = fresh("gen2");
  REQUIRE(run("-o " + dir.string() + " generate --variant igam2 --b 3 --c1 1.5 --c2 2.5 --H0 2 --H 6") == 0);
  const auto svg = slurp(dir / "adjacency.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("igam-data") != std::string::npos);
}

TEST_CASE("exit codes") {
  const auto dir = fresh("codes");
  { std::ofstream(dir / "pair.txt") << "0 1\n"; }
  CHECK(run("-o " + dir.string() + " fit " + (dir / "pair.txt").string()) == 2);
  CHECK(run("-o " + dir.string() + " fit " + (dir / "absent.txt").string()) == 1);
  CHECK(run("-o " + dir.string() + " generate --b 3 --c 3.5 --H 3") == 3);
  CHECK(run("-o " + dir.string() + " generate --bogus") == 3);
  CHECK(run("-o " + dir.string() + " dominate --strategy nope " + (dir / "pair.txt").string()) == 3);
  { std::ofstream(dir / "bad.txt") << "0 1\n2\n"; }
  CHECK(run("-o " + dir.string() + " fit " + (dir / "bad.txt").string()) == 1);
}

TEST_CASE("config file overrides flags") {
  const auto dir = fresh("config");
  { std::ofstream(dir / "cfg.json") << R"({"H": 2, "seed": 9})"; }
  REQUIRE(run("-o " + dir.string() + " --config " + (dir / "cfg.json").string() +
              " generate --b 3 --c 2 --H 5 --seed 1 --no-plot") == 0);
  const auto stats = json::parse(slurp(dir / "stats.json"));
  CHECK(stats["n"] == 13);
  CHECK(stats["seed"] == 9);
}

TEST_CASE("output directory from the environment") {
  const auto dir = fresh("env");
  const std::string cmd =
      "IGAM_OUT_DIR=" + dir.string() + " " + IGAM_CLI_PATH + " generate --b 2 --c 1.5 --H 3 --no-plot >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "stats.json"));
}

TEST_CASE("edgeless graph dominates one node per pick") {
  const auto dir = fresh("edgeless");
  { std::ofstream(dir / "empty.txt") << "# no edges\n"; }
  REQUIRE(run("-o " + dir.string() + " dominate --strategy greedy --nodes 10 --no-plot " +
              (dir / "empty.txt").string()) == 0);
  const auto e = json::parse(slurp(dir / "exponent.json"));
  CHECK(e["p"].get<double>() == doctest::Approx(std::log(8.0) / std::log(10.0)));
  const auto curve = slurp(dir / "curve.csv");
  CHECK(curve.find("1,0.1\n") != std::string::npos);
  CHECK(curve.find("10,1\n") != std::string::npos);
}

TEST_CASE("generate, fit and dominate chain together") {
  const auto dir = fresh("chain");
  REQUIRE(run("-o " + dir.string() + " generate --b 3 --c 2 --H 5 --seed 4 --no-plot") == 0);
  const auto edges = (dir / "edges.txt").string();
  REQUIRE(run("-o " + dir.string() + " fit --b-max 20 " + edges) == 0);
  const auto f = json::parse(slurp(dir / "fit.json"));
  CHECK(f["c"].get<double>() > 1.0);
  CHECK(f["c"].get<double>() < f["b"].get<double>());
  CHECK(fs::exists(dir / "fitted_heights.txt"));
  CHECK(fs::exists(dir / "fit.svg"));
  REQUIRE(run("-o " + dir.string() + " dominate --strategy prestige --joint --heights " +
              (dir / "heights.txt").string() + " " + edges) == 0);
  const auto e = json::parse(slurp(dir / "exponent.json"));
  CHECK(e["p"].get<double>() < 1.0);
  CHECK(fs::exists(dir / "joint.svg"));
  REQUIRE(run("-o " + dir.string() + " visualize --heights " + (dir / "heights.txt").string() + " " + edges) == 0);
  CHECK(fs::exists(dir / "layers.svg"));
}

}
