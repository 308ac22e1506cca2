#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "igam/datasets.hpp"
#include "igam/errors.hpp"
#include "oracles.hpp"

using namespace igam;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / "igam_unit" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

std::vector<Edge> clique(int lo, int hi) {
  std::vector<Edge> e;
  for (int u = lo; u < hi; ++u)
    for (int v = u + 1; v < hi; ++v) e.push_back({u, v});
  return e;
}

std::string clique_text(int n, const std::string& prefix = "") {
  std::string s;
  for (const auto& e : clique(0, n)) s += prefix + std::to_string(e.u) + " " + prefix + std::to_string(e.v) + "\n";
  return s;
}

}  // namespace

TEST_SUITE("data-ingest") {

TEST_CASE("registry") {
  CHECK(dataset_registry().size() == 9);
  CHECK(find_dataset("world-trade").expected_m == 845);
  CHECK(find_dataset("cs-faculty").expected_n == 205);
  CHECK(find_dataset("london-underground").skip_degree_filter);
  CHECK(find_dataset("c-elegans").has_coordinates);
  CHECK(find_dataset("polblogs").source_path == fs::path("polblogs") / "edges.txt");
  CHECK_THROWS_AS(find_dataset("nope"), InvalidParameter);
}

TEST_CASE("directed input is symmetrized without duplicates") {
  std::vector<Edge> e{{0, 1}, {1, 0}, {1, 2}};
  const auto g = Graph::from_edges(e, 3, true);
  const auto p = preprocess(g, true);
  CHECK_FALSE(p.graph.directed());
  CHECK(p.graph.edge_count() == 2);
  CHECK(p.graph.has_edge(2, 1));
}

TEST_CASE("star with four leaves leaves nothing") {
  std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  CHECK_THROWS_AS(preprocess(Graph::from_edges(e, 5), false), EmptyGraph);
  CHECK(preprocess(Graph::from_edges(e, 5), true).graph.node_count() == 5);
}

TEST_CASE("filter keeps degree five and reindexes densely") {
  auto e = clique(0, 6);
  e.push_back({6, 0});
  const auto p = preprocess(Graph::from_edges(e, 8), false);
  CHECK(p.graph.node_count() == 6);
  CHECK(p.old_to_new[6] == -1);
  CHECK(p.old_to_new[7] == -1);
  CHECK(p.new_to_old == std::vector<node_t>{0, 1, 2, 3, 4, 5});
  CHECK(p.graph.edge_count() == 15);
}

TEST_CASE("single pass is not idempotent; iterated filtering is") {
  // node 6 has degree 5 before the pass but only one surviving neighbour
  auto e = clique(0, 6);
  e.push_back({6, 0});
  for (int leaf = 7; leaf <= 10; ++leaf) e.push_back({6, leaf});
  const auto g = Graph::from_edges(e, 11);
  const auto once = preprocess(g, false);
  CHECK(once.graph.node_count() == 7);
  CHECK(preprocess(once.graph, false).graph.node_count() == 6);
  CHECK(preprocess(g, false, true).graph.node_count() == 6);

  for (int trial = 0; trial < 40; ++trial) {
    const auto r = oracle::erdos_renyi(80, 0.07, 50 + trial);
    Preprocessed a;
    try {
      a = preprocess(r, false, true);
    } catch (const EmptyGraph&) {
      continue;
    }
    const auto b = preprocess(a.graph, false, true);
    CHECK(b.graph.node_count() == a.graph.node_count());
    CHECK(b.graph.edges() == a.graph.edges());
    for (node_t v = 0; v < a.graph.node_count(); ++v) CHECK(a.graph.degree(v) > 4);
  }
}

TEST_CASE("loading with labels and coordinates") {
  const auto dir = fresh_dir("load");
  put(dir / "edges.txt", clique_text(6, "n") + "n0 x\n");
  put(dir / "labels.csv", "node_id,label\nn0,Alpha\nn1,\"Beta, Inc\"\nx,Gone\n");
  std::string coords = "node_id,x,y\n";
  for (int i = 0; i < 6; ++i) coords += "n" + std::to_string(i) + "," + std::to_string(i) + ",0\n";
  put(dir / "coords.csv", coords);
  LoadOptions opt;
  opt.labels = dir / "labels.csv";
  opt.coordinates = dir / "coords.csv";
  const auto l = load_graph_file(dir / "edges.txt", false, opt);
  CHECK(l.graph.node_count() == 6);
  CHECK(l.raw_ids[0] == "n0");
  REQUIRE(l.graph.has_labels());
  CHECK(l.graph.labels()[1] == "Beta, Inc");
  REQUIRE(l.graph.has_coordinates());
  CHECK(l.graph.coordinates().of(3)[0] == 3.0);
  CHECK(l.warnings.empty());
}

TEST_CASE("coordinates are dropped with a warning when a node lacks them") {
  const auto dir = fresh_dir("partial");
  put(dir / "edges.txt", clique_text(6));
  put(dir / "coords.csv", "node_id,x,y\n0,1,1\n1,2,2\n");
  LoadOptions opt;
  opt.coordinates = dir / "coords.csv";
  const auto l = load_graph_file(dir / "edges.txt", false, opt);
  CHECK_FALSE(l.graph.has_coordinates());
  CHECK(l.warnings.size() == 1);
}

TEST_CASE("raw loading keeps integer ids and isolated nodes") {
  const auto dir = fresh_dir("raw");
  put(dir / "edges.txt", "0 3\n");
  const auto l = load_raw_graph_file(dir / "edges.txt", {}, 6);
  CHECK(l.graph.node_count() == 6);
  CHECK(l.graph.has_edge(0, 3));
  CHECK_THROWS_AS(load_graph_file(dir / "missing.txt", false), IoError);
}

TEST_CASE("size mismatch against the registry warns but loads") {
  const auto dir = fresh_dir("data");
  put(dir / "world-trade" / "edges.txt", clique_text(7));
  const auto& spec = find_dataset("world-trade");
  const auto l = load_dataset(spec, dir);
  CHECK(l.graph.node_count() == 7);
  CHECK(l.delta_n == 7 - 76);
  CHECK(l.delta_m == 21 - 845);
  CHECK(l.warnings.size() == 1);
  CHECK_FALSE(matches_registry(spec, l));
  CHECK_THROWS_AS(load_dataset(find_dataset("polblogs"), dir), IoError);
}

TEST_CASE("approximate registry entries tolerate ten percent") {
  DatasetSpec spec{"t", "t/edges.txt", 100, 1000, false, false, true};
  LoadedGraph l;
  l.delta_n = -5;
  l.delta_m = 35;
  CHECK(matches_registry(spec, l));
  spec.approximate = false;
  CHECK_FALSE(matches_registry(spec, l));
}

TEST_CASE("canonical replay files") {
  const auto dir = fresh_dir("canon");
  put(dir / "edges.txt", clique_text(6, "v"));
  const auto l = load_graph_file(dir / "edges.txt", false);
  write_canonical(dir / "out", l);
  std::ifstream map(dir / "out" / "id_map.csv");
  std::string header, first;
  std::getline(map, header);
  std::getline(map, first);
  CHECK(header == "new_id,raw_id");
  CHECK(first == "0,v0");
  CHECK(fs::exists(dir / "out" / "edges.txt"));
}

TEST_CASE("core label report") {
  auto e = clique(0, 4);
  e.push_back({3, 4});
  auto g = Graph::from_edges(e, 5);
  const auto h = HeightAssignment::from_heights({1, 0, 1, 2, 2}, 2);
  const auto numeric = core_labels_report(g, h, 2);
  REQUIRE(numeric.size() == 2);
  CHECK(numeric[0].labels == std::vector<std::string>{"1"});
  // node 2 and node 0 share degree 3; ascending id breaks the tie
  CHECK(numeric[1].labels == std::vector<std::string>{"0", "2"});
  g.set_labels({"Zero", "One", "Two", "Three", "Four"});
  const auto named = core_labels_report(g, h, 3);
  CHECK(named[2].labels == std::vector<std::string>{"Three", "Four"});
}

TEST_CASE("core label overlap") {
  std::vector<LevelLabels> report{{0, {"University of Texas, Austin"}}, {1, {"Stanford", "MIT"}}};
  const std::vector<std::vector<std::string>> ref{{"Texas"}, {"mit", "Berkeley"}};
  CHECK(core_label_overlap(report, ref) == doctest::Approx(2.0 / 3.0));
  CHECK(core_label_overlap(report, {}) == 0.0);
  CHECK(reference_core_labels("world-trade") != nullptr);
  CHECK(reference_core_labels("polblogs") == nullptr);
}

}
