#include "igam/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <unordered_map>

#include "igam/edge_list.hpp"
#include "igam/errors.hpp"

namespace igam {

const std::vector<DatasetSpec>& dataset_registry() {
  static const std::vector<DatasetSpec> registry = [] {
    std::vector<DatasetSpec> r = {
        {"world-trade", {}, 76, 845, false, false, false},
        {"cs-faculty", {}, 205, 2861, false, false, false},
        {"history-faculty", {}, 145, 2334, false, false, false},
        {"business-faculty", {}, 113, 3027, false, false, false},
        {"polblogs", {}, 852, 15956, false, false, false},
        {"airports", {}, 210, 2429, false, false, false},
        {"c-elegans", {}, 279, 1900, true, false, true},
        {"open-airlines", {}, 7200, 18600, true, false, true},
        {"london-underground", {}, 315, 270, true, true, false},
    };
    for (auto& s : r) s.source_path = std::filesystem::path(s.name) / "edges.txt";
    return r;
  }();
  return registry;
}

const DatasetSpec& find_dataset(const std::string& name) {
  for (const auto& s : dataset_registry())
    if (s.name == name) return s;
  throw InvalidParameter("unknown dataset '" + name + "'");
}

Preprocessed preprocess(const Graph& raw, bool skip_degree_filter, bool iterate) {
  Graph g = raw.as_undirected();
  const auto n = static_cast<node_t>(g.node_count());
  std::vector<char> alive(n, 1);
  if (!skip_degree_filter) {
    std::vector<std::size_t> deg(n);
    for (node_t v = 0; v < n; ++v) deg[v] = g.degree(v);
    for (;;) {
      std::vector<node_t> drop;
      for (node_t v = 0; v < n; ++v)
        if (alive[v] && deg[v] <= 4) drop.push_back(v);
      // one pass removes by the original degrees only
      for (node_t v : drop) alive[v] = 0;
      if (!iterate || drop.empty()) break;
      for (node_t v : drop)
        for (node_t u : g.neighbors(v))
          if (alive[u]) --deg[u];
    }
  }
  Preprocessed out;
  out.old_to_new.assign(n, -1);
  for (node_t v = 0; v < n; ++v)
    if (alive[v]) {
      out.old_to_new[v] = static_cast<node_t>(out.new_to_old.size());
      out.new_to_old.push_back(v);
    }
  if (out.new_to_old.empty()) throw EmptyGraph("no nodes survive preprocessing");
  out.graph = g.induced(out.new_to_old);
  return out;
}

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(e[-1]))) --e;
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

namespace {

/// Clears the coordinate table unless every node of `g` has a row.
void require_full_coordinates(Graph& g, std::span<const node_t> origin, const std::vector<char>& have,
                              std::vector<std::string>& warnings) {
  if (!g.has_coordinates()) return;
  std::size_t missing = 0;
  for (node_t v : origin) missing += !have[v];
  if (missing > 0) {
    warnings.push_back(std::to_string(missing) + " nodes lack coordinates; spatial data dropped");
    g.set_coordinates({});
  }
}

}  // namespace

RawGraph read_raw_graph(const std::filesystem::path& edges, IdMode mode, const LoadOptions& options,
                        std::size_t min_nodes) {
  const auto data = read_edge_list(edges, mode);
  const std::size_t n = std::max(data.node_count, min_nodes);
  RawGraph out;
  out.graph = Graph::from_edges(data.edges, n, false);
  for (node_t v = 0; v < static_cast<node_t>(n); ++v)
    out.ids.push_back(static_cast<std::size_t>(v) < data.node_count ? data.name_of(v) : std::to_string(v));
  std::unordered_map<std::string, node_t> index;
  for (node_t v = 0; v < static_cast<node_t>(n); ++v) index.emplace(out.ids[v], v);

  if (options.labels) {
    std::vector<std::string> labels = out.ids;
    for (const auto& row : read_csv_rows(*options.labels)) {
      if (row.size() < 2) continue;
      auto it = index.find(trim(row[0]));
      if (it != index.end()) labels[it->second] = trim(row[1]);
    }
    out.graph.set_labels(std::move(labels));
  }
  out.has_coordinates.assign(n, 0);
  if (options.coordinates) {
    Coordinates coords;
    for (const auto& row : read_csv_rows(*options.coordinates)) {
      if (row.size() < 3) continue;
      std::vector<double> xs;
      for (std::size_t i = 1; i < row.size(); ++i) {
        double x;
        if (!parse_double(row[i], x)) {
          xs.clear();
          break;
        }
        xs.push_back(x);
      }
      if (xs.empty()) continue;  // header
      if (coords.dim == 0) {
        coords.dim = xs.size();
        coords.values.assign(n * coords.dim, 0.0);
      }
      if (xs.size() != coords.dim) throw MalformedInput("coordinate rows differ in dimension");
      auto it = index.find(trim(row[0]));
      if (it == index.end()) continue;
      std::copy(xs.begin(), xs.end(), coords.values.begin() + static_cast<std::ptrdiff_t>(it->second * coords.dim));
      out.has_coordinates[it->second] = 1;
    }
    if (coords.dim > 0) out.graph.set_coordinates(std::move(coords));
  }
  return out;
}

LoadedGraph load_graph_file(const std::filesystem::path& edges, bool skip_degree_filter, const LoadOptions& options) {
  auto raw = read_raw_graph(edges, IdMode::Intern, options);
  LoadedGraph out;
  auto pre = preprocess(raw.graph, skip_degree_filter, options.iterate_filter);
  require_full_coordinates(pre.graph, pre.new_to_old, raw.has_coordinates, out.warnings);
  out.graph = std::move(pre.graph);
  for (node_t v : pre.new_to_old) out.raw_ids.push_back(raw.ids[v]);
  return out;
}

LoadedGraph load_raw_graph_file(const std::filesystem::path& edges, const LoadOptions& options, std::size_t min_nodes) {
  auto raw = read_raw_graph(edges, IdMode::Auto, options, min_nodes);
  LoadedGraph out;
  std::vector<node_t> all(raw.graph.node_count());
  std::iota(all.begin(), all.end(), 0);
  require_full_coordinates(raw.graph, all, raw.has_coordinates, out.warnings);
  out.graph = std::move(raw.graph);
  out.raw_ids = std::move(raw.ids);
  return out;
}

LoadedGraph load_dataset(const DatasetSpec& spec, const std::filesystem::path& data_dir, bool iterate_filter) {
  LoadOptions opt;
  opt.iterate_filter = iterate_filter;
  const auto base = data_dir / spec.name;
  if (std::filesystem::exists(base / "labels.csv")) opt.labels = base / "labels.csv";
  if (std::filesystem::exists(base / "coords.csv")) opt.coordinates = base / "coords.csv";
  auto out = load_graph_file(data_dir / spec.source_path, spec.skip_degree_filter, opt);
  out.delta_n = static_cast<long long>(out.graph.node_count()) - static_cast<long long>(spec.expected_n);
  out.delta_m = static_cast<long long>(out.graph.edge_count()) - static_cast<long long>(spec.expected_m);
  if (!matches_registry(spec, out))
    out.warnings.push_back(spec.name + ": size mismatch, n = " + std::to_string(out.graph.node_count()) + " (" +
                           (out.delta_n >= 0 ? "+" : "") + std::to_string(out.delta_n) +
                           "), m = " + std::to_string(out.graph.edge_count()) + " (" + (out.delta_m >= 0 ? "+" : "") +
                           std::to_string(out.delta_m) + ")");
  if (spec.has_coordinates && !out.graph.has_coordinates())
    out.warnings.push_back(spec.name + ": no usable coordinates");
  return out;
}

bool matches_registry(const DatasetSpec& spec, const LoadedGraph& loaded) {
  if (!spec.approximate) return loaded.delta_n == 0 && loaded.delta_m == 0;
  auto close = [](long long delta, std::size_t expected) {
    return std::abs(static_cast<double>(delta)) <= 0.1 * static_cast<double>(expected);
  };
  return close(loaded.delta_n, spec.expected_n) && close(loaded.delta_m, spec.expected_m);
}

void write_canonical(const std::filesystem::path& dir, const LoadedGraph& loaded) {
  std::filesystem::create_directories(dir);
  write_edge_list(dir / "edges.txt", loaded.graph);
  std::ofstream map(dir / "id_map.csv");
  if (!map) throw IoError("cannot write " + (dir / "id_map.csv").string());
  map << "new_id,raw_id\n";
  for (std::size_t i = 0; i < loaded.raw_ids.size(); ++i) map << i << ',' << loaded.raw_ids[i] << '\n';
}

std::vector<LevelLabels> core_labels_report(const Graph& g, const HeightAssignment& heights, int depth) {
  if (heights.node_count() != g.node_count()) throw MalformedInput("heights do not cover the graph");
  std::vector<LevelLabels> out;
  const int levels = std::min(depth, heights.max_height() + 1);
  for (int l = 0; l < levels; ++l) {
    std::vector<node_t> members;
    for (node_t v = 0; v < static_cast<node_t>(g.node_count()); ++v)
      if (heights[v] == l) members.push_back(v);
    std::stable_sort(members.begin(), members.end(),
                     [&](node_t a, node_t b) { return g.degree(a) > g.degree(b); });
    LevelLabels ll{l, {}};
    for (node_t v : members) ll.labels.push_back(g.has_labels() ? g.labels()[v] : std::to_string(v));
    out.push_back(std::move(ll));
  }
  return out;
}

const std::vector<std::vector<std::string>>* reference_core_labels(const std::string& dataset) {
  using Levels = std::vector<std::vector<std::string>>;
  static const std::map<std::string, Levels> lists = {
      {"world-trade",
       {{"Finland"},
        {"Hungary", "Slovenia", "Singapore", "Chile"},
        {"Salvador", "Iceland", "Kuwait", "Rep.", "Belgium", "Poland", "Moldava.", "Austria", "Germany", "Indonesia",
         "Guatemala", "Bolivia", "Paraguay", "Australia", "Africa", "Of"}}},
      {"london-underground",
       {{"Bank"},
        {"Baker Street", "Canning Town"},
        {"Kings Cross St. Pancras", "Stratford", "Willesden Junction", "Earls Court"}}},
      {"open-airlines", {{"AMS"}, {"FRA", "CDG"}, {"IST", "MUC", "ATL", "PEK"}}},
      {"cs-faculty",
       {{"All others"},
        {"University of Illinois, Urbana Champaign", "MIT"},
        {"Purdue University", "University of Texas, Austin", "Carnegie Mellon University", "Stanford University"}}},
      {"history-faculty",
       {{"All others"},
        {"Harvard University", "Yale University", "University of Chicago", "University of Wisconsin, Madison",
         "Columbia University"},
        {"UC Berkeley",
         "UCLA",
         "Princeton University",
         "University of Michigan",
         "University of Pennsylvania",
         "Stanford University",
         "Johns Hopkins University",
         "Rutgers University",
         "University of Virginia",
         "Cornell University",
         "University of Texas, Austin",
         "New York University",
         "Indiana University",
         "Northwestern University",
         "Ohio State University",
         "University of Illinois, Urbana Champaign",
         "University of North Carolina, Chapel Hill",
         "Duke University",
         "Brown University",
         "University of Minnesota, Minneapolis",
         "Michigan State University",
         "UC San Diego",
         "UC Santa Barbara",
         "Brandeis University",
         "University of Washington"}}},
      {"business-faculty",
       {{"All others"},
        {"University of Michigan", "University of Texas, Austin"},
        {"Ohio State University", "Indiana University", "Pennsylvania State University",
         "University of Pennsylvania"}}},
  };
  auto it = lists.find(dataset);
  return it == lists.end() ? nullptr : &it->second;
}

namespace {

std::string normalize(const std::string& s) {
  std::string out = " ";
  for (unsigned char ch : s) {
    if (std::isalnum(ch)) {
      out.push_back(static_cast<char>(std::tolower(ch)));
    } else if (out.back() != ' ') {
      out.push_back(' ');
    }
  }
  if (out.back() != ' ') out.push_back(' ');
  return out;
}

}  // namespace

double core_label_overlap(const std::vector<LevelLabels>& report,
                          const std::vector<std::vector<std::string>>& reference) {
  std::vector<std::string> seen;
  for (const auto& level : report)
    for (const auto& l : level.labels) seen.push_back(normalize(l));
  std::size_t total = 0, hit = 0;
  for (const auto& level : reference)
    for (const auto& entry : level) {
      ++total;
      const auto key = normalize(entry);
      // whole-word containment; truncated names like "Rep." still match
      if (std::any_of(seen.begin(), seen.end(), [&](const std::string& s) { return s.find(key) != std::string::npos; }))
        ++hit;
    }
  return total == 0 ? 0.0 : static_cast<double>(hit) / static_cast<double>(total);
}

}  // namespace igam
