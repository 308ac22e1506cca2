#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace igam {

using node_t = std::int32_t;

struct Edge {
  node_t u;
  node_t v;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Per-node real vectors of a fixed dimension, stored row-major.
struct Coordinates {
  std::size_t dim = 0;
  std::vector<double> values;

  std::span<const double> of(node_t v) const {
    return {values.data() + static_cast<std::size_t>(v) * dim, dim};
  }
};

/// Simple graph in compressed sparse row form. Neighbor lists are sorted and
/// duplicate-free, self-loops never appear, and for undirected graphs the
/// adjacency is symmetric. For directed graphs the lists hold out-neighbors.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list, silently dropping self-loops and duplicates.
  /// Throws MalformedInput on negative ids or ids >= n when n is supplied.
  static Graph from_edges(std::span<const Edge> edges, std::optional<std::size_t> n = std::nullopt,
                          bool directed = false);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Undirected: number of unordered pairs. Directed: number of arcs.
  std::size_t edge_count() const { return directed_ ? adj_.size() : adj_.size() / 2; }
  bool directed() const { return directed_; }

  std::span<const node_t> neighbors(node_t v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(node_t v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(node_t u, node_t v) const;

  /// Undirected graphs list each edge once with u < v; sorted.
  std::vector<Edge> edges() const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  bool has_coordinates() const { return coords_.dim > 0; }
  const Coordinates& coordinates() const { return coords_; }
  void set_coordinates(Coordinates coords);

  /// Subgraph induced on `keep` (ascending ids); node keep[i] becomes i.
  Graph induced(std::span<const node_t> keep) const;

  /// Drops edge direction; identity for undirected graphs.
  Graph as_undirected() const;

  /// Reverses every arc; identity for undirected graphs.
  Graph reversed() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<node_t> adj_;
  bool directed_ = false;
  std::vector<std::string> labels_;
  Coordinates coords_;
};

inline Graph from_edge_list(std::span<const Edge> edges, std::optional<std::size_t> n = std::nullopt) {
  return Graph::from_edges(edges, n, false);
}

struct ComponentExtract {
  Graph graph;
  /// old id -> new id, -1 for nodes outside the component.
  std::vector<node_t> old_to_new;
};

/// Connected component labels (weak components for directed graphs);
/// components are numbered in order of their smallest node id.
std::vector<node_t> component_labels(const Graph& g);

/// Largest connected component; ties go to the one holding the smallest id.
ComponentExtract giant_component(const Graph& g);

bool is_connected(const Graph& g);

/// Exact diameter by breadth-first search from every node. Sources are
/// processed 64 at a time with bit-parallel frontiers, batches spread over
/// OpenMP threads. Throws DisconnectedGraph for disconnected input.
std::size_t diameter(const Graph& g);

/// Reference: one queue-based BFS per source, single thread.
std::size_t diameter_serial(const Graph& g);

/// Number of 3-cliques by sorted-list intersection, parallel over nodes.
std::int64_t count_triangles(const Graph& g);
std::int64_t count_triangles_serial(const Graph& g);

/// Paths on three vertices: sum over v of C(deg v, 2).
std::int64_t count_two_paths(const Graph& g);

/// Global clustering coefficient 3T / P (0 when P = 0).
double gcc(const Graph& g);

/// Closed-to-open triplet ratio T / P, the quantity bounded by O(c^-H).
double triplet_ratio(const Graph& g);

/// Proper node subset S with its complement implied.
class CutSpec {
 public:
  /// Throws InvalidCut if S is empty, equals V, or holds out-of-range ids.
  CutSpec(std::span<const node_t> members, std::size_t n);

  bool contains(node_t v) const { return member_[v] != 0; }
  std::size_t size() const { return size_; }
  std::size_t node_count() const { return member_.size(); }
  CutSpec complement() const;

 private:
  CutSpec() = default;
  std::vector<char> member_;
  std::size_t size_ = 0;
};

std::int64_t cut_edges(const Graph& g, const CutSpec& cut);

/// e(S, S') / min(|S|, |S'|): cut size over the smaller side's node count.
double conductance(const Graph& g, const CutSpec& cut);

}  // namespace igam
