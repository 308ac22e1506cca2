#include "igam/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <queue>

#include <omp.h>

#include "igam/errors.hpp"

namespace igam {

Graph Graph::from_edges(std::span<const Edge> edges, std::optional<std::size_t> n, bool directed) {
  std::size_t count = n.value_or(0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0) throw MalformedInput("negative node id in edge list");
    if (n) {
      if (static_cast<std::size_t>(e.u) >= *n || static_cast<std::size_t>(e.v) >= *n)
        throw MalformedInput("node id " + std::to_string(std::max(e.u, e.v)) +
                             " out of range for n = " + std::to_string(*n));
    } else {
      count = std::max(count, static_cast<std::size_t>(std::max(e.u, e.v)) + 1);
    }
  }

  Graph g;
  g.directed_ = directed;
  std::vector<std::size_t> deg(count + 1, 0);
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    ++deg[e.u];
    if (!directed) ++deg[e.v];
  }
  std::vector<std::size_t> start(count + 1, 0);
  for (std::size_t v = 0; v < count; ++v) start[v + 1] = start[v] + deg[v];
  std::vector<node_t> raw(start[count]);
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    raw[fill[e.u]++] = e.v;
    if (!directed) raw[fill[e.v]++] = e.u;
  }

  g.offsets_.assign(count + 1, 0);
  g.adj_.reserve(raw.size());
  for (std::size_t v = 0; v < count; ++v) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(start[v]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(start[v + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    g.adj_.insert(g.adj_.end(), first, last);
    g.offsets_[v + 1] = g.adj_.size();
  }
  return g;
}

bool Graph::has_edge(node_t u, node_t v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (node_t u = 0; u < static_cast<node_t>(node_count()); ++u)
    for (node_t v : neighbors(u))
      if (directed_ || u < v) out.push_back({u, v});
  return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != node_count())
    throw MalformedInput("label count does not match node count");
  labels_ = std::move(labels);
}

void Graph::set_coordinates(Coordinates coords) {
  if (coords.dim > 0 && coords.values.size() != coords.dim * node_count())
    throw MalformedInput("coordinate table does not match node count");
  coords_ = std::move(coords);
}

Graph Graph::induced(std::span<const node_t> keep) const {
  std::vector<node_t> remap(node_count(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) remap[keep[i]] = static_cast<node_t>(i);
  std::vector<Edge> kept;
  for (node_t u : keep)
    for (node_t v : neighbors(u))
      if (remap[v] >= 0 && (directed_ || u < v)) kept.push_back({remap[u], remap[v]});
  Graph out = from_edges(kept, keep.size(), directed_);
  if (has_labels()) {
    std::vector<std::string> l;
    l.reserve(keep.size());
    for (node_t v : keep) l.push_back(labels_[v]);
    out.labels_ = std::move(l);
  }
  if (has_coordinates()) {
    Coordinates c{coords_.dim, {}};
    c.values.reserve(keep.size() * coords_.dim);
    for (node_t v : keep) {
      auto x = coords_.of(v);
      c.values.insert(c.values.end(), x.begin(), x.end());
    }
    out.coords_ = std::move(c);
  }
  return out;
}

Graph Graph::as_undirected() const {
  if (!directed_) return *this;
  auto e = edges();
  Graph out = from_edges(e, node_count(), false);
  out.labels_ = labels_;
  out.coords_ = coords_;
  return out;
}

Graph Graph::reversed() const {
  if (!directed_) return *this;
  auto e = edges();
  for (auto& x : e) std::swap(x.u, x.v);
  Graph out = from_edges(e, node_count(), true);
  out.labels_ = labels_;
  out.coords_ = coords_;
  return out;
}

std::vector<node_t> component_labels(const Graph& g) {
  const Graph* view = &g;
  Graph sym;
  if (g.directed()) {
    sym = g.as_undirected();
    view = &sym;
  }
  const auto n = static_cast<node_t>(g.node_count());
  std::vector<node_t> label(n, -1);
  std::vector<node_t> stack;
  node_t next = 0;
  for (node_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      node_t u = stack.back();
      stack.pop_back();
      for (node_t v : view->neighbors(u))
        if (label[v] < 0) {
          label[v] = next;
          stack.push_back(v);
        }
    }
    ++next;
  }
  return label;
}

ComponentExtract giant_component(const Graph& g) {
  auto label = component_labels(g);
  const auto k = label.empty() ? 0 : static_cast<std::size_t>(*std::max_element(label.begin(), label.end())) + 1;
  std::vector<std::size_t> size(k, 0);
  for (auto l : label) ++size[l];
  // Components are numbered by smallest member, so the first maximum wins ties.
  const auto best = static_cast<node_t>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<node_t> keep;
  for (node_t v = 0; v < static_cast<node_t>(label.size()); ++v)
    if (label[v] == best) keep.push_back(v);
  ComponentExtract out;
  out.old_to_new.assign(g.node_count(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) out.old_to_new[keep[i]] = static_cast<node_t>(i);
  out.graph = g.induced(keep);
  return out;
}

bool is_connected(const Graph& g) {
  if (g.node_count() <= 1) return true;
  auto label = component_labels(g);
  return std::all_of(label.begin(), label.end(), [](node_t l) { return l == 0; });
}

namespace {

void require_connected(const Graph& g) {
  if (g.node_count() == 0) throw EmptyGraph("diameter of an empty graph");
  if (g.directed()) throw UnsupportedOperation("diameter expects an undirected graph");
  if (!is_connected(g))
    throw DisconnectedGraph("graph is disconnected; extract the giant component first");
}

std::size_t batch_eccentricity(const Graph& g, node_t first, std::vector<std::uint64_t>& visited,
                               std::vector<std::uint64_t>& frontier, std::vector<std::uint64_t>& next) {
  const auto n = static_cast<node_t>(g.node_count());
  const node_t last = std::min<node_t>(n, first + 64);
  std::fill(visited.begin(), visited.end(), 0);
  std::fill(frontier.begin(), frontier.end(), 0);
  for (node_t s = first; s < last; ++s) {
    const std::uint64_t bit = std::uint64_t{1} << (s - first);
    visited[s] |= bit;
    frontier[s] |= bit;
  }
  std::size_t depth = 0;
  for (;;) {
    bool any = false;
    for (node_t v = 0; v < n; ++v) {
      std::uint64_t acc = 0;
      for (node_t u : g.neighbors(v)) acc |= frontier[u];
      acc &= ~visited[v];
      next[v] = acc;
      any |= acc != 0;
    }
    if (!any) break;
    ++depth;
    for (node_t v = 0; v < n; ++v) visited[v] |= next[v];
    frontier.swap(next);
  }
  return depth;
}

}  // namespace

std::size_t diameter(const Graph& g) {
  require_connected(g);
  const auto n = static_cast<node_t>(g.node_count());
  const node_t batches = (n + 63) / 64;
  std::size_t best = 0;
#pragma omp parallel reduction(max : best)
  {
    std::vector<std::uint64_t> visited(n), frontier(n), next(n);
#pragma omp for schedule(dynamic, 1)
    for (node_t b = 0; b < batches; ++b)
      best = std::max(best, batch_eccentricity(g, b * 64, visited, frontier, next));
  }
  return best;
}

std::size_t diameter_serial(const Graph& g) {
  require_connected(g);
  const auto n = static_cast<node_t>(g.node_count());
  std::vector<std::int32_t> dist(n);
  std::queue<node_t> q;
  std::size_t best = 0;
  for (node_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      node_t u = q.front();
      q.pop();
      for (node_t v : g.neighbors(u))
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          best = std::max<std::size_t>(best, static_cast<std::size_t>(dist[v]));
          q.push(v);
        }
    }
  }
  return best;
}

namespace {

void require_undirected(const Graph& g, const char* what) {
  if (g.directed()) throw UnsupportedOperation(std::string(what) + " is defined for undirected graphs only");
}

}  // namespace

std::int64_t count_triangles(const Graph& g) {
  require_undirected(g, "triangle counting");
  const auto n = static_cast<node_t>(g.node_count());
  std::int64_t total = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total)
  for (node_t u = 0; u < n; ++u) {
    auto nu = g.neighbors(u);
    auto vit = std::upper_bound(nu.begin(), nu.end(), u);
    for (auto it = vit; it != nu.end(); ++it) {
      const node_t v = *it;
      auto nv = g.neighbors(v);
      // w > v on both lists
      auto a = it + 1;
      auto b = std::upper_bound(nv.begin(), nv.end(), v);
      while (a != nu.end() && b != nv.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++total;
          ++a;
          ++b;
        }
      }
    }
  }
  return total;
}

std::int64_t count_triangles_serial(const Graph& g) {
  require_undirected(g, "triangle counting");
  const auto n = static_cast<node_t>(g.node_count());
  std::vector<char> mark(n, 0);
  std::int64_t total = 0;
  for (node_t u = 0; u < n; ++u) {
    for (node_t v : g.neighbors(u)) mark[v] = 1;
    for (node_t v : g.neighbors(u)) {
      if (v <= u) continue;
      for (node_t w : g.neighbors(v))
        if (w > v && mark[w]) ++total;
    }
    for (node_t v : g.neighbors(u)) mark[v] = 0;
  }
  return total;
}

std::int64_t count_two_paths(const Graph& g) {
  require_undirected(g, "two-path counting");
  std::int64_t total = 0;
  for (node_t v = 0; v < static_cast<node_t>(g.node_count()); ++v) {
    const auto d = static_cast<std::int64_t>(g.degree(v));
    total += d * (d - 1) / 2;
  }
  return total;
}

double gcc(const Graph& g) {
  const auto paths = count_two_paths(g);
  if (paths == 0) return 0.0;
  return 3.0 * static_cast<double>(count_triangles(g)) / static_cast<double>(paths);
}

double triplet_ratio(const Graph& g) {
  const auto paths = count_two_paths(g);
  if (paths == 0) return 0.0;
  return static_cast<double>(count_triangles(g)) / static_cast<double>(paths);
}

CutSpec::CutSpec(std::span<const node_t> members, std::size_t n) : member_(n, 0) {
  for (node_t v : members) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw InvalidCut("cut member out of range");
    if (!member_[v]) {
      member_[v] = 1;
      ++size_;
    }
  }
  if (size_ == 0) throw InvalidCut("cut set is empty");
  if (size_ == n) throw InvalidCut("cut set covers every node");
}

CutSpec CutSpec::complement() const {
  CutSpec c;
  c.member_.resize(member_.size());
  for (std::size_t i = 0; i < member_.size(); ++i) c.member_[i] = member_[i] ? 0 : 1;
  c.size_ = member_.size() - size_;
  return c;
}

std::int64_t cut_edges(const Graph& g, const CutSpec& cut) {
  require_undirected(g, "conductance");
  if (cut.node_count() != g.node_count()) throw InvalidCut("cut was built for a different node count");
  std::int64_t crossing = 0;
  for (node_t u = 0; u < static_cast<node_t>(g.node_count()); ++u) {
    if (!cut.contains(u)) continue;
    for (node_t v : g.neighbors(u))
      if (!cut.contains(v)) ++crossing;
  }
  return crossing;
}

double conductance(const Graph& g, const CutSpec& cut) {
  const auto crossing = cut_edges(g, cut);
  const auto smaller = std::min(cut.size(), cut.node_count() - cut.size());
  return static_cast<double>(crossing) / static_cast<double>(smaller);
}

}  // namespace igam
