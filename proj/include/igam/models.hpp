#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "igam/graph.hpp"

namespace igam {

/// Influencer-guided attachment: perfect b-ary skeleton of height H, pair
/// (u, v) linked with probability c^(-1 - min(h(u), h(v))).
struct IgamParams {
  int b = 3;
  double c = 2.0;
  int H = 4;

  /// Throws InvalidParameter unless b >= 2, H >= 0 and 1 < c < b.
  void validate() const;
};

/// Two-regime law: scale c1 inside the core (both heights <= H0), c2 otherwise.
struct Igam2Params {
  int b = 3;
  double c1 = 1.5;
  double c2 = 2.5;
  int H0 = 2;
  int H = 6;

  /// Requires 1 < c1 < c2 < b and 0 < H0 < H. With `allow_equal_scales`
  /// c1 == c2 is accepted (the law then reduces to the single-scale one).
  void validate(bool allow_equal_scales = false) const;
};

/// Power-mean smoothing of the min in the exponent.
struct DeltaIgamParams {
  IgamParams base;
  double delta = -10.0;

  void validate() const;
};

/// Node -> tree level. Level h holds b^h nodes except possibly the last one.
class HeightAssignment {
 public:
  HeightAssignment() = default;

  /// Perfect tree of height H with breadth-first (level-order) node ids.
  static HeightAssignment perfect_tree(int b, int H);

  /// Walks `order` handing the next b^h nodes to level h; the last level may
  /// be incomplete. `order` must be a permutation of 0..n-1.
  static HeightAssignment from_order(std::span<const node_t> order, int b);

  /// Validates that level sizes follow the b-ary layout.
  static HeightAssignment from_heights(std::vector<int> heights, int b);

  int fanout() const { return b_; }
  /// Index of the deepest populated level.
  int max_height() const { return static_cast<int>(level_sizes_.size()) - 1; }
  std::size_t node_count() const { return heights_.size(); }
  int operator[](node_t v) const { return heights_[v]; }
  std::span<const int> heights() const { return heights_; }
  const std::vector<std::int64_t>& level_sizes() const { return level_sizes_; }

  /// Exchanges the heights of two nodes; level sizes are unchanged.
  void swap_nodes(node_t u, node_t v) { std::swap(heights_[u], heights_[v]); }

 private:
  int b_ = 2;
  std::vector<int> heights_;
  std::vector<std::int64_t> level_sizes_;
};

/// (b^(H+1) - 1) / (b - 1). Throws InvalidParameter when it overflows.
std::int64_t full_tree_node_count(int b, int H);

/// b^h for h = 0..H.
std::vector<std::int64_t> full_level_sizes(int b, int H);

double edge_probability(const IgamParams& p, int hu, int hv);
double edge_probability_igam2(const Igam2Params& p, int hu, int hv);

/// c^(-1 - M_delta(hu, hv)) with the power mean ((hu^d + hv^d) / 2)^(1/d).
/// For delta < 0 a zero height makes the mean singular; the delta -> -inf
/// limit c^(-1 - min) is returned there.
double edge_probability_delta(const DeltaIgamParams& p, double hu, double hv);

/// Real-valued heights (continuous model), law c^(-1 - min).
double edge_probability_continuous(const IgamParams& p, double hu, double hv);

/// Directed extension: probability of the arc source -> target is
/// c^(-1 - h(target)), i.e. arcs toward prestigious nodes are likelier.
double directed_edge_probability(const IgamParams& p, int h_source, int h_target);

/// sum_{r=0}^{H} b^r c^(-min(h, r) - 1), counting the node's own level in full.
double expected_degree(const IgamParams& p, int h);

/// expected_degree minus the self-pair term c^(-1-h).
double expected_degree_exact(const IgamParams& p, int h);

/// Expected number of edges over unordered distinct pairs.
double expected_edges(const IgamParams& p);

/// 1/2 sum_h b^h expected_degree(h), including the self-pair terms.
double expected_edges_with_self_terms(const IgamParams& p);

/// log of prod_{r=0}^{tau} (1 - c^(-r-1))^(b^r): probability that a node
/// below level tau has no neighbor among levels 0..tau.
double log_undominated_probability(const IgamParams& p, int tau);

/// log of the Markov bound sum_{h=tau+1}^{H} b^h q_tau (-inf when empty).
double log_domination_failure_bound(const IgamParams& p, int tau);

/// Smallest tau with failure bound <= b^-H; H when nothing smaller works.
int domination_level(const IgamParams& p);

/// Expected counts over unordered node triples grouped by level multiset.
/// `law(r, s)` is the pair probability between levels r and s.
double expected_triangles(std::span<const std::int64_t> level_sizes,
                          const std::function<double(int, int)>& law);
double expected_two_paths(std::span<const std::int64_t> level_sizes,
                          const std::function<double(int, int)>& law);
double expected_triangles(const IgamParams& p);
double expected_two_paths(const IgamParams& p);

/// Expected e(S_tau, complement) with S_tau the levels 0..tau.
double expected_cut_edges(const IgamParams& p, int tau);

/// (round(b^alpha), c^alpha, H); throws InvalidParameter when the result
/// breaks b >= 2 or 1 < c < b.
IgamParams rescale(const IgamParams& p, double alpha);

/// Inverse-CDF draw: h = log_b(1 + u (b^H - 1)).
double continuous_height_from_uniform(const IgamParams& p, double u);
/// (b^t - 1) / (b^H - 1) clamped to [0, 1].
double continuous_height_cdf(const IgamParams& p, double t);
std::vector<double> sample_continuous_heights(const IgamParams& p, std::size_t n, std::uint64_t seed);

}  // namespace igam
