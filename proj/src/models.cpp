#include "igam/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "igam/errors.hpp"
#include "igam/rng.hpp"

namespace igam {

namespace {

std::string fmt(double x) { return std::to_string(x); }

void check_level(int h, int H) {
  if (h < 0 || h > H)
    throw InvalidParameter("level " + std::to_string(h) + " outside [0, " + std::to_string(H) + "]");
}

}  // namespace

void IgamParams::validate() const {
  if (b < 2) throw InvalidParameter("fanout b must be >= 2, got " + std::to_string(b));
  if (H < 0) throw InvalidParameter("height H must be >= 0, got " + std::to_string(H));
  if (!(c > 1.0 && c < static_cast<double>(b)))
    throw InvalidParameter("scale c must lie in (1, b), got c = " + fmt(c));
}

void Igam2Params::validate(bool allow_equal_scales) const {
  if (b < 2) throw InvalidParameter("fanout b must be >= 2");
  if (!(c1 > 1.0)) throw InvalidParameter("c1 must exceed 1");
  if (allow_equal_scales ? !(c1 <= c2) : !(c1 < c2)) throw InvalidParameter("c1 must be below c2");
  if (!(c2 < static_cast<double>(b))) throw InvalidParameter("c2 must be below b");
  if (!(H0 > 0 && H0 < H)) throw InvalidParameter("core threshold H0 must satisfy 0 < H0 < H");
}

void DeltaIgamParams::validate() const {
  base.validate();
  if (delta == 0.0 || !std::isfinite(delta)) throw InvalidParameter("delta must be finite and nonzero");
}

HeightAssignment HeightAssignment::perfect_tree(int b, int H) {
  const auto sizes = full_level_sizes(b, H);
  HeightAssignment a;
  a.b_ = b;
  a.level_sizes_ = sizes;
  a.heights_.reserve(static_cast<std::size_t>(full_tree_node_count(b, H)));
  for (int h = 0; h <= H; ++h) a.heights_.insert(a.heights_.end(), static_cast<std::size_t>(sizes[h]), h);
  return a;
}

HeightAssignment HeightAssignment::from_order(std::span<const node_t> order, int b) {
  if (b < 2) throw InvalidParameter("fanout b must be >= 2");
  HeightAssignment a;
  a.b_ = b;
  a.heights_.assign(order.size(), -1);
  std::size_t pos = 0;
  std::int64_t width = 1;
  int h = 0;
  while (pos < order.size()) {
    const auto take = std::min<std::int64_t>(width, static_cast<std::int64_t>(order.size() - pos));
    for (std::int64_t i = 0; i < take; ++i) {
      const node_t v = order[pos++];
      if (v < 0 || static_cast<std::size_t>(v) >= order.size() || a.heights_[v] >= 0)
        throw MalformedInput("height order is not a permutation");
      a.heights_[v] = h;
    }
    a.level_sizes_.push_back(take);
    ++h;
    width = width > std::numeric_limits<std::int64_t>::max() / b ? std::numeric_limits<std::int64_t>::max()
                                                                  : width * b;
  }
  return a;
}

HeightAssignment HeightAssignment::from_heights(std::vector<int> heights, int b) {
  if (b < 2) throw InvalidParameter("fanout b must be >= 2");
  HeightAssignment a;
  a.b_ = b;
  int top = -1;
  for (int h : heights) {
    if (h < 0) throw MalformedInput("negative height");
    top = std::max(top, h);
  }
  a.level_sizes_.assign(static_cast<std::size_t>(top + 1), 0);
  for (int h : heights) ++a.level_sizes_[h];
  std::int64_t width = 1;
  for (int h = 0; h <= top; ++h) {
    const bool last = h == top;
    if (a.level_sizes_[h] > width || (!last && a.level_sizes_[h] != width))
      throw MalformedInput("level " + std::to_string(h) + " holds " + std::to_string(a.level_sizes_[h]) +
                           " nodes; expected " + std::to_string(width));
    width *= b;
  }
  a.heights_ = std::move(heights);
  return a;
}

std::int64_t full_tree_node_count(int b, int H) {
  if (b < 2 || H < 0) throw InvalidParameter("full tree needs b >= 2 and H >= 0");
  std::int64_t total = 0;
  std::int64_t width = 1;
  for (int h = 0; h <= H; ++h) {
    if (total > std::numeric_limits<std::int64_t>::max() - width)
      throw InvalidParameter("node count of a " + std::to_string(b) + "-ary tree of height " +
                             std::to_string(H) + " overflows");
    total += width;
    if (h < H) {
      if (width > std::numeric_limits<std::int64_t>::max() / b)
        throw InvalidParameter("node count of a " + std::to_string(b) + "-ary tree of height " +
                               std::to_string(H) + " overflows");
      width *= b;
    }
  }
  return total;
}

std::vector<std::int64_t> full_level_sizes(int b, int H) {
  full_tree_node_count(b, H);
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(H) + 1);
  std::int64_t width = 1;
  for (int h = 0; h <= H; ++h) {
    sizes[h] = width;
    if (h < H) width *= b;
  }
  return sizes;
}

double edge_probability(const IgamParams& p, int hu, int hv) {
  check_level(hu, p.H);
  check_level(hv, p.H);
  return std::pow(p.c, -1.0 - std::min(hu, hv));
}

double edge_probability_igam2(const Igam2Params& p, int hu, int hv) {
  check_level(hu, p.H);
  check_level(hv, p.H);
  const double scale = std::max(hu, hv) > p.H0 ? p.c2 : p.c1;
  return std::pow(scale, -1.0 - std::min(hu, hv));
}

double edge_probability_delta(const DeltaIgamParams& p, double hu, double hv) {
  if (hu < 0 || hv < 0) throw InvalidParameter("heights must be nonnegative");
  const double lo = std::min(hu, hv);
  const double hi = std::max(hu, hv);
  double mean;
  if (hu == hv) {
    mean = hu;
  } else if (p.delta < 0) {
    if (lo == 0.0) {
      mean = 0.0;
    } else {
      // lo * ((1 + (hi/lo)^d) / 2)^(1/d); (hi/lo)^d <= 1 keeps this finite
      const double r = std::pow(hi / lo, p.delta);
      mean = lo * std::pow((1.0 + r) / 2.0, 1.0 / p.delta);
    }
  } else {
    const double r = lo == 0.0 ? 0.0 : std::pow(lo / hi, p.delta);
    mean = hi * std::pow((1.0 + r) / 2.0, 1.0 / p.delta);
  }
  return std::pow(p.base.c, -1.0 - mean);
}

double edge_probability_continuous(const IgamParams& p, double hu, double hv) {
  return std::pow(p.c, -1.0 - std::min(hu, hv));
}

double directed_edge_probability(const IgamParams& p, int h_source, int h_target) {
  check_level(h_source, p.H);
  check_level(h_target, p.H);
  return std::pow(p.c, -1.0 - h_target);
}

double expected_degree(const IgamParams& p, int h) {
  check_level(h, p.H);
  double total = 0.0;
  double width = 1.0;
  for (int r = 0; r <= p.H; ++r) {
    total += width * std::pow(p.c, -1.0 - std::min(h, r));
    width *= p.b;
  }
  return total;
}

double expected_degree_exact(const IgamParams& p, int h) {
  return expected_degree(p, h) - std::pow(p.c, -1.0 - h);
}

double expected_edges(const IgamParams& p) {
  double total = 0.0;
  double width = 1.0;
  for (int h = 0; h <= p.H; ++h) {
    total += width * expected_degree_exact(p, h);
    width *= p.b;
  }
  return total / 2.0;
}

double expected_edges_with_self_terms(const IgamParams& p) {
  double total = 0.0;
  double width = 1.0;
  for (int h = 0; h <= p.H; ++h) {
    total += width * expected_degree(p, h);
    width *= p.b;
  }
  return total / 2.0;
}

double log_undominated_probability(const IgamParams& p, int tau) {
  check_level(tau, p.H);
  double log_q = 0.0;
  double width = 1.0;
  for (int r = 0; r <= tau; ++r) {
    log_q += width * std::log1p(-std::pow(p.c, -1.0 - r));
    width *= p.b;
  }
  return log_q;
}

double log_domination_failure_bound(const IgamParams& p, int tau) {
  if (tau >= p.H) return -std::numeric_limits<double>::infinity();
  // log sum_{h=tau+1}^{H} b^h = (tau+1) log b + log((b^(H-tau) - 1) / (b - 1))
  const double lb = std::log(static_cast<double>(p.b));
  const int terms = p.H - tau;
  const double log_geo = std::log(std::expm1(terms * lb) / (p.b - 1.0));
  return (tau + 1) * lb + log_geo + log_undominated_probability(p, tau);
}

int domination_level(const IgamParams& p) {
  p.validate();
  const double target = -p.H * std::log(static_cast<double>(p.b));
  for (int tau = 0; tau < p.H; ++tau)
    if (log_domination_failure_bound(p, tau) <= target) return tau;
  return p.H;
}

namespace {

double choose(double n, int k) {
  if (n < k) return 0.0;
  if (k == 2) return n * (n - 1) / 2.0;
  return n * (n - 1) * (n - 2) / 6.0;
}

template <class Weight>
double triple_sum(std::span<const std::int64_t> sizes, Weight&& weight) {
  const int L = static_cast<int>(sizes.size());
  double total = 0.0;
  for (int r = 0; r < L; ++r)
    for (int s = r; s < L; ++s)
      for (int t = s; t < L; ++t) {
        const auto nr = static_cast<double>(sizes[r]);
        const auto ns = static_cast<double>(sizes[s]);
        const auto nt = static_cast<double>(sizes[t]);
        double triples;
        if (r < s && s < t) {
          triples = nr * ns * nt;
        } else if (r == s && s < t) {
          triples = choose(nr, 2) * nt;
        } else if (r < s && s == t) {
          triples = nr * choose(ns, 2);
        } else {
          triples = choose(nr, 3);
        }
        if (triples > 0) total += triples * weight(r, s, t);
      }
  return total;
}

}  // namespace

double expected_triangles(std::span<const std::int64_t> level_sizes, const std::function<double(int, int)>& law) {
  return triple_sum(level_sizes, [&](int r, int s, int t) { return law(r, s) * law(r, t) * law(s, t); });
}

double expected_two_paths(std::span<const std::int64_t> level_sizes, const std::function<double(int, int)>& law) {
  return triple_sum(level_sizes, [&](int r, int s, int t) {
    const double rs = law(r, s), rt = law(r, t), st = law(s, t);
    return rs * rt + rs * st + rt * st;
  });
}

double expected_triangles(const IgamParams& p) {
  const auto sizes = full_level_sizes(p.b, p.H);
  return expected_triangles(sizes, [&](int r, int s) { return std::pow(p.c, -1.0 - std::min(r, s)); });
}

double expected_two_paths(const IgamParams& p) {
  const auto sizes = full_level_sizes(p.b, p.H);
  return expected_two_paths(sizes, [&](int r, int s) { return std::pow(p.c, -1.0 - std::min(r, s)); });
}

double expected_cut_edges(const IgamParams& p, int tau) {
  check_level(tau, p.H);
  const auto sizes = full_level_sizes(p.b, p.H);
  double total = 0.0;
  for (int s = tau + 1; s <= p.H; ++s)
    for (int r = 0; r <= tau; ++r)
      total += static_cast<double>(sizes[r]) * static_cast<double>(sizes[s]) * std::pow(p.c, -1.0 - r);
  return total;
}

IgamParams rescale(const IgamParams& p, double alpha) {
  if (!(alpha > 0)) throw InvalidParameter("rescale exponent must be positive");
  const double b_pow = std::pow(static_cast<double>(p.b), alpha);
  if (b_pow > std::numeric_limits<int>::max()) throw InvalidParameter("rescaled fanout overflows");
  IgamParams out{static_cast<int>(std::lround(b_pow)), std::pow(p.c, alpha), p.H};
  if (out.b < 2) throw InvalidParameter("rescaled fanout " + std::to_string(out.b) + " is below 2");
  out.validate();
  return out;
}

double continuous_height_from_uniform(const IgamParams& p, double u) {
  const double lb = std::log(static_cast<double>(p.b));
  return std::log1p(u * std::expm1(p.H * lb)) / lb;
}

double continuous_height_cdf(const IgamParams& p, double t) {
  if (t <= 0) return 0.0;
  if (t >= p.H) return 1.0;
  const double lb = std::log(static_cast<double>(p.b));
  return std::expm1(t * lb) / std::expm1(p.H * lb);
}

std::vector<double> sample_continuous_heights(const IgamParams& p, std::size_t n, std::uint64_t seed) {
  p.validate();
  if (n == 0) throw InvalidParameter("need at least one node");
  Rng rng = stream_rng(seed, 0);
  std::vector<double> h(n);
  for (auto& x : h) x = continuous_height_from_uniform(p, uniform01(rng));
  return h;
}

}  // namespace igam
