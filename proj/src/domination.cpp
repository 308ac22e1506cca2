#include "igam/domination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "igam/errors.hpp"
#include "igam/stats.hpp"

namespace igam {

std::string to_string(RankingStrategy s) {
  switch (s) {
    case RankingStrategy::Greedy: return "greedy";
    case RankingStrategy::Prestige: return "prestige";
    case RankingStrategy::LogisticCp: return "cp";
    case RankingStrategy::LogisticJb: return "jb";
    case RankingStrategy::LogisticTh: return "th";
  }
  return "unknown";
}

RankingStrategy parse_strategy(const std::string& name) {
  if (name == "greedy") return RankingStrategy::Greedy;
  if (name == "prestige" || name == "igam") return RankingStrategy::Prestige;
  if (name == "cp" || name == "logistic-cp") return RankingStrategy::LogisticCp;
  if (name == "jb" || name == "logistic-jb") return RankingStrategy::LogisticJb;
  if (name == "th" || name == "logistic-th") return RankingStrategy::LogisticTh;
  throw InvalidParameter("unknown ranking strategy '" + name + "'");
}

std::vector<double> DominationCurve::fractions() const {
  std::vector<double> out(covered.size());
  for (std::size_t i = 0; i < covered.size(); ++i) out[i] = covered_fraction(i);
  return out;
}

std::size_t dominated_count(const Graph& g, std::span<const node_t> set, Domination semantics) {
  const auto n = g.node_count();
  std::vector<char> dom(n, 0);
  for (node_t v : set) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw MalformedInput("node id out of range in set");
    if (semantics == Domination::Standard) dom[v] = 1;
    for (node_t u : g.neighbors(v)) dom[u] = 1;
  }
  return static_cast<std::size_t>(std::count(dom.begin(), dom.end(), 1));
}

namespace {

std::size_t closed_gain(const Graph& g, const std::vector<char>& dom, node_t v) {
  std::size_t gain = dom[v] ? 0 : 1;
  for (node_t u : g.neighbors(v)) gain += dom[u] ? 0 : 1;
  return gain;
}

void take(const Graph& g, std::vector<char>& dom, node_t v, GreedyResult& out, std::size_t gain,
          std::size_t& covered) {
  dom[v] = 1;
  for (node_t u : g.neighbors(v)) dom[u] = 1;
  covered += gain;
  out.ranking.order.push_back(v);
  out.gains.push_back(gain);
  out.curve.prefix_sizes.push_back(out.ranking.order.size());
  out.curve.covered.push_back(covered);
}

}  // namespace

GreedyResult greedy_max_coverage(const Graph& g, std::size_t cap) {
  const auto n = g.node_count();
  GreedyResult out;
  out.ranking.strategy = RankingStrategy::Greedy;
  out.curve.node_count = n;
  std::vector<char> dom(n, 0);
  // max gain first, then smallest id
  using Entry = std::pair<std::size_t, node_t>;
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (node_t v = 0; v < static_cast<node_t>(n); ++v) heap.push({g.degree(v) + 1, v});
  std::size_t covered = 0;
  while (covered < n && out.ranking.order.size() < cap && !heap.empty()) {
    auto [stale, v] = heap.top();
    heap.pop();
    const std::size_t gain = closed_gain(g, dom, v);
    if (gain == stale) {
      take(g, dom, v, out, gain, covered);
    } else if (gain > 0) {
      heap.push({gain, v});
    }
  }
  return out;
}

GreedyResult greedy_max_coverage_serial(const Graph& g, std::size_t cap) {
  const auto n = g.node_count();
  GreedyResult out;
  out.ranking.strategy = RankingStrategy::Greedy;
  out.curve.node_count = n;
  std::vector<char> dom(n, 0);
  std::vector<char> picked(n, 0);
  std::size_t covered = 0;
  while (covered < n && out.ranking.order.size() < cap) {
    node_t best = -1;
    std::size_t best_gain = 0;
    for (node_t v = 0; v < static_cast<node_t>(n); ++v) {
      if (picked[v]) continue;
      const auto gain = closed_gain(g, dom, v);
      if (gain > best_gain) {
        best_gain = gain;
        best = v;
      }
    }
    if (best < 0) break;
    picked[best] = 1;
    take(g, dom, best, out, best_gain, covered);
  }
  return out;
}

NodeRanking prestige_ranking(const HeightAssignment& heights, std::span<const std::size_t> degrees) {
  return prestige_ranking(heights.heights(), degrees);
}

NodeRanking prestige_ranking(std::span<const int> heights, std::span<const std::size_t> degrees) {
  const auto n = heights.size();
  if (degrees.size() != n) throw MalformedInput("heights and degrees cover different node sets");
  NodeRanking r;
  r.strategy = RankingStrategy::Prestige;
  r.order.resize(n);
  std::iota(r.order.begin(), r.order.end(), 0);
  std::sort(r.order.begin(), r.order.end(), [&](node_t a, node_t b) {
    if (heights[a] != heights[b]) return heights[a] < heights[b];
    if (degrees[a] != degrees[b]) return degrees[a] > degrees[b];
    return a < b;
  });
  return r;
}

NodeRanking ranking_from_scores(std::span<const double> scores, RankingStrategy strategy) {
  NodeRanking r;
  r.strategy = strategy;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), 0);
  std::stable_sort(r.order.begin(), r.order.end(), [&](node_t a, node_t b) { return scores[a] > scores[b]; });
  return r;
}

DominationCurve domination_curve(const Graph& g, const NodeRanking& ranking, Domination semantics) {
  const auto n = g.node_count();
  DominationCurve curve;
  curve.node_count = n;
  curve.prefix_sizes.reserve(ranking.order.size());
  curve.covered.reserve(ranking.order.size());
  std::vector<char> dom(n, 0), seen(n, 0);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < ranking.order.size(); ++i) {
    const node_t v = ranking.order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n || seen[v]) throw MalformedInput("ranking is not a permutation");
    seen[v] = 1;
    if (semantics == Domination::Standard && !dom[v]) {
      dom[v] = 1;
      ++covered;
    }
    for (node_t u : g.neighbors(v))
      if (!dom[u]) {
        dom[u] = 1;
        ++covered;
      }
    curve.prefix_sizes.push_back(i + 1);
    curve.covered.push_back(covered);
  }
  return curve;
}

AdsExponent ads_exponent(const DominationCurve& curve, double kappa) {
  AdsExponent out;
  const auto n = curve.node_count;
  if (n == 0 || curve.size() == 0) return out;
  const double need = kappa * static_cast<double>(n) - 1e-9;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out.max_coverage = std::max(out.max_coverage, curve.covered_fraction(i));
    if (!out.reached && static_cast<double>(curve.covered[i]) >= need) {
      out.reached = true;
      out.prefix = curve.prefix_sizes[i];
    }
  }
  if (out.reached)
    out.p = n > 1 ? std::log(static_cast<double>(out.prefix)) / std::log(static_cast<double>(n)) : 0.0;
  return out;
}

std::vector<node_t> brute_force_min_dominating_set(const Graph& g) {
  const auto n = static_cast<int>(g.node_count());
  if (n > 20) throw UnsupportedOperation("exhaustive dominating set search is limited to n <= 20");
  if (n == 0) return {};
  std::vector<std::uint32_t> closed(n);
  for (node_t v = 0; v < n; ++v) {
    closed[v] = 1u << v;
    for (node_t u : g.neighbors(v)) closed[v] |= 1u << u;
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  for (int k = 1; k <= n; ++k) {
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::uint32_t mask = 0;
      for (int v : pick) mask |= closed[v];
      if (mask == full) return {pick.begin(), pick.end()};
      int i = k - 1;
      while (i >= 0 && pick[i] == n - k + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

LogLogFit coverage_loglog_fit(const DominationCurve& x, const DominationCurve& y) {
  const std::size_t count = std::min(x.size(), y.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < count; ++i) {
    lx.push_back(std::log10(100.0 * x.covered_fraction(i)));
    ly.push_back(std::log10(100.0 * y.covered_fraction(i)));
  }
  LogLogFit out;
  out.points = count;
  if (count < 2) return out;
  const auto fit = least_squares(lx, ly);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.r_squared = fit.r_squared;
  return out;
}

}  // namespace igam
