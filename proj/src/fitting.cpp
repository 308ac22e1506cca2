#include "igam/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "igam/errors.hpp"
#include "igam/stats.hpp"

namespace igam {

std::vector<std::size_t> sample_degrees(std::span<const Edge> edges, std::size_t n) {
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n || static_cast<std::size_t>(e.v) >= n)
      throw MalformedInput("edge endpoint out of range");
    ++deg[e.u];
    if (e.v != e.u) ++deg[e.v];
  }
  return deg;
}

std::vector<std::size_t> sample_degrees(const Graph& g) {
  std::vector<std::size_t> deg(g.node_count());
  for (node_t v = 0; v < static_cast<node_t>(deg.size()); ++v) deg[v] = g.degree(v);
  return deg;
}

std::vector<node_t> degree_order(std::span<const std::size_t> degrees) {
  std::vector<node_t> order(degrees.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](node_t a, node_t b) { return degrees[a] > degrees[b]; });
  return order;
}

HeightAssignment assign_heights(std::span<const node_t> order, int b) { return HeightAssignment::from_order(order, b); }

LevelRegression level_regression(const HeightAssignment& heights, std::span<const std::size_t> degrees) {
  const int levels = heights.max_height() + 1;
  std::vector<double> totals(static_cast<std::size_t>(std::max(levels, 0)), 0.0);
  for (node_t v = 0; v < static_cast<node_t>(heights.node_count()); ++v)
    totals[heights[v]] += static_cast<double>(degrees[v]);
  LevelRegression out;
  std::vector<double> x, y;
  for (int h = 0; h < levels; ++h) {
    if (totals[h] <= 0) continue;
    x.push_back(h);
    y.push_back(std::log(totals[h]));
    out.level_log_degrees.emplace_back(h, y.back());
  }
  if (x.size() < 2)
    throw FitRejected("fewer than two levels with positive degree", std::numeric_limits<double>::quiet_NaN());
  const auto ls = least_squares(x, y);
  out.slope = ls.slope;
  out.intercept = ls.intercept;
  out.r_squared = ls.r_squared;
  return out;
}

double c_from_slope(int b, double a) {
  const double c = b * std::exp(-a);
  if (c >= b) throw FitRejected("c = " + std::to_string(c) + " >= b = " + std::to_string(b), c);
  if (c <= 1.0) throw FitRejected("c = " + std::to_string(c) + " <= 1", c);
  return c;
}

namespace {

void check_scale(double c) {
  if (!(c > 1.0) || !std::isfinite(c)) throw InvalidParameter("likelihood needs c > 1 so that every f < 1");
}

void check_sizes(const Graph& g, const HeightAssignment& heights) {
  if (heights.node_count() != g.node_count()) throw MalformedInput("heights do not cover the graph");
  if (g.directed()) throw UnsupportedOperation("IGAM likelihood expects an undirected graph");
}

}  // namespace

double log_likelihood_exact(const Graph& g, const HeightAssignment& heights, double c) {
  check_scale(c);
  check_sizes(g, heights);
  const int L = heights.max_height() + 1;
  std::vector<double> edges_in(static_cast<std::size_t>(L) * L, 0.0);
  for (const auto& e : g.edges()) {
    const int r = std::min(heights[e.u], heights[e.v]);
    const int s = std::max(heights[e.u], heights[e.v]);
    edges_in[static_cast<std::size_t>(r) * L + s] += 1.0;
  }
  const double log_c = std::log(c);
  const auto& sizes = heights.level_sizes();
  double ll = 0.0;
  for (int r = 0; r < L; ++r) {
    const double log_f = -(1.0 + r) * log_c;
    const double log_miss = std::log1p(-std::exp(log_f));
    for (int s = r; s < L; ++s) {
      const auto nr = static_cast<double>(sizes[r]);
      const auto ns = static_cast<double>(sizes[s]);
      const double pairs = r == s ? nr * (nr - 1) / 2 : nr * ns;
      const double e = edges_in[static_cast<std::size_t>(r) * L + s];
      ll += e * log_f + (pairs - e) * log_miss;
    }
  }
  return ll;
}

double log_likelihood_approx(const Graph& g, const HeightAssignment& heights, double c) {
  check_scale(c);
  check_sizes(g, heights);
  const double log_c = std::log(c);
  double ll = 0.0;
  for (const auto& e : g.edges()) ll -= (1.0 + std::min(heights[e.u], heights[e.v])) * log_c;
  return ll;
}

namespace {

struct Candidate {
  bool accepted = false;
  std::string reason;
  LevelRegression regression;
  double c = 0;
  double ll_exact = 0;
  double ll_approx = 0;
};

Candidate evaluate(const Graph& g, std::span<const node_t> order, std::span<const std::size_t> degrees, int b,
                   Scorer scorer) {
  Candidate cand;
  try {
    const auto heights = HeightAssignment::from_order(order, b);
    cand.regression = level_regression(heights, degrees);
    cand.c = c_from_slope(b, cand.regression.slope);
    cand.ll_approx = log_likelihood_approx(g, heights, cand.c);
    // exact is O(H^2 + m); skip it when not needed for selection
    cand.ll_exact = scorer == Scorer::Exact ? log_likelihood_exact(g, heights, cand.c) : 0.0;
    cand.accepted = true;
  } catch (const FitRejected& e) {
    cand.reason = "b = " + std::to_string(b) + ": " + e.what();
  }
  return cand;
}

}  // namespace

FitResult fit(const Graph& g, const FitOptions& options) {
  if (g.directed()) throw UnsupportedOperation("fitting expects an undirected graph");
  const auto n = static_cast<int>(g.node_count());
  if (g.edge_count() == 0) throw FitFailed("no edges to fit", {});
  const int b_lo = std::max(2, options.b_min.value_or(2));
  int b_hi = options.b_max.value_or(n - 1);
  if (!options.b_max && n > 10'000 && !options.full_sweep) b_hi = std::min(b_hi, 64);
  b_hi = std::min(b_hi, n - 1);
  if (b_lo > b_hi)
    throw FitFailed("no candidate fanouts in [" + std::to_string(b_lo) + ", " + std::to_string(b_hi) + "]", {});

  const auto degrees = sample_degrees(g);
  const auto order = degree_order(degrees);
  const int count = b_hi - b_lo + 1;
  std::vector<Candidate> cands(static_cast<std::size_t>(count));
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int i = 0; i < count; ++i) cands[i] = evaluate(g, order, degrees, b_lo + i, options.scorer);
  } else {
    for (int i = 0; i < count; ++i) cands[i] = evaluate(g, order, degrees, b_lo + i, options.scorer);
  }

  FitResult best;
  int best_i = -1;
  double best_score = 0;
  for (int i = 0; i < count; ++i) {
    const auto& c = cands[i];
    if (!c.accepted) {
      best.rejections.push_back(c.reason);
      continue;
    }
    const double score = options.scorer == Scorer::Exact ? c.ll_exact : c.ll_approx;
    if (best_i < 0 || score > best_score) {
      best_i = i;
      best_score = score;
    }
  }
  if (best_i < 0) throw FitFailed("every fanout was rejected", best.rejections);

  const auto& win = cands[best_i];
  best.b_star = b_lo + best_i;
  best.c_star = win.c;
  best.heights = HeightAssignment::from_order(order, best.b_star);
  best.slope = win.regression.slope;
  best.intercept = win.regression.intercept;
  best.r_squared = win.regression.r_squared;
  best.level_log_degrees = win.regression.level_log_degrees;
  best.loglik_approx = win.ll_approx;
  best.loglik_exact = log_likelihood_exact(g, best.heights, best.c_star);
  if (options.swaps) return swap_refinement(best, g);
  return best;
}

FitResult swap_refinement(const FitResult& fit, const Graph& g) {
  FitResult out = fit;
  auto& h = out.heights;
  check_sizes(g, h);
  check_scale(out.c_star);
  const int L = h.max_height() + 1;
  const double log_c = std::log(out.c_star);
  // miss[a][l] = log(1 - f), gain[a][l] = log f - log(1 - f)
  std::vector<double> miss(static_cast<std::size_t>(L) * L), gain(static_cast<std::size_t>(L) * L);
  for (int a = 0; a < L; ++a)
    for (int l = 0; l < L; ++l) {
      const double log_f = -(1.0 + std::min(a, l)) * log_c;
      miss[a * L + l] = std::log1p(-std::exp(log_f));
      gain[a * L + l] = log_f - miss[a * L + l];
    }
  const auto& sizes = h.level_sizes();
  std::vector<double> others(L);

  // Log-likelihood share of node x placed at height `at`, over pairs with
  // every node except u and v.
  auto share = [&](node_t x, int at, node_t u, node_t v) {
    double s = 0;
    for (int l = 0; l < L; ++l) s += others[l] * miss[at * L + l];
    for (node_t w : g.neighbors(x))
      if (w != u && w != v) s += gain[at * L + h[w]];
    return s;
  };

  const auto edges = g.edges();
  const std::size_t max_passes = std::max<std::size_t>(1, g.node_count() * std::max<std::size_t>(1, edges.size()));
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (const auto& e : edges) {
      const int hu = h[e.u], hv = h[e.v];
      if (hu == hv) continue;
      for (int l = 0; l < L; ++l) others[l] = static_cast<double>(sizes[l]);
      others[hu] -= 1;
      others[hv] -= 1;
      const double delta = share(e.u, hv, e.u, e.v) - share(e.u, hu, e.u, e.v) + share(e.v, hu, e.u, e.v) -
                           share(e.v, hv, e.u, e.v);
      if (delta > 1e-9) {
        h.swap_nodes(e.u, e.v);
        ++out.swaps;
        changed = true;
      }
    }
    if (!changed) break;
  }
  out.loglik_exact = log_likelihood_exact(g, h, out.c_star);
  out.loglik_approx = log_likelihood_approx(g, h, out.c_star);
  return out;
}

}  // namespace igam
