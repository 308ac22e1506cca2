#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "igam/graph.hpp"
#include "igam/models.hpp"

namespace igam {

enum class Scorer { Exact, Approx };

struct LevelRegression {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  /// (level, log total degree) for every level with positive total degree.
  std::vector<std::pair<int, double>> level_log_degrees;
};

struct FitResult {
  int b_star = 0;
  double c_star = 0.0;
  HeightAssignment heights;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double loglik_exact = 0.0;
  double loglik_approx = 0.0;
  std::vector<std::pair<int, double>> level_log_degrees;
  /// One line per rejected fanout.
  std::vector<std::string> rejections;
  std::size_t swaps = 0;
};

struct FitOptions {
  Scorer scorer = Scorer::Exact;
  /// Inclusive fanout range; defaults to 2..n-1, capped at 64 when n > 10^4
  /// unless `full_sweep` is set.
  std::optional<int> b_min;
  std::optional<int> b_max;
  bool full_sweep = false;
  bool swaps = false;
  bool parallel = true;
};

/// y_u = number of sample edges incident to u (edges counted with multiplicity).
std::vector<std::size_t> sample_degrees(std::span<const Edge> edges, std::size_t n);
std::vector<std::size_t> sample_degrees(const Graph& g);

/// Nodes by descending degree, ties by ascending id.
std::vector<node_t> degree_order(std::span<const std::size_t> degrees);

/// Alias of HeightAssignment::from_order.
HeightAssignment assign_heights(std::span<const node_t> order, int b);

/// OLS of log(level total degree) on level, skipping zero-degree levels.
/// Throws FitRejected with fewer than two usable levels.
LevelRegression level_regression(const HeightAssignment& heights, std::span<const std::size_t> degrees);

/// c = b e^(-a); throws FitRejected when c >= b or c <= 1.
double c_from_slope(int b, double a);

/// Bernoulli log-likelihood over unordered distinct pairs. The non-edge term
/// is aggregated per level pair, so cost is O(H^2 + m).
/// Throws InvalidParameter unless c > 1.
double log_likelihood_exact(const Graph& g, const HeightAssignment& heights, double c);

/// Edge term only: sum over edges of log f(u, v).
double log_likelihood_approx(const Graph& g, const HeightAssignment& heights, double c);

/// Sweeps fanouts, keeping the accepted parameterization of highest score
/// (ties: smaller b). Throws FitFailed when every fanout is rejected.
FitResult fit(const Graph& g, const FitOptions& options = {});

/// Swaps endpoint heights along edges while the exact likelihood strictly
/// increases; full passes repeat until one makes no swap.
FitResult swap_refinement(const FitResult& fit, const Graph& g);

}  // namespace igam
