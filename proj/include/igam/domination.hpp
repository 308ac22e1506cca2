#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "igam/graph.hpp"
#include "igam/models.hpp"

namespace igam {

enum class RankingStrategy { Greedy, Prestige, LogisticCp, LogisticJb, LogisticTh };

std::string to_string(RankingStrategy s);
RankingStrategy parse_strategy(const std::string& name);

/// Standard: v is dominated if v in S or v has a neighbor in S.
/// Total: v is dominated only if it has a neighbor in S.
enum class Domination { Standard, Total };

struct NodeRanking {
  std::vector<node_t> order;
  RankingStrategy strategy = RankingStrategy::Greedy;
};

/// Coverage after each prefix of a ranking.
struct DominationCurve {
  std::vector<std::size_t> prefix_sizes;
  std::vector<std::size_t> covered;
  std::size_t node_count = 0;

  double covered_fraction(std::size_t i) const {
    return static_cast<double>(covered[i]) / static_cast<double>(node_count);
  }
  std::vector<double> fractions() const;
  std::size_t size() const { return prefix_sizes.size(); }
};

/// Result of searching a curve for the first kappa-dominating prefix.
struct AdsExponent {
  bool reached = false;
  std::size_t prefix = 0;  ///< smallest prefix with coverage >= kappa
  double p = 1.0;          ///< log(prefix) / log(n)
  double max_coverage = 0.0;
};

struct GreedyResult {
  NodeRanking ranking;
  DominationCurve curve;
  /// Newly dominated nodes per step; nonincreasing by submodularity.
  std::vector<std::size_t> gains;
};

/// |S u N(S)| under standard semantics, |N(S)| under total semantics.
/// Throws MalformedInput on out-of-range ids.
std::size_t dominated_count(const Graph& g, std::span<const node_t> set,
                            Domination semantics = Domination::Standard);

/// Repeatedly picks the node whose closed neighborhood holds the most
/// undominated nodes (ties: smallest id), stopping after `cap` picks or once
/// everything is dominated. Lazy evaluation over a max-heap.
GreedyResult greedy_max_coverage(const Graph& g, std::size_t cap = SIZE_MAX);

/// Reference: full rescan of every candidate at each step.
GreedyResult greedy_max_coverage_serial(const Graph& g, std::size_t cap = SIZE_MAX);

/// Ascending height, then descending degree, then ascending id.
NodeRanking prestige_ranking(const HeightAssignment& heights, std::span<const std::size_t> degrees);
NodeRanking prestige_ranking(std::span<const int> heights, std::span<const std::size_t> degrees);

/// Descending score, ties by ascending id.
NodeRanking ranking_from_scores(std::span<const double> scores, RankingStrategy strategy);

/// Coverage for every prefix of the ranking, O(n + m) in total.
DominationCurve domination_curve(const Graph& g, const NodeRanking& ranking,
                                 Domination semantics = Domination::Standard);

AdsExponent ads_exponent(const DominationCurve& curve, double kappa = 0.8);

/// Smallest dominating set by enumeration in increasing cardinality, the
/// lexicographically first among minimum sets. Refuses n > 20.
std::vector<node_t> brute_force_min_dominating_set(const Graph& g);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Regresses log10(% dominated by ranking y) on log10(% dominated by ranking
/// x) at equal step counts, over the steps both curves define.
LogLogFit coverage_loglog_fit(const DominationCurve& x, const DominationCurve& y);

}  // namespace igam
