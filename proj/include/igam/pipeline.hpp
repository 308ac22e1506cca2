#pragma once

#include <optional>
#include <vector>

#include "igam/domination.hpp"
#include "igam/fitting.hpp"
#include "igam/graph.hpp"
#include "igam/logistic.hpp"

namespace igam {

struct RankingOptions {
  /// Prestige uses these heights when given, otherwise it fits IGAM first.
  std::optional<std::vector<int>> heights;
  FitOptions fit;
  LogisticFitOptions logistic;
  ThOptions th;
  std::vector<double> epsilon_grid;
};

struct RankedNodes {
  NodeRanking ranking;
  /// Per-node score behind the ranking; empty for prestige and greedy.
  std::vector<double> scores;
  std::optional<FitResult> fit;
  std::optional<double> epsilon;
};

/// Produces the node ranking of one strategy. Greedy returns the partial
/// order up to full coverage.
RankedNodes rank_nodes(const Graph& g, RankingStrategy strategy, const RankingOptions& options = {});

/// Logistic-JB when the graph carries coordinates, Logistic-CP otherwise.
RankingStrategy logistic_strategy_for(const Graph& g);

}  // namespace igam
