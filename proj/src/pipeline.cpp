#include "igam/pipeline.hpp"

#include "igam/errors.hpp"

namespace igam {

RankingStrategy logistic_strategy_for(const Graph& g) {
  return g.has_coordinates() ? RankingStrategy::LogisticJb : RankingStrategy::LogisticCp;
}

RankedNodes rank_nodes(const Graph& g, RankingStrategy strategy, const RankingOptions& options) {
  RankedNodes out;
  switch (strategy) {
    case RankingStrategy::Greedy:
      out.ranking = greedy_max_coverage(g).ranking;
      break;
    case RankingStrategy::Prestige: {
      const auto degrees = sample_degrees(g);
      if (options.heights) {
        if (options.heights->size() != g.node_count()) throw MalformedInput("heights do not cover the graph");
        out.ranking = prestige_ranking(*options.heights, degrees);
      } else {
        out.fit = fit(g, options.fit);
        out.ranking = prestige_ranking(out.fit->heights, degrees);
      }
      break;
    }
    case RankingStrategy::LogisticCp: {
      auto f = fit_logistic_cp(g, options.logistic);
      out.scores = std::move(f.scores.theta);
      out.ranking = ranking_from_scores(out.scores, strategy);
      break;
    }
    case RankingStrategy::LogisticJb: {
      auto f = fit_logistic_jb(g, options.logistic, options.epsilon_grid);
      out.scores = std::move(f.scores.theta);
      out.epsilon = f.epsilon;
      out.ranking = ranking_from_scores(out.scores, strategy);
      break;
    }
    case RankingStrategy::LogisticTh:
      out.scores = th_rank_scores(g, options.th);
      out.ranking = ranking_from_scores(out.scores, strategy);
      break;
  }
  return out;
}

}  // namespace igam
