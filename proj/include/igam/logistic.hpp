#pragma once

#include <span>
#include <vector>

#include "igam/graph.hpp"

namespace igam {

struct CorenessScores {
  std::vector<double> theta;
};

/// Rank-threshold law parameters; pi holds one nonnegative rank per node.
struct ThModelParams {
  double s = 10.0;
  double t = 0.5;
  std::vector<double> pi;

  void validate() const;
};

struct JbKernelSpec {
  Coordinates coordinates;
  double epsilon = 1.0;
};

/// 1 / (1 + e^(-tu - tv)), overflow safe.
double logistic_cp_prob(double theta_u, double theta_v);

/// e^(tu+tv) / (K^eps + e^(tu+tv)); K = 0 with eps > 0 gives 1.
double logistic_jb_prob(double theta_u, double theta_v, double kernel, double epsilon);

/// sigma_{s,t}(max(pi_u, pi_v) / n), sigma_{s,t}(x) = 1 / (1 + e^(-s(x - t))).
double logistic_th_prob(double pi_u, double pi_v, std::size_t n, double s = 10.0, double t = 0.5);

/// Euclidean distance between the coordinates of u and v.
double euclidean_kernel(const Coordinates& coords, node_t u, node_t v);

/// Bernoulli log-likelihood over unordered pairs and its gradient
/// d/d theta_u = deg(u) - sum_{v != u} rho(u, v). Parallel over nodes with a
/// fixed-order reduction.
double logistic_cp_loglik(const Graph& g, std::span<const double> theta);
std::vector<double> logistic_cp_gradient(const Graph& g, std::span<const double> theta);
double logistic_cp_loglik_serial(const Graph& g, std::span<const double> theta);
std::vector<double> logistic_cp_gradient_serial(const Graph& g, std::span<const double> theta);

/// Same for the spatial law with kernel K = Euclidean distance. Throws
/// SingularKernel if a non-adjacent pair has K = 0 while epsilon > 0.
double logistic_jb_loglik(const Graph& g, std::span<const double> theta, const JbKernelSpec& kernel);
std::vector<double> logistic_jb_gradient(const Graph& g, std::span<const double> theta, const JbKernelSpec& kernel);

struct LogisticFitOptions {
  double tol = 1e-6;
  int max_iters = 5000;
};

struct LogisticFit {
  CorenessScores scores;
  double loglik = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  double epsilon = 0.0;
  /// Objective after every accepted step; nondecreasing.
  std::vector<double> trace;
};

/// Gradient ascent with a diagonal (Jacobi) preconditioner and step halving,
/// stopping when the max-norm of the gradient drops below tol. Throws
/// NonConvergence carrying the final gradient norm.
LogisticFit fit_logistic_cp(const Graph& g, const LogisticFitOptions& options = {});

/// Fits theta for each epsilon on the grid and keeps the best likelihood.
/// Requires coordinates on the graph; all-identical coordinates are rejected
/// with SingularKernel.
LogisticFit fit_logistic_jb(const Graph& g, const LogisticFitOptions& options = {},
                            std::span<const double> epsilon_grid = {});

LogisticFit fit_logistic_jb_fixed(const Graph& g, double epsilon, const LogisticFitOptions& options = {});

struct ThOptions {
  double alpha = 10.0;
  double tol = 1e-8;
  int max_iters = 1000;
  bool parallel = true;
};

/// Fixed point of x_i <- sum_{j in N(i)} (x_i^a + x_j^a)^(1/a), sup-norm
/// normalized, from the all-ones start. Throws NonConvergence.
std::vector<double> th_rank_scores(const Graph& g, const ThOptions& options = {});

/// Same iteration from a caller-supplied positive start vector.
std::vector<double> th_rank_scores_from(const Graph& g, std::vector<double> start, const ThOptions& options = {});

/// Rank values pi: the top-scored node gets n, the next n-1, and so on.
std::vector<double> ranks_from_scores(std::span<const double> scores);

}  // namespace igam
