#include "igam/logistic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include <omp.h>

#include "igam/errors.hpp"

namespace igam {

namespace {

/// log(1 + e^x) without overflow.
double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct PairSums {
  double loglik = 0;
  double grad = 0;
  double curvature = 0;
};

/// Per-node sums over all partners v != u of the logistic pair model with
/// logit theta_u + theta_v - offset(u, v).
template <class Offset>
PairSums node_sums(const Graph& g, std::span<const double> theta, node_t u, const Offset& offset, bool with_loglik) {
  PairSums s;
  const auto n = static_cast<node_t>(theta.size());
  auto nb = g.neighbors(u);
  auto it = nb.begin();
  for (node_t v = 0; v < n; ++v) {
    if (v == u) continue;
    while (it != nb.end() && *it < v) ++it;
    const bool linked = it != nb.end() && *it == v;
    const double off = offset(u, v);
    if (off == kNegInf) {
      // probability one
      if (!linked) throw SingularKernel("zero kernel distance on a non-adjacent pair");
      continue;
    }
    const double x = theta[u] + theta[v] - off;
    const double e = std::exp(-std::abs(x));
    const double p = x >= 0 ? 1.0 / (1.0 + e) : e / (1.0 + e);
    if (with_loglik) {
      // log(1 + e^x) = max(x, 0) + log1p(e^-|x|)
      const double tail = std::log1p(e);
      s.loglik -= linked ? std::max(-x, 0.0) + tail : std::max(x, 0.0) + tail;
    }
    s.grad += (linked ? 1.0 : 0.0) - p;
    s.curvature += p * (1.0 - p);
  }
  return s;
}

struct Evaluation {
  double loglik = 0;
  std::vector<double> grad;
  std::vector<double> curvature;
};

template <class Offset>
Evaluation evaluate(const Graph& g, std::span<const double> theta, const Offset& offset, bool with_loglik = true) {
  const auto n = static_cast<node_t>(theta.size());
  if (theta.size() != g.node_count()) throw MalformedInput("theta does not match node count");
  if (g.directed()) throw UnsupportedOperation("logistic models expect an undirected graph");
  Evaluation ev;
  ev.grad.resize(n);
  ev.curvature.resize(n);
  std::vector<double> ll(n);
  bool singular = false;
  auto body = [&](node_t u) {
    try {
      const auto s = node_sums(g, theta, u, offset, with_loglik);
      ll[u] = s.loglik;
      ev.grad[u] = s.grad;
      ev.curvature[u] = s.curvature;
    } catch (const SingularKernel&) {
      singular = true;
    }
  };
#pragma omp parallel for schedule(dynamic, 32)
  for (node_t u = 0; u < n; ++u) body(u);
  if (singular) throw SingularKernel("kernel distance is zero on a non-adjacent pair while epsilon > 0");
  // each pair counted from both ends
  double total = 0;
  for (double x : ll) total += x;
  ev.loglik = total / 2.0;
  return ev;
}

struct NoOffset {
  double operator()(node_t, node_t) const { return 0.0; }
};

struct KernelOffset {
  const Coordinates* coords;
  double epsilon;
  double operator()(node_t u, node_t v) const {
    if (epsilon == 0.0) return 0.0;
    const double k = euclidean_kernel(*coords, u, v);
    if (k == 0.0) return kNegInf;
    return epsilon * std::log(k);
  }
};

template <class Offset>
LogisticFit ascend(const Graph& g, const Offset& offset, const LogisticFitOptions& options) {
  const auto n = g.node_count();
  LogisticFit fit;
  std::vector<double> theta(n, 0.0);
  auto ev = evaluate(g, theta, offset);
  fit.trace.push_back(ev.loglik);
  double step = 1.0;
  for (int it = 0;; ++it) {
    double gnorm = 0;
    for (double x : ev.grad) gnorm = std::max(gnorm, std::abs(x));
    fit.gradient_norm = gnorm;
    fit.iterations = it;
    if (gnorm < options.tol) break;
    if (it >= options.max_iters) throw NonConvergence("logistic fit did not converge", gnorm);
    std::vector<double> dir(n);
    for (std::size_t u = 0; u < n; ++u) {
      const double d = ev.grad[u] / std::max(ev.curvature[u], 1e-12);
      dir[u] = std::clamp(d, -5.0, 5.0);
    }
    step = std::min(1.0, step * 2.0);
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, step /= 2.0) {
      std::vector<double> trial(n);
      for (std::size_t u = 0; u < n; ++u) trial[u] = theta[u] + step * dir[u];
      auto next = evaluate(g, trial, offset);
      if (next.loglik >= ev.loglik) {
        theta = std::move(trial);
        ev = std::move(next);
        accepted = true;
        break;
      }
    }
    if (!accepted) throw NonConvergence("logistic fit stalled: no ascent step", gnorm);
    fit.trace.push_back(ev.loglik);
  }
  fit.scores.theta = std::move(theta);
  fit.loglik = ev.loglik;
  return fit;
}

}  // namespace

void ThModelParams::validate() const {
  if (!(s > 0)) throw InvalidParameter("steepness s must be positive");
  if (!(t > 0 && t < 1)) throw InvalidParameter("threshold t must lie in (0, 1)");
  for (double x : pi)
    if (x < 0) throw InvalidParameter("rank scores must be nonnegative");
}

double logistic_cp_prob(double theta_u, double theta_v) { return sigmoid(theta_u + theta_v); }

double logistic_jb_prob(double theta_u, double theta_v, double kernel, double epsilon) {
  if (kernel < 0) throw InvalidParameter("kernel value must be nonnegative");
  if (epsilon == 0.0) return sigmoid(theta_u + theta_v);
  if (kernel == 0.0) return epsilon > 0 ? 1.0 : 0.0;
  return sigmoid(theta_u + theta_v - epsilon * std::log(kernel));
}

double logistic_th_prob(double pi_u, double pi_v, std::size_t n, double s, double t) {
  const double x = std::max(pi_u, pi_v) / static_cast<double>(n);
  return sigmoid(s * (x - t));
}

double euclidean_kernel(const Coordinates& coords, node_t u, node_t v) {
  auto a = coords.of(u);
  auto b = coords.of(v);
  double sum = 0;
  for (std::size_t i = 0; i < coords.dim; ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

double logistic_cp_loglik(const Graph& g, std::span<const double> theta) {
  return evaluate(g, theta, NoOffset{}).loglik;
}

std::vector<double> logistic_cp_gradient(const Graph& g, std::span<const double> theta) {
  return evaluate(g, theta, NoOffset{}, false).grad;
}

double logistic_cp_loglik_serial(const Graph& g, std::span<const double> theta) {
  double ll = 0;
  const auto n = static_cast<node_t>(theta.size());
  for (node_t u = 0; u < n; ++u)
    for (node_t v = u + 1; v < n; ++v) {
      const double x = theta[u] + theta[v];
      ll -= g.has_edge(u, v) ? softplus(-x) : softplus(x);
    }
  return ll;
}

std::vector<double> logistic_cp_gradient_serial(const Graph& g, std::span<const double> theta) {
  const auto n = static_cast<node_t>(theta.size());
  std::vector<double> grad(n, 0.0);
  for (node_t u = 0; u < n; ++u)
    for (node_t v = u + 1; v < n; ++v) {
      const double r = (g.has_edge(u, v) ? 1.0 : 0.0) - sigmoid(theta[u] + theta[v]);
      grad[u] += r;
      grad[v] += r;
    }
  return grad;
}

double logistic_jb_loglik(const Graph& g, std::span<const double> theta, const JbKernelSpec& kernel) {
  return evaluate(g, theta, KernelOffset{&kernel.coordinates, kernel.epsilon}).loglik;
}

std::vector<double> logistic_jb_gradient(const Graph& g, std::span<const double> theta, const JbKernelSpec& kernel) {
  return evaluate(g, theta, KernelOffset{&kernel.coordinates, kernel.epsilon}, false).grad;
}

LogisticFit fit_logistic_cp(const Graph& g, const LogisticFitOptions& options) {
  if (g.node_count() < 2) throw InvalidParameter("logistic fit needs at least two nodes");
  return ascend(g, NoOffset{}, options);
}

namespace {

void require_spatial(const Graph& g) {
  if (!g.has_coordinates()) throw MalformedInput("spatial model needs coordinates for every node");
}

bool all_coordinates_identical(const Coordinates& c, std::size_t n) {
  for (std::size_t v = 1; v < n; ++v)
    for (std::size_t i = 0; i < c.dim; ++i)
      if (c.values[v * c.dim + i] != c.values[i]) return false;
  return true;
}

}  // namespace

LogisticFit fit_logistic_jb_fixed(const Graph& g, double epsilon, const LogisticFitOptions& options) {
  require_spatial(g);
  if (epsilon < 0) throw InvalidParameter("epsilon must be nonnegative");
  if (epsilon > 0 && all_coordinates_identical(g.coordinates(), g.node_count()))
    throw SingularKernel("all coordinates coincide; kernel is identically zero");
  auto fit = ascend(g, KernelOffset{&g.coordinates(), epsilon}, options);
  fit.epsilon = epsilon;
  return fit;
}

LogisticFit fit_logistic_jb(const Graph& g, const LogisticFitOptions& options, std::span<const double> epsilon_grid) {
  static constexpr std::array<double, 3> kDefaultGrid{0.5, 1.0, 2.0};
  if (epsilon_grid.empty()) epsilon_grid = kDefaultGrid;
  require_spatial(g);
  LogisticFit best;
  bool have = false;
  for (double eps : epsilon_grid) {
    auto fit = fit_logistic_jb_fixed(g, eps, options);
    if (!have || fit.loglik > best.loglik) {
      best = std::move(fit);
      have = true;
    }
  }
  return best;
}

namespace {

/// (a^alpha + b^alpha)^(1/alpha) for a, b >= 0 without overflow.
double power_sum(double a, double b, double alpha) {
  const double hi = std::max(a, b);
  if (hi == 0) return 0;
  const double lo = std::min(a, b);
  return hi * std::pow(1.0 + std::pow(lo / hi, alpha), 1.0 / alpha);
}

}  // namespace

std::vector<double> th_rank_scores_from(const Graph& g, std::vector<double> x, const ThOptions& options) {
  const auto n = static_cast<node_t>(g.node_count());
  if (g.directed()) throw UnsupportedOperation("rank iteration expects an undirected graph");
  if (g.edge_count() == 0) throw InvalidParameter("rank iteration needs at least one edge");
  if (x.size() != g.node_count()) throw MalformedInput("start vector does not match node count");
  if (!(options.alpha > 0)) throw InvalidParameter("alpha must be positive");
  std::vector<double> next(n);
  double residual = std::numeric_limits<double>::infinity();
  auto step = [&](node_t i) {
    double acc = 0;
    for (node_t j : g.neighbors(i)) acc += power_sum(x[i], x[j], options.alpha);
    next[i] = acc;
  };
  for (int it = 0; it < options.max_iters; ++it) {
    if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 256)
      for (node_t i = 0; i < n; ++i) step(i);
    } else {
      for (node_t i = 0; i < n; ++i) step(i);
    }
    double top = 0;
    for (double v : next) top = std::max(top, v);
    if (top == 0) throw InvalidParameter("rank iteration collapsed to zero");
    residual = 0;
    for (node_t i = 0; i < n; ++i) {
      next[i] /= top;
      residual = std::max(residual, std::abs(next[i] - x[i]));
    }
    x.swap(next);
    if (residual < options.tol) return x;
  }
  throw NonConvergence("rank iteration did not converge", residual);
}

std::vector<double> th_rank_scores(const Graph& g, const ThOptions& options) {
  return th_rank_scores_from(g, std::vector<double>(g.node_count(), 1.0), options);
}

std::vector<double> ranks_from_scores(std::span<const double> scores) {
  std::vector<node_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](node_t a, node_t b) { return scores[a] > scores[b]; });
  std::vector<double> pi(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) pi[order[i]] = static_cast<double>(scores.size() - i);
  return pi;
}

}  // namespace igam
