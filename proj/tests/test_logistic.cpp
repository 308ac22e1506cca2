#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "igam/domination.hpp"
#include "igam/errors.hpp"
#include "igam/logistic.hpp"
#include "igam/sampler.hpp"
#include "oracles.hpp"

using namespace igam;

namespace {

Graph with_coords(Graph g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  Coordinates c;
  c.dim = 2;
  for (std::size_t i = 0; i < 2 * g.node_count(); ++i) c.values.push_back(u(rng));
  g.set_coordinates(std::move(c));
  return g;
}

std::vector<double> random_theta(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(-1.0, 1.0);
  std::vector<double> t(n);
  for (auto& x : t) x = z(rng);
  return t;
}

/// Naive likelihood over unordered pairs, straight from the law.
double jb_loglik_oracle(const Graph& g, const std::vector<double>& t, double eps) {
  double ll = 0;
  const auto n = static_cast<node_t>(g.node_count());
  for (node_t u = 0; u < n; ++u)
    for (node_t v = u + 1; v < n; ++v) {
      const double p = logistic_jb_prob(t[u], t[v], euclidean_kernel(g.coordinates(), u, v), eps);
      ll += g.has_edge(u, v) ? std::log(p) : std::log1p(-p);
    }
  return ll;
}

Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph::from_edges(e, leaves + 1);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph::from_edges(e, n);
}

double variance(const std::vector<double>& x) {
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST_SUITE("logistic-baselines") {

TEST_CASE("law values") {
  CHECK(logistic_cp_prob(2.5, 2.5) == doctest::Approx(0.99331).epsilon(1e-5));
  CHECK(logistic_cp_prob(-2.5, -2.5) == doctest::Approx(0.00669).epsilon(1e-3));
  CHECK(logistic_cp_prob(0, 0) == 0.5);
  CHECK(logistic_cp_prob(800, 800) == 1.0);
  CHECK(logistic_cp_prob(-800, -800) >= 0.0);
  CHECK(logistic_jb_prob(0, 0, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(logistic_jb_prob(1, 0, 3.0, 0.0) == doctest::Approx(logistic_cp_prob(1, 0)));
  CHECK(logistic_jb_prob(0, 0, 0.0, 1.0) == 1.0);
  CHECK(logistic_jb_prob(0.3, 0.2, 4.0, 2.0) == doctest::Approx(std::exp(0.5) / (16.0 + std::exp(0.5))));
  CHECK(logistic_th_prob(10, 3, 10) == doctest::Approx(1.0 / (1.0 + std::exp(-5.0))));
  CHECK(logistic_th_prob(5, 5, 10) == doctest::Approx(0.5));
}

TEST_CASE("rank-threshold parameters are validated") {
  ThModelParams p;
  p.pi = {1, 2, 3};
  CHECK_NOTHROW(p.validate());
  p.pi = {1, -1};
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
  p.pi = {1};
  p.s = 0;
  CHECK_THROWS_AS(p.validate(), InvalidParameter);
}

TEST_CASE("likelihood and gradient agree with the serial reference") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = oracle::erdos_renyi(50, 0.1, 20 + s);
    const auto t = random_theta(50, s);
    CHECK(logistic_cp_loglik(g, t) == doctest::Approx(logistic_cp_loglik_serial(g, t)).epsilon(1e-12));
    const auto a = logistic_cp_gradient(g, t);
    const auto b = logistic_cp_gradient_serial(g, t);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  }
}

TEST_CASE("gradients match finite differences") {
  const double h = 1e-5;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto g = with_coords(oracle::erdos_renyi(25, 0.15, 40 + s), s);
    auto t = random_theta(25, 100 + s);
    const JbKernelSpec k{g.coordinates(), 1.0};
    const auto gcp = logistic_cp_gradient(g, t);
    const auto gjb = logistic_jb_gradient(g, t, k);
    for (std::size_t i = 0; i < t.size(); ++i) {
      auto up = t, down = t;
      up[i] += h;
      down[i] -= h;
      const double fd_cp = (logistic_cp_loglik(g, up) - logistic_cp_loglik(g, down)) / (2 * h);
      const double fd_jb = (logistic_jb_loglik(g, up, k) - logistic_jb_loglik(g, down, k)) / (2 * h);
      CHECK(std::abs(fd_cp - gcp[i]) < 1e-6);
      CHECK(std::abs(fd_jb - gjb[i]) < 1e-6);
    }
  }
}

TEST_CASE("spatial likelihood against the pair loop") {
  const auto g = with_coords(oracle::erdos_renyi(30, 0.1, 9), 9);
  const auto t = random_theta(30, 9);
  for (double eps : {0.0, 0.5, 2.0})
    CHECK(logistic_jb_loglik(g, t, {g.coordinates(), eps}) == doctest::Approx(jb_loglik_oracle(g, t, eps)));
}

TEST_CASE("complete graph gives equal coreness") {
  std::vector<Edge> e;
  for (int u = 0; u < 8; ++u)
    for (int v = u + 1; v < 8; ++v) e.push_back({u, v});
  // the optimum is at infinity; the ascent stops once the gradient is tiny
  const auto f = fit_logistic_cp(Graph::from_edges(e, 8));
  CHECK(variance(f.scores.theta) < 1e-6);
  CHECK(f.gradient_norm < 1e-6);
}

TEST_CASE("regular graph gives equal coreness") {
  const auto f = fit_logistic_cp(cycle(12));
  CHECK(variance(f.scores.theta) < 1e-6);
}

TEST_CASE("ascent trace is nondecreasing") {
  const auto g = sample_igam({3, 2.0, 4}, 2).graph;
  const auto f = fit_logistic_cp(g);
  REQUIRE(f.trace.size() >= 2);
  for (std::size_t i = 1; i < f.trace.size(); ++i) CHECK(f.trace[i] >= f.trace[i - 1]);
  CHECK(f.loglik == doctest::Approx(logistic_cp_loglik(g, f.scores.theta)));
  // the core outranks the periphery
  const auto r = ranking_from_scores(f.scores.theta, RankingStrategy::LogisticCp);
  CHECK(std::find(r.order.begin(), r.order.begin() + 13, 0) != r.order.begin() + 13);
}

TEST_CASE("iteration cap raises non-convergence") {
  LogisticFitOptions opt;
  opt.max_iters = 1;
  opt.tol = 1e-14;
  CHECK_THROWS_AS(fit_logistic_cp(sample_igam({3, 2.0, 4}, 2).graph, opt), NonConvergence);
  CHECK_THROWS_AS(fit_logistic_cp(Graph::from_edges({}, 1)), InvalidParameter);
}

TEST_CASE("spatial fit with zero exponent reduces to the plain fit") {
  const auto g = with_coords(sample_igam({3, 2.0, 3}, 4).graph, 4);
  const auto cp = fit_logistic_cp(g);
  const auto jb = fit_logistic_jb_fixed(g, 0.0);
  for (std::size_t i = 0; i < cp.scores.theta.size(); ++i)
    CHECK(std::abs(cp.scores.theta[i] - jb.scores.theta[i]) < 1e-5);
}

TEST_CASE("spatial fit picks the best grid entry") {
  const auto g = with_coords(sample_igam({3, 2.0, 3}, 5).graph, 5);
  const auto best = fit_logistic_jb(g);
  double top = -1e300;
  for (double e : {0.5, 1.0, 2.0}) top = std::max(top, fit_logistic_jb_fixed(g, e).loglik);
  CHECK(best.loglik == doctest::Approx(top));
  CHECK((best.epsilon == 0.5 || best.epsilon == 1.0 || best.epsilon == 2.0));
}

TEST_CASE("spatial fit input errors") {
  const auto plain = cycle(6);
  CHECK_THROWS_AS(fit_logistic_jb(plain), MalformedInput);
  auto same = cycle(6);
  Coordinates c;
  c.dim = 2;
  c.values.assign(12, 1.0);
  same.set_coordinates(c);
  CHECK_THROWS_AS(fit_logistic_jb(same), SingularKernel);
  CHECK_THROWS_AS(fit_logistic_jb_fixed(with_coords(cycle(6), 1), -1.0), InvalidParameter);
}

TEST_CASE("rank-threshold scores: regular graphs are uniform") {
  const auto s = th_rank_scores(cycle(10));
  for (double x : s) CHECK(x == doctest::Approx(1.0));
}

TEST_CASE("rank-threshold scores: star centre is strictly on top") {
  const auto s = th_rank_scores(star(7));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[0] > s[i]);
  CHECK(s[0] == doctest::Approx(1.0));
}

TEST_CASE("rank-threshold scores do not depend on the start scale") {
  const auto g = sample_igam({3, 2.0, 4}, 8).graph;
  const auto a = th_rank_scores(g);
  const auto b = th_rank_scores_from(g, std::vector<double>(g.node_count(), 5.0));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-7));
  CHECK(ranking_from_scores(a, RankingStrategy::LogisticTh).order ==
        ranking_from_scores(b, RankingStrategy::LogisticTh).order);
}

TEST_CASE("rank-threshold scores: serial equals parallel") {
  const auto g = sample_igam({3, 2.0, 5}, 3).graph;
  ThOptions ser;
  ser.parallel = false;
  CHECK(th_rank_scores(g) == th_rank_scores(g, ser));
}

TEST_CASE("rank-threshold errors") {
  CHECK_THROWS(th_rank_scores(Graph::from_edges({}, 4)));
  CHECK_THROWS(th_rank_scores(Graph::from_edges(std::vector<Edge>{{0, 1}}, 2, true)));
  CHECK_THROWS(th_rank_scores_from(cycle(4), std::vector<double>(4, 0.0)));
}

TEST_CASE("ranks from scores") {
  const std::vector<double> s{0.2, 0.9, 0.5};
  CHECK(ranks_from_scores(s) == std::vector<double>{1, 3, 2});
}

}
