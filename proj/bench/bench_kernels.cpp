// Serial reference vs OpenMP kernels. Prints one line per kernel:
//   name  serial_ms  parallel_ms  speedup  threads  agree
//
// usage: bench_kernels [H] [repeats]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <omp.h>

#include "igam/domination.hpp"
#include "igam/fitting.hpp"
#include "igam/graph.hpp"
#include "igam/logistic.hpp"
#include "igam/sampler.hpp"

namespace {

double time_ms(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-22s %10.2f %10.2f %8.2fx %4d  %s\n", name, serial, parallel, serial / parallel, omp_get_max_threads(),
              agree ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const int H = argc > 1 ? std::atoi(argv[1]) : 7;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  const igam::IgamParams p{3, 2.0, H};

  std::printf("IGAM b=3 c=2 H=%d, best of %d\n", H, repeats);
  std::printf("%-22s %10s %10s %9s %4s  %s\n", "kernel", "serial_ms", "omp_ms", "speedup", "thr", "agree");

  igam::SampledGraph a, b;
  double ts = time_ms([&] { a = igam::sample_igam_serial(p, 7); }, repeats);
  double tp = time_ms([&] { b = igam::sample_igam(p, 7); }, repeats);
  row("sample_igam", ts, tp, a.graph.edges() == b.graph.edges());
  const igam::Graph& g = b.graph;
  std::printf("# n = %zu, m = %zu\n", g.node_count(), g.edge_count());

  std::int64_t t1 = 0, t2 = 0;
  ts = time_ms([&] { t1 = igam::count_triangles_serial(g); }, repeats);
  tp = time_ms([&] { t2 = igam::count_triangles(g); }, repeats);
  row("count_triangles", ts, tp, t1 == t2);

  const auto giant = igam::giant_component(g).graph;
  std::size_t d1 = 0, d2 = 0;
  ts = time_ms([&] { d1 = igam::diameter_serial(giant); }, 1);
  tp = time_ms([&] { d2 = igam::diameter(giant); }, repeats);
  row("diameter", ts, tp, d1 == d2);

  igam::GreedyResult g1, g2;
  ts = time_ms([&] { g1 = igam::greedy_max_coverage_serial(g); }, 1);
  tp = time_ms([&] { g2 = igam::greedy_max_coverage(g); }, repeats);
  row("greedy_max_coverage", ts, tp, g1.ranking.order == g2.ranking.order);

  igam::FitOptions serial_fit, par_fit;
  serial_fit.parallel = false;
  serial_fit.b_max = par_fit.b_max = 40;
  igam::FitResult f1, f2;
  ts = time_ms([&] { f1 = igam::fit(g, serial_fit); }, repeats);
  tp = time_ms([&] { f2 = igam::fit(g, par_fit); }, repeats);
  row("fit_sweep", ts, tp, f1.b_star == f2.b_star && f1.c_star == f2.c_star);

  // the dense logistic kernels are quadratic in n; use a smaller instance
  const auto small = igam::sample_igam({3, 2.0, std::min(H, 6)}, 11).graph;
  std::vector<double> theta(small.node_count());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = -1.0 + 0.001 * static_cast<double>(i % 997);
  std::vector<double> r1, r2;
  ts = time_ms([&] { r1 = igam::logistic_cp_gradient_serial(small, theta); }, repeats);
  tp = time_ms([&] { r2 = igam::logistic_cp_gradient(small, theta); }, repeats);
  double gap = 0;
  for (std::size_t i = 0; i < r1.size(); ++i) gap = std::max(gap, std::abs(r1[i] - r2[i]));
  row("cp_gradient", ts, tp, gap < 1e-8);

  igam::ThOptions ths, thp;
  ths.parallel = false;
  std::vector<double> s1, s2;
  ts = time_ms([&] { s1 = igam::th_rank_scores(small, ths); }, repeats);
  tp = time_ms([&] { s2 = igam::th_rank_scores(small, thp); }, repeats);
  row("th_rank_scores", ts, tp, s1 == s2);
  return 0;
}
