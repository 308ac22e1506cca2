#include "igam/sampler.hpp"

#include <cmath>
#include <functional>

#include <omp.h>

#include "igam/errors.hpp"
#include "igam/rng.hpp"

namespace igam {

namespace {

constexpr std::int64_t kMaxSampledNodes = 20'000'000;

struct Block {
  int r;
  int s;
};

class BlockSampler {
 public:
  BlockSampler(std::vector<std::int64_t> sizes, std::function<double(int, int)> law, bool directed)
      : sizes_(std::move(sizes)), law_(std::move(law)), directed_(directed) {
    start_.assign(sizes_.size() + 1, 0);
    for (std::size_t h = 0; h < sizes_.size(); ++h) start_[h + 1] = start_[h] + sizes_[h];
    if (start_.back() > kMaxSampledNodes) throw InvalidParameter("model too large to sample");
    const int L = static_cast<int>(sizes_.size());
    for (int r = 0; r < L; ++r)
      for (int s = directed_ ? 0 : r; s < L; ++s) blocks_.push_back({r, s});
  }

  std::size_t node_count() const { return static_cast<std::size_t>(start_.back()); }
  std::size_t block_count() const { return blocks_.size(); }

  void fill(std::size_t index, std::uint64_t seed, std::vector<Edge>& out) const {
    const auto [r, s] = blocks_[index];
    const double q = law_(r, s);
    if (q <= 0.0) return;
    Rng rng = stream_rng(seed, index + 1);
    const double log_miss = std::log1p(-q);
    // Gap to the next success, counted in pair positions (>= 1).
    auto step = [&]() -> std::int64_t {
      if (q >= 1.0) return 1;
      const double g = std::floor(std::log(uniform_open0(rng)) / log_miss);
      return g > 4e18 ? std::int64_t{4'000'000'000'000'000'000} : static_cast<std::int64_t>(g) + 1;
    };
    const std::int64_t nr = sizes_[r], ns = sizes_[s];
    const std::int64_t base_r = start_[r], base_s = start_[s];
    if (r != s) {
      const std::int64_t pairs = nr * ns;
      for (std::int64_t k = step() - 1; k < pairs; k += step())
        out.push_back({static_cast<node_t>(base_r + k / ns), static_cast<node_t>(base_s + k % ns)});
      return;
    }
    if (nr < 2) return;
    if (directed_) {
      const std::int64_t row = nr - 1;
      const std::int64_t pairs = nr * row;
      for (std::int64_t k = step() - 1; k < pairs; k += step()) {
        const std::int64_t i = k / row;
        std::int64_t j = k % row;
        if (j >= i) ++j;
        out.push_back({static_cast<node_t>(base_r + i), static_cast<node_t>(base_r + j)});
      }
      return;
    }
    // Upper triangle, walked row by row.
    std::int64_t i = 0;
    std::int64_t j = 0;
    for (;;) {
      j += step();
      while (i < nr - 1 && j >= nr) {
        const std::int64_t over = j - nr;
        ++i;
        j = i + 1 + over;
      }
      if (i >= nr - 1) break;
      out.push_back({static_cast<node_t>(base_r + i), static_cast<node_t>(base_r + j)});
    }
  }

  Graph run(std::uint64_t seed, bool parallel) const {
    std::vector<std::vector<Edge>> per_block(blocks_.size());
    const auto count = static_cast<std::int64_t>(blocks_.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t b = 0; b < count; ++b) fill(static_cast<std::size_t>(b), seed, per_block[b]);
    } else {
      for (std::int64_t b = 0; b < count; ++b) fill(static_cast<std::size_t>(b), seed, per_block[b]);
    }
    std::size_t total = 0;
    for (const auto& v : per_block) total += v.size();
    std::vector<Edge> edges;
    edges.reserve(total);
    for (auto& v : per_block) {
      edges.insert(edges.end(), v.begin(), v.end());
      std::vector<Edge>().swap(v);
    }
    return Graph::from_edges(edges, node_count(), directed_);
  }

 private:
  std::vector<std::int64_t> sizes_;
  std::vector<std::int64_t> start_;
  std::function<double(int, int)> law_;
  bool directed_;
  std::vector<Block> blocks_;
};

SampledGraph igam_impl(const IgamParams& p, std::uint64_t seed, bool parallel) {
  p.validate();
  const double c = p.c;
  BlockSampler sampler(full_level_sizes(p.b, p.H), [c](int r, int s) { return std::pow(c, -1.0 - std::min(r, s)); },
                       false);
  return {sampler.run(seed, parallel), HeightAssignment::perfect_tree(p.b, p.H)};
}

SampledGraph igam2_impl(const Igam2Params& p, std::uint64_t seed, bool parallel) {
  p.validate(true);
  BlockSampler sampler(full_level_sizes(p.b, p.H), [p](int r, int s) { return edge_probability_igam2(p, r, s); },
                       false);
  return {sampler.run(seed, parallel), HeightAssignment::perfect_tree(p.b, p.H)};
}

SampledGraph directed_impl(const IgamParams& p, std::uint64_t seed, bool parallel) {
  p.validate();
  const double c = p.c;
  // Block (r, s) holds arcs from level r to level s.
  BlockSampler sampler(full_level_sizes(p.b, p.H), [c](int, int s) { return std::pow(c, -1.0 - s); }, true);
  return {sampler.run(seed, parallel), HeightAssignment::perfect_tree(p.b, p.H)};
}

}  // namespace

SampledGraph sample_igam(const IgamParams& p, std::uint64_t seed) { return igam_impl(p, seed, true); }
SampledGraph sample_igam_serial(const IgamParams& p, std::uint64_t seed) { return igam_impl(p, seed, false); }

SampledGraph sample_igam2(const Igam2Params& p, std::uint64_t seed) { return igam2_impl(p, seed, true); }
SampledGraph sample_igam2_serial(const Igam2Params& p, std::uint64_t seed) { return igam2_impl(p, seed, false); }

SampledGraph sample_directed_igam(const IgamParams& p, std::uint64_t seed) { return directed_impl(p, seed, true); }
SampledGraph sample_directed_igam_serial(const IgamParams& p, std::uint64_t seed) {
  return directed_impl(p, seed, false);
}

ContinuousSample sample_continuous_igam(const IgamParams& p, std::size_t n, std::uint64_t seed,
                                        std::optional<double> delta) {
  p.validate();
  if (n > 50'000) throw InvalidParameter("continuous sampler is quadratic; n must be <= 50000");
  ContinuousSample out;
  out.heights = sample_continuous_heights(p, n, seed);
  DeltaIgamParams dp{p, delta.value_or(-1.0)};
  if (delta) dp.validate();
  const auto& h = out.heights;
  std::vector<std::vector<Edge>> rows(n);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t u = 0; u < count; ++u) {
    Rng rng = stream_rng(seed, static_cast<std::uint64_t>(u) + 1);
    for (std::int64_t v = u + 1; v < count; ++v) {
      const double prob = delta ? edge_probability_delta(dp, h[u], h[v]) : edge_probability_continuous(p, h[u], h[v]);
      if (uniform01(rng) < prob) rows[u].push_back({static_cast<node_t>(u), static_cast<node_t>(v)});
    }
  }
  std::vector<Edge> edges;
  for (auto& r : rows) edges.insert(edges.end(), r.begin(), r.end());
  out.graph = Graph::from_edges(edges, n);
  return out;
}

}  // namespace igam
