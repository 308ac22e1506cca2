#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "igam/graph.hpp"
#include "igam/models.hpp"

namespace igam {

struct SampledGraph {
  Graph graph;
  HeightAssignment heights;
};

struct ContinuousSample {
  Graph graph;
  std::vector<double> heights;
};

/// Node ids are level-ordered (root 0, then level 1, ...). Each level-pair
/// block has a constant link probability and is filled by geometric skipping
/// with its own generator stream, so the result depends on the seed only,
/// never on the thread count. The *_serial variants run the blocks in order
/// on the calling thread.
SampledGraph sample_igam(const IgamParams& p, std::uint64_t seed);
SampledGraph sample_igam_serial(const IgamParams& p, std::uint64_t seed);

SampledGraph sample_igam2(const Igam2Params& p, std::uint64_t seed);
SampledGraph sample_igam2_serial(const Igam2Params& p, std::uint64_t seed);

/// Directed extension; arcs u -> v with probability c^(-1 - h(v)).
SampledGraph sample_directed_igam(const IgamParams& p, std::uint64_t seed);
SampledGraph sample_directed_igam_serial(const IgamParams& p, std::uint64_t seed);

/// Continuous heights drawn from the latent CDF; every pair tossed with
/// c^(-1 - min) (or the power-mean law when `delta` is given). O(n^2).
ContinuousSample sample_continuous_igam(const IgamParams& p, std::size_t n, std::uint64_t seed,
                                        std::optional<double> delta = std::nullopt);

}  // namespace igam
