#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "igam/domination.hpp"
#include "igam/graph.hpp"
#include "igam/models.hpp"

namespace igam {

/// Shortest "%.*g" text that parses back to the same double (at most 17 digits).
std::string format_number(double x);

/// prefix_size,covered_fraction
void write_curve_csv(const std::filesystem::path& path, const DominationCurve& curve);
/// node_id,score
void write_scores_csv(const std::filesystem::path& path, std::span<const double> scores);

struct NamedCurve {
  std::string name;
  DominationCurve curve;
};

// Every SVG writer embeds its numbers as one JSON object per series inside
// a comment of the form <!-- igam-data {...} -->.

/// Covered percentage against prefix size, both axes log10.
std::string svg_domination_loglog(const std::vector<NamedCurve>& curves, const std::string& title);

/// Covered percentage of one ranking against another on log10 axes, with the fitted line.
std::string svg_joint_coverage(const NamedCurve& x, const NamedCurve& y, const LogLogFit& fit);

/// Level against log total degree with the regression line.
std::string svg_fit_scatter(const std::vector<std::pair<int, double>>& level_log_degrees, double slope,
                            double intercept, double r_squared, int b, double c);

/// Adjacency matrix with nodes ordered by height, binned to at most
/// `max_cells` cells per side; cell shade is the empirical density.
std::string svg_adjacency(const Graph& g, std::span<const int> heights, int max_cells = 200);

/// Nodes on horizontal rows by level, edges as straight lines.
std::string svg_layered(const Graph& g, std::span<const int> heights, std::size_t max_edges = 20000);

/// Pulls the JSON payloads back out of an SVG written above.
std::vector<std::string> svg_data_blocks(const std::string& svg);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace igam
