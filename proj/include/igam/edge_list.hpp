#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "igam/graph.hpp"

namespace igam {

/// How node tokens in an edge-list file map to dense ids.
enum class IdMode {
  Auto,     ///< integers used verbatim if every token is a non-negative integer, else intern
  Integer,  ///< every token must be a non-negative integer
  Intern,   ///< tokens interned in first-seen order
};

struct EdgeListData {
  std::vector<Edge> edges;
  std::size_t node_count = 0;
  /// Original token of each dense id; empty when integer ids were kept verbatim.
  std::vector<std::string> names;

  /// Token for id v: names[v] if interned, else the decimal id.
  std::string name_of(node_t v) const;
};

/// Parses one edge per line; ids separated by whitespace and/or commas;
/// lines starting with '#' or '%' and blank lines are skipped; extra columns
/// (e.g. weights) are ignored. Throws ParseError carrying the line number.
EdgeListData parse_edge_list(std::istream& in, IdMode mode = IdMode::Auto);
EdgeListData read_edge_list(const std::filesystem::path& path, IdMode mode = IdMode::Auto);

/// Writes "u v" per line, u < v for undirected graphs, sorted.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

/// Heights sidecar: "node_id height" per line.
void write_heights(std::ostream& out, std::span<const int> heights);
void write_heights(std::ostream& out, std::span<const double> heights);
void write_heights(const std::filesystem::path& path, std::span<const int> heights);
void write_heights(const std::filesystem::path& path, std::span<const double> heights);
std::vector<int> read_heights(const std::filesystem::path& path, std::size_t n);

/// Rows of a comma-separated file with '#' comments; a first row whose
/// numeric columns fail to parse is treated as a header by the callers.
std::vector<std::vector<std::string>> read_csv_rows(const std::filesystem::path& path);

}  // namespace igam
