#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "igam/edge_list.hpp"
#include "igam/graph.hpp"
#include "igam/models.hpp"

namespace igam {

struct DatasetSpec {
  std::string name;
  /// Relative to the data directory: <name>/edges.txt.
  std::filesystem::path source_path;
  std::size_t expected_n = 0;
  std::size_t expected_m = 0;
  bool has_coordinates = false;
  bool skip_degree_filter = false;
  /// Published sizes are rounded (e.g. "1.9K"), so only a relative check applies.
  bool approximate = false;
};

/// The nine study datasets.
const std::vector<DatasetSpec>& dataset_registry();
/// Throws InvalidParameter for unknown names.
const DatasetSpec& find_dataset(const std::string& name);

struct Preprocessed {
  Graph graph;
  /// Raw id -> new id, -1 when removed.
  std::vector<node_t> old_to_new;
  /// New id -> raw id.
  std::vector<node_t> new_to_old;
};

/// Symmetrize, drop duplicates and self-loops, remove every node of degree
/// <= 4 (one pass, or repeated until none remain when `iterate` is set),
/// then reindex densely. Labels and coordinates are carried along.
/// Throws EmptyGraph when nothing survives.
Preprocessed preprocess(const Graph& raw, bool skip_degree_filter, bool iterate = false);

struct LoadOptions {
  bool iterate_filter = false;
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> coordinates;
};

struct LoadedGraph {
  Graph graph;
  /// Original token of every node of `graph`.
  std::vector<std::string> raw_ids;
  std::vector<std::string> warnings;
  long long delta_n = 0;
  long long delta_m = 0;
};

struct RawGraph {
  Graph graph;
  /// Original token of every node.
  std::vector<std::string> ids;
  std::vector<char> has_coordinates;
};

/// Parses an edge list and attaches the optional label CSV (node_id,label)
/// and coordinate CSV (node_id,x,y[,z]); label and coordinate rows are
/// keyed by the edge-list token. No preprocessing.
RawGraph read_raw_graph(const std::filesystem::path& edges, IdMode mode, const LoadOptions& options = {},
                        std::size_t min_nodes = 0);

/// Reads an edge list (tokens interned in first-seen order so that only
/// nodes named in the file exist), attaches labels and coordinates like
/// read_raw_graph, then preprocesses.
LoadedGraph load_graph_file(const std::filesystem::path& edges, bool skip_degree_filter, const LoadOptions& options = {});

/// Same without preprocessing: integer ids are kept verbatim and the node
/// count is at least `min_nodes`, so isolated nodes can be expressed.
LoadedGraph load_raw_graph_file(const std::filesystem::path& edges, const LoadOptions& options = {},
                                std::size_t min_nodes = 0);

/// load_graph_file on <data_dir>/<name>/{edges.txt,labels.csv,coords.csv}
/// plus a size check against the registry. A mismatch adds a warning
/// carrying the deltas; it never fails.
LoadedGraph load_dataset(const DatasetSpec& spec, const std::filesystem::path& data_dir, bool iterate_filter = false);

/// True when the loaded sizes match the registry (within 10% for approximate entries).
bool matches_registry(const DatasetSpec& spec, const LoadedGraph& loaded);

/// Canonical replay files: sorted edge list and new_id,raw_id map.
void write_canonical(const std::filesystem::path& dir, const LoadedGraph& loaded);

struct LevelLabels {
  int level = 0;
  std::vector<std::string> labels;
};

/// Labels of the nodes at heights 0..depth-1, each level ordered by
/// descending degree then id. Unlabeled graphs report numeric ids.
std::vector<LevelLabels> core_labels_report(const Graph& g, const HeightAssignment& heights, int depth = 3);

/// Published qualitative core lists (levels 0..2) or nullptr when the
/// dataset has none.
const std::vector<std::vector<std::string>>* reference_core_labels(const std::string& dataset);

/// Fraction of reference entries that appear (case-insensitive, ignoring
/// punctuation) among the reported labels of any listed level.
double core_label_overlap(const std::vector<LevelLabels>& report,
                          const std::vector<std::vector<std::string>>& reference);

}  // namespace igam
