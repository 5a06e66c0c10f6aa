#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pds {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable undirected simple graph on vertices 0..n-1 stored as sorted
/// adjacency lists (CSR layout).
class Graph {
 public:
  Graph() = default;

  Vertex n() const noexcept { return n_; }
  std::int64_t m() const noexcept {
    return static_cast<std::int64_t>(targets_.size() / 2);
  }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {targets_.data() + offsets_[v],
            targets_.data() + offsets_[v + 1]};
  }
  int degree(Vertex v) const noexcept {
    return static_cast<int>(offsets_[v + 1] - offsets_[v]);
  }
  bool has_edge(Vertex u, Vertex v) const noexcept;

  /// Edge list with u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

 private:
  friend struct GraphBuilderAccess;

  Vertex n_ = 0;
  std::vector<std::int64_t> offsets_{0};
  std::vector<Vertex> targets_;
};

struct BuildStats {
  std::int64_t dropped_self_loops = 0;
  std::int64_t collapsed_duplicates = 0;
};

/// Builds a simple graph from raw pairs. Duplicates and reversed pairs collapse
/// to one edge, self-loops are dropped; both are counted in `stats`.
/// Throws InputError for labels outside [0, n).
Graph from_edges(Vertex n, std::span<const Edge> pairs,
                 BuildStats* stats = nullptr);

struct DegreeSequence {
  std::vector<int> degrees;
};

DegreeSequence degree_sequence(const Graph& g);

enum class EdgeListFormat { kAuto, kEdgeList, kMatrixMarket };

struct LoadOptions {
  EdgeListFormat format = EdgeListFormat::kAuto;
  // When set, labels are parsed as integers in [index_base, n + index_base)
  // and no remapping takes place.
  std::optional<Vertex> explicit_n;
  int index_base = 0;
};

struct ParseReport {
  Vertex n = 0;
  std::int64_t m = 0;
  std::int64_t dropped_self_loops = 0;
  std::int64_t collapsed_duplicates = 0;
  std::int64_t lines_read = 0;
  bool matrix_market = false;
  // labels[i] is the token that was mapped to vertex i.
  std::vector<std::string> labels;
};

struct LoadedGraph {
  Graph graph;
  ParseReport report;
};

/// Reads a whitespace separated edge list. Lines starting with '%' or '#' are
/// comments; a MatrixMarket banner and its size line are skipped. Tokens past
/// the second on a line (weights) are ignored.
///
/// Without an explicit n, labels are arbitrary tokens remapped to 0..n-1 in
/// first-seen order. MatrixMarket input takes n from its size line and reads
/// 1-based indices.
LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadedGraph load_edge_list_file(const std::string& path,
                                const LoadOptions& options = {});

/// One "u v" line per edge, 0-based, u < v, lexicographic order.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace pds
