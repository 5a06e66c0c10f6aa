#include "pds/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "pds/errors.hpp"

namespace pds {

struct GraphBuilderAccess {
  // `edges` must be simple, u < v, sorted and unique.
  static Graph build(Vertex n, const std::vector<Edge>& edges) {
    Graph g;
    g.n_ = n;
    std::vector<std::int64_t> deg(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.targets_.resize(2 * edges.size());
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
      g.targets_[cursor[u]++] = v;
      g.targets_[cursor[v]++] = u;
    }
    for (Vertex v = 0; v < n; ++v) {
      std::sort(g.targets_.begin() + g.offsets_[v],
                g.targets_.begin() + g.offsets_[v + 1]);
    }
    return g;
  }
};

bool Graph::has_edge(Vertex u, Vertex v) const noexcept {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) return false;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(m()));
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph from_edges(Vertex n, std::span<const Edge> pairs, BuildStats* stats) {
  if (n < 0) throw InputError("vertex count must be nonnegative");
  std::vector<Edge> simple;
  simple.reserve(pairs.size());
  std::int64_t loops = 0;
  for (auto [u, v] : pairs) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("vertex label out of range [0, " + std::to_string(n) +
                       "): (" + std::to_string(u) + ", " + std::to_string(v) +
                       ")");
    }
    if (u == v) {
      ++loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    simple.emplace_back(u, v);
  }
  std::sort(simple.begin(), simple.end());
  const auto before = static_cast<std::int64_t>(simple.size());
  simple.erase(std::unique(simple.begin(), simple.end()), simple.end());
  if (stats) {
    stats->dropped_self_loops = loops;
    stats->collapsed_duplicates =
        before - static_cast<std::int64_t>(simple.size());
  }
  return GraphBuilderAccess::build(n, simple);
}

DegreeSequence degree_sequence(const Graph& g) {
  DegreeSequence d;
  d.degrees.resize(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) d.degrees[v] = g.degree(v);
  return d;
}

namespace {

bool is_comment(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '%' || line[pos] == '#';
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ',')
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view tok, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer vertex index, got '" +
                         std::string(tok) + "'",
                     line_no);
  }
  return value;
}

}  // namespace

LoadedGraph load_edge_list(std::istream& in, const LoadOptions& options) {
  ParseReport report;
  std::optional<Vertex> n = options.explicit_n;
  int base = options.index_base;
  bool expect_size_line = options.format == EdgeListFormat::kMatrixMarket;
  report.matrix_market = expect_size_line;

  std::unordered_map<std::string, Vertex> label_map;
  std::vector<Edge> pairs;
  std::string line;
  std::size_t line_no = 0;
  bool any_content = false;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.starts_with("%%MatrixMarket")) {
      expect_size_line = true;
      report.matrix_market = true;
      continue;
    }
    if (is_comment(view)) continue;
    auto toks = tokens(view);
    if (toks.empty()) continue;
    any_content = true;

    if (expect_size_line) {
      expect_size_line = false;
      if (toks.size() < 2) throw ParseError("malformed MatrixMarket size line", line_no);
      const auto rows = parse_int(toks[0], line_no);
      const auto cols = parse_int(toks[1], line_no);
      if (rows != cols || rows < 0) {
        throw ParseError("MatrixMarket adjacency must be square", line_no);
      }
      if (!options.explicit_n) {
        n = static_cast<Vertex>(rows);
        base = 1;
      }
      continue;
    }

    if (toks.size() < 2) {
      throw ParseError("expected two vertex labels, got '" + line + "'", line_no);
    }
    ++report.lines_read;
    Vertex ends[2];
    for (int k = 0; k < 2; ++k) {
      if (n) {
        const auto raw = parse_int(toks[k], line_no) - base;
        if (raw < 0 || raw >= *n) {
          throw ParseError("vertex index " + std::string(toks[k]) +
                               " out of range for n=" + std::to_string(*n),
                           line_no);
        }
        ends[k] = static_cast<Vertex>(raw);
      } else {
        auto [it, inserted] = label_map.try_emplace(
            std::string(toks[k]), static_cast<Vertex>(report.labels.size()));
        if (inserted) report.labels.emplace_back(toks[k]);
        ends[k] = it->second;
      }
    }
    pairs.emplace_back(ends[0], ends[1]);
  }

  if (!any_content) throw InputError("edge list is empty");

  const Vertex vertex_count =
      n ? *n : static_cast<Vertex>(report.labels.size());
  if (n) {
    report.labels.resize(static_cast<std::size_t>(vertex_count));
    for (Vertex v = 0; v < vertex_count; ++v)
      report.labels[v] = std::to_string(v + base);
  }
  BuildStats stats;
  LoadedGraph out{from_edges(vertex_count, pairs, &stats), {}};
  report.n = vertex_count;
  report.m = out.graph.m();
  report.dropped_self_loops = stats.dropped_self_loops;
  report.collapsed_duplicates = stats.collapsed_duplicates;
  out.report = std::move(report);
  return out;
}

LoadedGraph load_edge_list_file(const std::string& path,
                                const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return load_edge_list(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.message(), e.line());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace pds
