#include "pds/cycle_census.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pds/errors.hpp"

namespace pds {

unsigned __int128 binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  constexpr auto kMax = ~static_cast<unsigned __int128>(0);
  for (std::int64_t i = 1; i <= k; ++i) {
    const auto factor = static_cast<unsigned __int128>(n - k + i);
    if (result > kMax / factor) throw std::overflow_error("binomial overflow");
    // result * factor is divisible by i at every step.
    result = result * factor / static_cast<unsigned __int128>(i);
  }
  return result;
}

namespace {

void checked_add(std::uint64_t& acc, std::uint64_t x) {
  if (__builtin_add_overflow(acc, x, &acc)) {
    throw std::overflow_error("6-cycle count exceeds 64 bits");
  }
}

std::uint64_t six_cycles_meet_in_middle(const Graph& g) {
  const Vertex n = g.n();
  std::vector<std::array<Vertex, 3>> paths;  // (t, a, b) for root-a-b-t
  std::vector<std::int64_t> count_a(n, 0), count_b(n, 0);
  std::vector<std::uint8_t> root_adjacent(n, 0);
  std::uint64_t total = 0;

  for (Vertex root = 0; root < n; ++root) {
    paths.clear();
    for (Vertex a : g.neighbors(root)) {
      if (a < root) continue;
      root_adjacent[a] = 1;
      for (Vertex b : g.neighbors(a)) {
        if (b <= root) continue;
        for (Vertex t : g.neighbors(b)) {
          if (t > root && t != a) paths.push_back({t, a, b});
        }
      }
    }
    std::sort(paths.begin(), paths.end());

    std::uint64_t root_total = 0;
    for (std::size_t lo = 0; lo < paths.size();) {
      const Vertex t = paths[lo][0];
      std::size_t hi = lo;
      while (hi < paths.size() && paths[hi][0] == t) ++hi;

      for (std::size_t p = lo; p < hi; ++p) {
        ++count_a[paths[p][1]];
        ++count_b[paths[p][2]];
      }
      // Ordered pairs of vertex-disjoint paths: N^2 minus pairs sharing the
      // first inner vertex, the second, or one crossed; N (identical pairs)
      // and M (mirror pairs a<->b) are removed twice by those terms.
      const auto count = static_cast<std::int64_t>(hi - lo);
      std::int64_t same_a = 0, same_b = 0, crossed = 0, mirrored = 0;
      for (std::size_t p = lo; p < hi; ++p) {
        const Vertex a = paths[p][1], b = paths[p][2];
        same_a += count_a[a];
        same_b += count_b[b];
        crossed += count_b[a];
        if (root_adjacent[b] && g.has_edge(a, t)) ++mirrored;
      }
      const std::int64_t ordered =
          count * count - same_a - same_b - 2 * crossed + count + mirrored;
      root_total += static_cast<std::uint64_t>(ordered / 2);

      for (std::size_t p = lo; p < hi; ++p) {
        count_a[paths[p][1]] = 0;
        count_b[paths[p][2]] = 0;
      }
      lo = hi;
    }
    for (Vertex a : g.neighbors(root)) root_adjacent[a] = 0;
    checked_add(total, root_total);
  }
  return total;
}

struct PathExtension {
  const Graph& g;
  Vertex root = 0;
  Vertex second = 0;
  std::array<Vertex, 6> path{};
  std::uint64_t found = 0;

  bool on_path(Vertex v, int depth) const {
    for (int i = 0; i < depth; ++i)
      if (path[i] == v) return true;
    return false;
  }

  void extend(int depth) {
    const Vertex last = path[depth - 1];
    if (depth == 6) {
      if (second < last && g.has_edge(last, root)) ++found;
      return;
    }
    for (Vertex next : g.neighbors(last)) {
      if (next <= root || on_path(next, depth)) continue;
      path[depth] = next;
      if (depth == 1) second = next;
      extend(depth + 1);
    }
  }
};

std::uint64_t six_cycles_path_extension(const Graph& g) {
  std::uint64_t total = 0;
  PathExtension walker{g};
  for (Vertex root = 0; root < g.n(); ++root) {
    walker.root = root;
    walker.path[0] = root;
    walker.found = 0;
    walker.extend(1);
    checked_add(total, walker.found);
  }
  return total;
}

}  // namespace

std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t total = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    const auto nu = g.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      // Count common neighbors w > v.
      auto i = std::upper_bound(nu.begin(), nu.end(), v);
      auto j = std::upper_bound(nv.begin(), nv.end(), v);
      while (i != nu.end() && j != nv.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++total;
          ++i;
          ++j;
        }
      }
    }
  }
  return total;
}

std::uint64_t count_six_cycles(const Graph& g, SixCycleMethod method) {
  if (g.n() < 6) return 0;
  switch (method) {
    case SixCycleMethod::kPathExtension:
      return six_cycles_path_extension(g);
    case SixCycleMethod::kMeetInTheMiddle:
    default:
      return six_cycles_meet_in_middle(g);
  }
}

namespace {

CycleCensus assemble(const Graph& g, std::uint64_t n3, std::uint64_t n6) {
  CycleCensus c;
  c.n = g.n();
  c.m = g.m();
  c.n3 = n3;
  c.n6 = n6;
  c.degenerate = g.n() < 6;
  if (g.n() >= 3) {
    c.c3_hat = static_cast<double>(static_cast<long double>(n3) /
                                   static_cast<long double>(binomial(g.n(), 3)));
  }
  if (g.n() >= 6) {
    const auto denom = 60 * binomial(g.n(), 6);
    c.c6_hat = static_cast<double>(static_cast<long double>(n6) /
                                   static_cast<long double>(denom));
  }
  return c;
}

}  // namespace

CycleCensus census(const Graph& g, SixCycleMethod method) {
  return assemble(g, count_triangles(g), count_six_cycles(g, method));
}

CycleCensus oracle_census(const Graph& g) {
  const Vertex n = g.n();
  if (n > 12) throw SizeError("oracle_census supports n <= 12");
  using AdjacencyMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
  AdjacencyMatrix adj = AdjacencyMatrix::Zero(n, n);
  for (const auto& [u, v] : g.edges()) adj(u, v) = adj(v, u) = 1;

  std::uint64_t n3 = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      for (Vertex k = j + 1; k < n; ++k) n3 += adj(i, j) * adj(j, k) * adj(k, i);

  // Sum of A_{p1p2} A_{p2p3} ... A_{p6p1} over every 6-subset and every
  // ordering p of it.
  std::uint64_t ordered_sum = 0;
  if (n >= 6) {
    std::vector<std::uint8_t> select(n, 0);
    std::fill(select.end() - 6, select.end(), 1);
    do {
      std::array<Vertex, 6> perm{};
      int idx = 0;
      for (Vertex v = 0; v < n; ++v)
        if (select[v]) perm[idx++] = v;
      do {
        int prod = 1;
        for (int s = 0; s < 6 && prod; ++s) prod *= adj(perm[s], perm[(s + 1) % 6]);
        ordered_sum += static_cast<std::uint64_t>(prod);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } while (std::next_permutation(select.begin(), select.end()));
  }

  CycleCensus c = assemble(g, n3, ordered_sum / 12);
  if (n >= 6) {
    c.c6_hat = static_cast<double>(
        static_cast<long double>(ordered_sum) /
        static_cast<long double>(720 * binomial(n, 6)));
  }
  return c;
}

}  // namespace pds
