#pragma once

#include <cstdint>

#include "pds/graph.hpp"

namespace pds {

/// Exact 3- and 6-cycle counts with their densities.
///
/// c6_hat is normalized by 60 C(n,6): each undirected 6-cycle on a fixed
/// 6-set is traced by 12 of the 6! vertex orderings, so the permutation
/// average over all 6-sets reduces to n6 / (60 C(n,6)).
struct CycleCensus {
  Vertex n = 0;
  std::int64_t m = 0;
  std::uint64_t n3 = 0;
  std::uint64_t n6 = 0;
  double c3_hat = 0.0;
  double c6_hat = 0.0;
  // n < 6: at least one density has an empty normalizer and is reported as 0.
  bool degenerate = false;
};

/// C(n, k) in 128-bit arithmetic; throws std::overflow_error if it does not fit.
unsigned __int128 binomial(std::int64_t n, std::int64_t k);

/// Sorted-neighbor intersection, O(m d_max).
std::uint64_t count_triangles(const Graph& g);

enum class SixCycleMethod {
  // Pairs of internally disjoint 3-paths between the minimum vertex of the
  // cycle and its antipode, counted by inclusion-exclusion.
  kMeetInTheMiddle,
  // Min-rooted path extension v1..v6 with all v_i > v1 and v2 < v6.
  kPathExtension,
};

/// Number of 6-cycles, each counted once as an undirected subgraph.
/// Throws std::overflow_error if the count exceeds 64 bits.
std::uint64_t count_six_cycles(
    const Graph& g, SixCycleMethod method = SixCycleMethod::kMeetInTheMiddle);

CycleCensus census(const Graph& g,
                   SixCycleMethod method = SixCycleMethod::kMeetInTheMiddle);

/// Literal evaluation of the density definitions: triple enumeration for
/// triangles and the sum over all 6-subsets and all 720 orderings for
/// 6-cycles. Exponential cost; throws SizeError for n > 12.
CycleCensus oracle_census(const Graph& g);

}  // namespace pds
