#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pds/cycle_census.hpp"
#include "pds/graph.hpp"
#include "pds/random_models.hpp"

namespace pds {

struct TestReport {
  // Empty when the statistic is undefined (no triangles, or n < 6).
  std::optional<double> t_n;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  double critical_value = 0.0;
  CycleCensus census;
  bool degenerate = false;
};

/// T_n = sqrt(C(n,3)) (c3^2 - c6) / (2 c3 sqrt(c3)). The numerator difference
/// is formed from the integer counts over a common denominator so that the
/// cancellation under the null loses no precision.
std::optional<double> cycle_statistic(const CycleCensus& census);

/// Two-sided test: reject iff |T_n| > z_{alpha/2}; p = 2 (1 - Phi(|T_n|)).
TestReport t_statistic(const CycleCensus& census, double alpha = 0.05);
TestReport t_statistic(const Graph& g, double alpha = 0.05);

/// E[A_12 A_23 A_31 | W] / (W_1 W_2 W_3)^2 under the planted model.
double coefficient_an(const ModelParams& params);
/// Same for the 6-cycle 1-2-3-4-5-6-1.
double coefficient_bn(const ModelParams& params);

struct ExpectedDensities {
  double c3 = 0.0;
  double c6 = 0.0;
};

/// c3 = A_n e3(W^2) / C(n,3), c6 = B_n e6(W^2) / C(n,6). Throws SizeError for n < 6.
ExpectedDensities expected_densities(const ModelParams& params,
                                     const WeightVector& w);

/// Leading term 2 (a-b)^3 b^3 r^3 (1-r)^3 / n^6 * ||W||_2^12 / (3!^2 C(n,3)^2).
double lambda1_leading(const ModelParams& params, const WeightVector& w);

/// (a-b)^6 b^6 r^6 (1-r)^6 ||W||_2^6 / (n^12 p0^9), p0 = a/n; 0 unless a > b.
double lambda_sq(const ModelParams& params, const WeightVector& w);

/// r^2 (a-b) ||W||_2^2 / n.
double power_index(const ModelParams& params, const WeightVector& w);

struct TheoreticalQuantities {
  double a_n = 0.0;
  double b_n = 0.0;
  double c3 = 0.0;
  double c6 = 0.0;
  double lambda1_leading = 0.0;
  // c3^2 - c6 from the exact expected densities.
  double lambda1_exact = 0.0;
  double lambda_sq = 0.0;
  // T_n evaluated at the exact expected densities.
  double lambda_exact = 0.0;
  double power_index = 0.0;
};

TheoreticalQuantities theoretical_quantities(const ModelParams& params,
                                             const WeightVector& w);

struct RegularityThresholds {
  // "x >> 1" is treated as violated when x <= t_low.
  double t_low = 5.0;
  double c1 = 1.0;
  double c2 = 1.0;
};

namespace regularity_flag {
inline constexpr const char* kNp0Small = "np0 >> 1 violated";
inline constexpr const char* kNp0Large = "np0 << sqrt(n) violated";
inline constexpr const char* kP0Norm2Small = "p0*||W||_2^2 >> 1 violated";
inline constexpr const char* kNorm2Large = "||W||_2^2 <= c2*n violated";
// Suffixed with " (k=K)".
inline constexpr const char* kNormKLarge = "||W||_k^k <= c1*||W||_2^2 violated";
inline constexpr const char* kNormKSmall = "||W||_k^k >> 1 violated";
}  // namespace regularity_flag

struct RegularityReport {
  double n_p0 = 0.0;
  double sqrt_n = 0.0;
  double p0_norm2sq = 0.0;
  double norm2sq = 0.0;
  double norm2sq_over_n = 0.0;
  // Index k - 3 holds ||W||_k^k and ||W||_k^k / ||W||_2^2, k = 3..12.
  std::array<double, 10> normk{};
  std::array<double, 10> norm_ratios{};
  RegularityThresholds thresholds;
  std::vector<std::string> flags;
};

RegularityReport check_regularity(int n, double p0, const WeightVector& w,
                                  const RegularityThresholds& thresholds = {});

}  // namespace pds
