#include "pds/inference.hpp"

#include <cmath>
#include <string>

#include "pds/elementary_symmetric.hpp"
#include "pds/errors.hpp"
#include "pds/normal.hpp"

namespace pds {

namespace {

using Int128 = __int128;

// n3^2 * 60 C(n,6) - n6 * C(n,3)^2, or nullopt if it would overflow.
std::optional<Int128> exact_numerator(const CycleCensus& c, Int128 c3n,
                                      Int128 c6n60) {
  Int128 n3sq, left, c3sq, right, diff;
  const auto n3 = static_cast<Int128>(c.n3);
  if (__builtin_mul_overflow(n3, n3, &n3sq) ||
      __builtin_mul_overflow(n3sq, c6n60, &left) ||
      __builtin_mul_overflow(c3n, c3n, &c3sq) ||
      __builtin_mul_overflow(static_cast<Int128>(c.n6), c3sq, &right) ||
      __builtin_sub_overflow(left, right, &diff)) {
    return std::nullopt;
  }
  return diff;
}

}  // namespace

std::optional<double> cycle_statistic(const CycleCensus& census) {
  if (census.n < 6 || census.n3 == 0) return std::nullopt;
  const auto c3n = static_cast<Int128>(binomial(census.n, 3));
  const auto c6n60 = static_cast<Int128>(60 * binomial(census.n, 6));
  const long double c3n_f = static_cast<long double>(c3n);

  long double numerator;  // c3_hat^2 - c6_hat
  if (auto exact = exact_numerator(census, c3n, c6n60)) {
    numerator = static_cast<long double>(*exact) /
                (c3n_f * c3n_f * static_cast<long double>(c6n60));
  } else {
    const long double c3 = static_cast<long double>(census.n3) / c3n_f;
    numerator = c3 * c3 - static_cast<long double>(census.n6) /
                              static_cast<long double>(c6n60);
  }
  const long double c3 = static_cast<long double>(census.n3) / c3n_f;
  const long double t = std::sqrt(c3n_f) * numerator / (2.0L * c3 * std::sqrt(c3));
  if (!std::isfinite(static_cast<double>(t))) return std::nullopt;
  return static_cast<double>(t);
}

TestReport t_statistic(const CycleCensus& census, double alpha) {
  TestReport report;
  report.alpha = alpha;
  report.critical_value = two_sided_critical(alpha);
  report.census = census;
  report.t_n = cycle_statistic(census);
  report.degenerate = !report.t_n.has_value();
  if (report.t_n) {
    const double abs_t = std::fabs(*report.t_n);
    report.p_value = std::min(1.0, 2.0 * normal_sf(abs_t));
    report.reject = abs_t > report.critical_value;
  }
  return report;
}

TestReport t_statistic(const Graph& g, double alpha) {
  return t_statistic(census(g), alpha);
}

double coefficient_an(const ModelParams& params) {
  const double d = (params.a - params.b) / params.n;
  const double b = params.b / params.n;
  const double r = params.r;
  const double r2 = r * r, r3 = r2 * r;
  return d * d * d * r3 + 3 * d * d * b * r3 + 3 * d * b * b * r2 + b * b * b;
}

double coefficient_bn(const ModelParams& params) {
  const double d = (params.a - params.b) / params.n;
  const double b = params.b / params.n;
  const double r = params.r;
  const double d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d, d6 = d5 * d;
  const double b2 = b * b, b3 = b2 * b, b4 = b3 * b, b5 = b4 * b, b6 = b5 * b;
  const double r2 = r * r, r3 = r2 * r, r4 = r3 * r, r5 = r4 * r, r6 = r5 * r;
  return r6 * (d6 + 6 * d5 * b + 9 * d4 * b2 + 2 * d3 * b3) +
         r5 * (6 * d4 * b2 + 12 * d3 * b3) +
         r4 * (6 * d3 * b3 + 9 * d2 * b4) +
         r3 * 6 * d2 * b4 + r2 * 6 * d * b5 + b6;
}

ExpectedDensities expected_densities(const ModelParams& params,
                                     const WeightVector& w) {
  if (params.n < 6) throw SizeError("expected_densities needs n >= 6");
  params.validate(w);
  const Eigen::VectorXd w2 = w.values().array().square();
  const Eigen::VectorXd e = elementary_symmetric_all(w2, 6);
  const auto c3n = static_cast<double>(binomial(params.n, 3));
  const auto c6n = static_cast<double>(binomial(params.n, 6));
  return {coefficient_an(params) * e(3) / c3n,
          coefficient_bn(params) * e(6) / c6n};
}

double lambda1_leading(const ModelParams& params, const WeightVector& w) {
  const double n = params.n;
  const double d = params.a - params.b;
  const double r = params.r;
  const double c3n = static_cast<double>(binomial(params.n, 3));
  const double scale = std::pow(w.norm2sq(), 6) / (36.0 * c3n * c3n);
  return 2.0 * std::pow(d / n, 3) * std::pow(params.b / n, 3) *
         std::pow(r * (1.0 - r), 3) * scale;
}

double lambda_sq(const ModelParams& params, const WeightVector& w) {
  if (!(params.a > params.b)) return 0.0;
  const double n = params.n;
  const double p0 = params.a / n;
  // Grouped as ((a-b)/n)^6 (b/n)^6 / p0^9 to stay in range.
  const double d = (params.a - params.b) / n;
  const double b = params.b / n;
  return std::pow(d, 6) * std::pow(b, 6) *
         std::pow(params.r * (1.0 - params.r), 6) * std::pow(w.norm2sq(), 3) /
         std::pow(p0, 9);
}

double power_index(const ModelParams& params, const WeightVector& w) {
  return params.r * params.r * (params.a - params.b) * w.norm2sq() / params.n;
}

TheoreticalQuantities theoretical_quantities(const ModelParams& params,
                                             const WeightVector& w) {
  TheoreticalQuantities q;
  q.a_n = coefficient_an(params);
  q.b_n = coefficient_bn(params);
  const auto dens = expected_densities(params, w);
  q.c3 = dens.c3;
  q.c6 = dens.c6;
  q.lambda1_leading = lambda1_leading(params, w);
  q.lambda1_exact = dens.c3 * dens.c3 - dens.c6;
  q.lambda_sq = lambda_sq(params, w);
  if (dens.c3 > 0.0) {
    const double c3n = static_cast<double>(binomial(params.n, 3));
    q.lambda_exact =
        std::sqrt(c3n) * q.lambda1_exact / (2.0 * dens.c3 * std::sqrt(dens.c3));
  }
  q.power_index = power_index(params, w);
  return q;
}

RegularityReport check_regularity(int n, double p0, const WeightVector& w,
                                  const RegularityThresholds& thresholds) {
  namespace flag = regularity_flag;
  RegularityReport rep;
  rep.thresholds = thresholds;
  rep.n_p0 = n * p0;
  rep.sqrt_n = std::sqrt(static_cast<double>(n));
  rep.norm2sq = w.norm2sq();
  rep.p0_norm2sq = p0 * rep.norm2sq;
  rep.norm2sq_over_n = rep.norm2sq / n;

  if (rep.n_p0 <= thresholds.t_low) rep.flags.emplace_back(flag::kNp0Small);
  if (rep.n_p0 >= rep.sqrt_n) rep.flags.emplace_back(flag::kNp0Large);
  if (rep.p0_norm2sq <= thresholds.t_low) rep.flags.emplace_back(flag::kP0Norm2Small);
  for (int k = 3; k <= 12; ++k) {
    const double nk = w.normk(k);
    rep.normk[k - 3] = nk;
    rep.norm_ratios[k - 3] = rep.norm2sq > 0.0 ? nk / rep.norm2sq : 0.0;
    const std::string suffix = " (k=" + std::to_string(k) + ")";
    if (nk > thresholds.c1 * rep.norm2sq)
      rep.flags.push_back(flag::kNormKLarge + suffix);
    if (nk <= thresholds.t_low) rep.flags.push_back(flag::kNormKSmall + suffix);
  }
  if (rep.norm2sq > thresholds.c2 * n) rep.flags.emplace_back(flag::kNorm2Large);
  return rep;
}

}  // namespace pds
