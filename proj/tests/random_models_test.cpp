#include "pds/random_models.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "pds/errors.hpp"

namespace pds {
namespace {

double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
}

double standard_error(const std::vector<double>& xs) {
  const double mu = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / (xs.size() - 1) / xs.size());
}

// Direct double loop over pairs, independent of the closed form in the library.
double pair_weight_sum(const WeightVector& w) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    for (Eigen::Index j = i + 1; j < w.size(); ++j) s += w[i] * w[j];
  return s;
}

TEST(Weights, Linear) {
  const WeightVector w = weights_linear(4);
  EXPECT_DOUBLE_EQ(w[0], 0.25);
  EXPECT_DOUBLE_EQ(w[1], 0.5);
  EXPECT_DOUBLE_EQ(w[2], 0.75);
  EXPECT_DOUBLE_EQ(w[3], 1.0);
  EXPECT_DOUBLE_EQ(weights_linear(1)[0], 1.0);
  EXPECT_THROW(weights_linear(0), InputError);
}

TEST(Weights, LinearNorm2MatchesClosedForm) {
  const int n = 400;
  const double closed = n * (n + 1.0) * (2.0 * n + 1.0) / (6.0 * n * n);
  double direct = 0.0;
  for (int i = 1; i <= n; ++i) direct += (i / 400.0) * (i / 400.0);
  EXPECT_NEAR(weights_linear(n).norm2sq(), closed, 1e-10);
  EXPECT_NEAR(direct, closed, 1e-10);
  EXPECT_NEAR(closed, 133.8338, 5e-5);
}

TEST(Weights, Constant) {
  EXPECT_DOUBLE_EQ(weights_constant(3, 1.0).norm2sq(), 3.0);
  EXPECT_DOUBLE_EQ(weights_constant(5, 0.0).values().sum(), 0.0);
  EXPECT_DOUBLE_EQ(weights_constant(2, 2.0).normk(3), 16.0);
  EXPECT_THROW(weights_constant(2, -1.0), InputError);
  EXPECT_THROW(weights_constant(2, 1.0).normk(13), InputError);
}

TEST(Weights, RejectsNegativeEntries) {
  EXPECT_THROW(WeightVector(Eigen::Vector3d(1.0, -0.5, 2.0)), InputError);
}

TEST(Weights, LoadFromText) {
  std::istringstream in("# weights\n0.5\n1.5\n\n2\n");
  const WeightVector w = load_weights(in);
  ASSERT_EQ(w.size(), 3);
  EXPECT_DOUBLE_EQ(w[1], 1.5);
  std::istringstream bad("0.5\nabc\n");
  EXPECT_THROW(load_weights(bad), ParseError);
  std::istringstream negative("-1\n");
  EXPECT_THROW(load_weights(negative), ParseError);
}

TEST(Weights, UniformStaysInRange) {
  const WeightVector w = weights_uniform(1000, 1.0, 2.0, SeedSpec{4, 0, 0});
  EXPECT_GE(w.values().minCoeff(), 1.0);
  EXPECT_LT(w.values().maxCoeff(), 2.0);
  EXPECT_NEAR(w.values().mean(), 1.5, 0.05);
}

TEST(ModelParams, Validation) {
  const WeightVector w = weights_linear(10);
  EXPECT_NO_THROW(ModelParams::from_rates(10, 0.5, 0.1, 0.3).validate(w));
  EXPECT_THROW(ModelParams::from_rates(10, 0.1, 0.5, 0.3).validate(w), ParameterError);
  EXPECT_THROW(ModelParams::from_rates(10, 0.5, 0.1, 1.5).validate(w), ParameterError);
  EXPECT_THROW(ModelParams::from_rates(10, 2.0, 0.1, 0.3).validate(w), ParameterError);
  EXPECT_THROW(ModelParams::from_rates(10, 0.5, 0.1, 0.3).validate(weights_linear(9)),
               ParameterError);
  // max_{i != j} W_i W_j = 0.9 for linear weights at n = 10.
  EXPECT_NO_THROW(ModelParams::from_rates(10, 1.1, 0.0, 0.3).validate(w));
  EXPECT_THROW(ModelParams::from_rates(10, 1.2, 0.0, 0.3).validate(w), ParameterError);
}

TEST(SampleNull, ZeroProbabilityGivesEmptyGraph) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    EXPECT_EQ(sample_null(20, 0.0, weights_linear(20), SeedSpec{s, 0, 0}).m(), 0);
  }
}

TEST(SampleNull, UnitProbabilityGivesCompleteGraph) {
  EXPECT_EQ(sample_null(3, 1.0, weights_constant(3, 1.0), SeedSpec{}).m(), 3);
}

TEST(SampleNull, RejectsProbabilityAboveOne) {
  EXPECT_THROW(sample_null(3, 1.5, weights_constant(3, 1.0), SeedSpec{}), ParameterError);
}

TEST(SampleNull, MeanEdgeCountAtTableScale) {
  const WeightVector w = weights_linear(400);
  const double expected = 0.08 * pair_weight_sum(w);
  EXPECT_NEAR(expected, 1602.7, 0.05);
  std::vector<double> counts;
  for (std::uint64_t s = 0; s < 100; ++s)
    counts.push_back(static_cast<double>(sample_null(400, 0.08, w, SeedSpec{9, s, 0}).m()));
  EXPECT_LE(std::fabs(mean(counts) - expected), 3.0 * standard_error(counts));
}

TEST(SamplePlanted, MeanEdgeCountAtTableScale) {
  const WeightVector w = weights_linear(400);
  const auto params = ModelParams::from_rates(400, 0.48, 0.08, 0.2);
  // E[Z_i Z_j] = r^2, so each pair has probability W_i W_j * 0.096.
  const double expected = 0.096 * pair_weight_sum(w);
  EXPECT_NEAR(expected, 1923.2, 0.05);
  EXPECT_NEAR(expected_edge_count(params, w), expected, 1e-8);
  std::vector<double> counts;
  for (std::uint64_t s = 0; s < 100; ++s)
    counts.push_back(static_cast<double>(sample_planted(params, w, SeedSpec{9, s, 0}).graph.m()));
  EXPECT_LE(std::fabs(mean(counts) - expected), 3.0 * standard_error(counts));
}

TEST(SamplePlanted, FullMembership) {
  const auto params = ModelParams::from_rates(50, 0.5, 0.0, 1.0);
  const auto sample = sample_planted(params, weights_constant(50, 1.0), SeedSpec{1, 2, 3});
  for (auto z : sample.assignment.z) EXPECT_EQ(z, 1);
  // b = 0, so every edge comes from the within-community rate.
  EXPECT_GT(sample.graph.m(), 0);
}

TEST(SamplePlanted, DeterministicGivenSeed) {
  const WeightVector w = weights_linear(80);
  const auto params = ModelParams::from_rates(80, 0.5, 0.1, 0.3);
  const auto a = sample_planted(params, w, SeedSpec{42, 7, 1});
  const auto b = sample_planted(params, w, SeedSpec{42, 7, 1});
  const auto c = sample_planted(params, w, SeedSpec{42, 8, 1});
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
  EXPECT_EQ(a.assignment.z, b.assignment.z);
  EXPECT_NE(a.graph.edges(), c.graph.edges());
}

TEST(SamplePlanted, NullCollapseMatchesSampleNull) {
  // With a = b the planted law equals G(n, b/n, W): compare per-pair frequencies.
  const int n = 8, reps = 2000;
  const WeightVector w = weights_linear(n);
  const auto params = ModelParams::from_rates(n, 0.6, 0.6, 0.4);
  Eigen::MatrixXd planted = Eigen::MatrixXd::Zero(n, n), null = planted;
  for (int s = 0; s < reps; ++s) {
    for (auto [u, v] : sample_planted(params, w, SeedSpec{1, static_cast<std::uint64_t>(s), 0}).graph.edges())
      planted(u, v) += 1.0 / reps;
    for (auto [u, v] : sample_null(n, 0.6, w, SeedSpec{2, static_cast<std::uint64_t>(s), 0}).edges())
      null(u, v) += 1.0 / reps;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = 0.6 * w[i] * w[j];
      const double se = std::sqrt(2.0 * p * (1.0 - p) / reps);
      EXPECT_LE(std::fabs(planted(i, j) - null(i, j)), 4.0 * se + 1e-12) << i << "," << j;
      EXPECT_LE(std::fabs(planted(i, j) - p), 4.0 * se + 1e-12);
    }
  }
}

TEST(SamplePlanted, ReplicationStreamsUncorrelated) {
  const int n = 60;
  const WeightVector w = weights_constant(n, 1.0);
  auto indicators = [&](std::uint64_t rep) {
    const Graph g = sample_null(n, 0.5, w, SeedSpec{77, rep, 0});
    Eigen::VectorXd x(n * (n - 1) / 2);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) x(k++) = g.has_edge(i, j) ? 1.0 : 0.0;
    return x;
  };
  for (std::uint64_t r = 0; r < 5; ++r) {
    Eigen::VectorXd x = indicators(r), y = indicators(r + 1);
    x.array() -= x.mean();
    y.array() -= y.mean();
    const double corr = x.dot(y) / std::sqrt(x.squaredNorm() * y.squaredNorm());
    EXPECT_LT(std::fabs(corr), 4.0 / std::sqrt(static_cast<double>(x.size())));
  }
}

TEST(SamplePlanted, ExpectedEdgesMonotoneInParameters) {
  const WeightVector w = weights_linear(100);
  double prev = -1.0;
  for (double a : {0.1, 0.2, 0.4, 0.8}) {
    const double e = expected_edge_count(ModelParams::from_rates(100, a, 0.1, 0.3), w);
    EXPECT_GE(e, prev);
    prev = e;
  }
  prev = -1.0;
  for (double b : {0.0, 0.1, 0.2, 0.4}) {
    const double e = expected_edge_count(ModelParams::from_rates(100, 0.4, b, 0.3), w);
    EXPECT_GE(e, prev);
    prev = e;
  }
  prev = -1.0;
  for (double r : {0.0, 0.1, 0.5, 1.0}) {
    const double e = expected_edge_count(ModelParams::from_rates(100, 0.4, 0.1, r), w);
    EXPECT_GE(e, prev);
    prev = e;
  }
}

TEST(ExpectedDegree, ClosedFormMatchesPairSum) {
  const WeightVector w = weights_linear(400);
  EXPECT_NEAR(expected_degree(200, 0.08, w), 8.0, 1e-12);
  EXPECT_NEAR(expected_degree(400, 0.08, w), 0.08 * 399 / 2.0, 1e-12);
  for (int i : {1, 17, 200, 399, 400}) {
    EXPECT_NEAR(expected_degree(i, 0.08, w), expected_degree_by_sum(i, 0.08, w), 1e-12);
  }
}

TEST(ExpectedDegree, HighestToLowestRatioGrowsLikeN) {
  const int n = 10000;
  const WeightVector w = weights_linear(n);
  const double ratio = expected_degree(n, 0.01, w) / expected_degree(1, 0.01, w);
  EXPECT_NEAR(ratio / n, 1.0, 5e-4);
}

TEST(ExpectedDegree, Errors) {
  EXPECT_THROW(expected_degree(0, 0.1, weights_linear(5)), InputError);
  EXPECT_THROW(expected_degree(6, 0.1, weights_linear(5)), InputError);
  EXPECT_THROW(expected_degree(1, 0.1, weights_constant(5, 1.0)), InputError);
}

}  // namespace
}  // namespace pds
