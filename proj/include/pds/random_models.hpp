#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "pds/graph.hpp"

namespace pds {

/// Nonnegative heterogeneity weights W_1..W_n.
class WeightVector {
 public:
  WeightVector() = default;
  /// Throws InputError on negative or non-finite entries.
  explicit WeightVector(Eigen::VectorXd w);

  Eigen::Index size() const noexcept { return w_.size(); }
  const Eigen::VectorXd& values() const noexcept { return w_; }
  double operator[](Eigen::Index i) const { return w_(i); }

  /// sum_i W_i^k for k in [1, 12].
  double normk(int k) const;
  double norm2sq() const { return normk(2); }
  /// max over i != j of W_i W_j (0 when n < 2).
  double max_pair_product() const;

 private:
  Eigen::VectorXd w_;
};

/// W_i = i / n, i = 1..n.
WeightVector weights_linear(int n);
WeightVector weights_constant(int n, double c);

/// One nonnegative real per line; blank lines and '#' comments skipped.
WeightVector load_weights(std::istream& in);
WeightVector load_weights_file(const std::string& path);

/// Rates are stored in absolute form: within-community probability scale is
/// a/n, background scale b/n.
struct ModelParams {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  double r = 0.0;

  static ModelParams from_rates(int n, double a_over_n, double b_over_n,
                                double r) {
    return {n, a_over_n * n, b_over_n * n, r};
  }
  double a_over_n() const { return a / n; }
  double b_over_n() const { return b / n; }
  double p0() const { return a / n; }
  bool is_null() const { return a == b; }

  /// Throws ParameterError unless a >= b >= 0, r in [0,1] and
  /// (a/n) max_{i!=j} W_i W_j <= 1.
  void validate(const WeightVector& w) const;
};

struct PlantedAssignment {
  std::vector<std::uint8_t> z;
};

/// Identifies one independent random stream. `stream` separates experiment
/// cells; the generator state is a pure function of all three fields.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t replication_index = 0;
  std::uint64_t stream = 0;
};

/// xoshiro256** seeded from a SeedSpec via splitmix64 mixing.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(const SeedSpec& seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_[4];
};

/// W_i ~ Uniform[lo, hi], drawn from the given stream.
WeightVector weights_uniform(int n, double lo, double hi, const SeedSpec& seed);

/// Each pair {i, j} is an edge independently with probability p0 W_i W_j.
Graph sample_null(int n, double p0, const WeightVector& w,
                  const SeedSpec& seed);

struct PlantedSample {
  Graph graph;
  PlantedAssignment assignment;
};

/// Z_i ~ Bernoulli(r) iid, then pair {i, j} is an edge with probability
/// W_i W_j ((a - b) Z_i Z_j + b) / n.
PlantedSample sample_planted(const ModelParams& params, const WeightVector& w,
                             const SeedSpec& seed);

/// Marginal expected edge count of the planted model (E Z_i Z_j = r^2).
double expected_edge_count(const ModelParams& params, const WeightVector& w);

/// Closed form i p0/2 + i p0/(2n) - i^2 p0/n^2 for linear weights, i 1-based.
/// Equals sum_{j != i} p0 W_i W_j. Throws InputError if `w` is not linear.
double expected_degree(int i, double p0, const WeightVector& w);

/// sum_{j != i} p0 W_i W_j for arbitrary weights, i 1-based.
double expected_degree_by_sum(int i, double p0, const WeightVector& w);

}  // namespace pds
