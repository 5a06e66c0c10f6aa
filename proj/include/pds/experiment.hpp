#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pds/errors.hpp"
#include "pds/graph.hpp"
#include "pds/inference.hpp"
#include "pds/random_models.hpp"

namespace pds {

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

/// How a simulation builds its weight vector.
struct WeightSpec {
  enum class Kind { kLinear, kConstant, kFile, kUniform };
  Kind kind = Kind::kLinear;
  double c = 1.0;        // kConstant
  std::string path;      // kFile
  double lo = 1.0;       // kUniform
  double hi = 2.0;       // kUniform
  std::uint64_t seed = 0;  // kUniform

  /// "linear", "constant:C", "file:PATH", "uniform:LO:HI[:SEED]".
  static WeightSpec parse(const std::string& text);
  std::string to_string() const;
  WeightVector build(int n) const;
};

struct RatePair {
  double a_over_n = 0.0;
  double b_over_n = 0.0;
};

struct SimulationConfig {
  int n = 400;
  WeightSpec weights;
  std::vector<RatePair> rates;
  std::vector<double> r_grid;
  int reps = 200;
  double alpha = 0.05;
  std::uint64_t master_seed = 1;
  int workers = 1;

  /// Throws ConfigError. Checks every rate pair against the built weights.
  void validate() const;
};

/// PDS_WORKERS if set and positive, otherwise the hardware thread count.
int default_worker_count();

struct ReplicationOutcome {
  std::optional<double> t_n;
  bool reject = false;
  std::int64_t m = 0;
  std::uint64_t n3 = 0;
  std::uint64_t n6 = 0;
};

struct PowerCell {
  RatePair rates;
  double r = 0.0;
  int reps = 0;
  int degenerate = 0;
  int rejections = 0;
  // rejections / (reps - degenerate); 0 when every replication is degenerate.
  double rejection_fraction = 0.0;
  double standard_error = 0.0;
  double mean_t = 0.0;
  double var_t = 0.0;
  std::vector<ReplicationOutcome> replications;
};

struct PowerTable {
  SimulationConfig config;
  std::vector<PowerCell> cells;  // rates-major, then r
};

struct CalibrationReport {
  int reps = 0;
  int degenerate = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double ks_distance = 0.0;
  double ks_p_value = 1.0;
  double rejection_rate = 0.0;
  double alpha = 0.05;
  std::vector<ReplicationOutcome> replications;
};

/// Runs `task(i)` for i in [0, count) on `workers` threads. Each index is
/// executed exactly once; no ordering between indices is implied.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& task);

/// Samples one planted graph and evaluates the test on it.
ReplicationOutcome run_replication(const ModelParams& params,
                                   const WeightVector& w, double alpha,
                                   const SeedSpec& seed);

/// Replication `i` of cell `c` uses SeedSpec{master_seed, i, c}, so the table
/// does not depend on the worker count.
PowerTable run_size_power(const SimulationConfig& config);

/// Every cell must have a == b; replications of all cells are pooled.
CalibrationReport run_null_calibration(const SimulationConfig& config);

CalibrationReport summarize_null(std::vector<ReplicationOutcome> outcomes,
                                 double alpha);

/// sup_x |F_n(x) - Phi(x)|.
double ks_distance_normal(std::vector<double> sample);
/// Asymptotic Kolmogorov p-value with Stephens' small-sample correction.
double ks_p_value(double distance, std::size_t sample_size);

struct DatasetReport {
  std::string path;
  ParseReport parse;
  TestReport test;
};

DatasetReport run_dataset(const std::string& path, double alpha,
                          const LoadOptions& options = {});

struct GenerateResult {
  PlantedSample sample;
  std::string edge_list_path;
  std::string sidecar_path;
};

/// Writes the sampled edge list to `out` and params/seed/Z to `out + ".json"`.
/// Throws InputError when a file cannot be written.
GenerateResult generate(const ModelParams& params, const WeightSpec& weights,
                        const SeedSpec& seed, const std::string& out);

struct DiagnoseReport {
  ModelParams params;
  std::string weights;
  RegularityReport regularity;
  TheoreticalQuantities theory;
  bool homogeneous = false;
  double expected_community_size = 0.0;
  bool power_index_large = false;
};

DiagnoseReport diagnose(const ModelParams& params, const WeightSpec& weights,
                        const RegularityThresholds& thresholds = {});

}  // namespace pds
