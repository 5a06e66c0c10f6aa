#include "pds/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pds/serialize.hpp"
#include "test_graphs.hpp"

namespace pds {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "pds_experiment_test";
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.n = 60;
  cfg.rates = {{0.2, 0.2}, {0.6, 0.2}};
  cfg.r_grid = {0.2, 0.4};
  cfg.reps = 12;
  cfg.master_seed = 99;
  return cfg;
}

TEST(WeightSpec, ParseForms) {
  EXPECT_EQ(WeightSpec::parse("linear").kind, WeightSpec::Kind::kLinear);
  const auto c = WeightSpec::parse("constant:2.5");
  EXPECT_EQ(c.kind, WeightSpec::Kind::kConstant);
  EXPECT_DOUBLE_EQ(c.c, 2.5);
  EXPECT_EQ(WeightSpec::parse("file:/tmp/w.txt").path, "/tmp/w.txt");
  const auto u = WeightSpec::parse("uniform:1:2:7");
  EXPECT_DOUBLE_EQ(u.hi, 2.0);
  EXPECT_EQ(u.seed, 7u);
  EXPECT_EQ(WeightSpec::parse(u.to_string()).to_string(), u.to_string());
  EXPECT_THROW(WeightSpec::parse("cubic"), ConfigError);
  EXPECT_THROW(WeightSpec::parse("constant:x"), ConfigError);
}

TEST(WeightSpec, FileLengthMustMatch) {
  const fs::path p = scratch_dir() / "weights.txt";
  std::ofstream(p) << "1\n2\n3\n";
  WeightSpec spec = WeightSpec::parse("file:" + p.string());
  EXPECT_EQ(spec.build(3).size(), 3);
  EXPECT_THROW(spec.build(4), ConfigError);
}

TEST(SimulationConfigTest, InvalidProbabilitiesRejectedBeforeSampling) {
  SimulationConfig cfg = small_config();
  cfg.rates.push_back({1.5, 0.2});
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_THROW(run_size_power(cfg), ConfigError);
  cfg = small_config();
  cfg.reps = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SimulationConfigTest, JsonRoundTrip) {
  const Json j = Json::parse(R"({"n": 50, "weights": "constant:1",
      "rates": [[0.1, 0.1], {"a_over_n": 0.3, "b_over_n": 0.1}],
      "r_grid": [0.2], "reps": 3, "alpha": 0.01, "master_seed": 5, "workers": 2})");
  const SimulationConfig cfg = simulation_config_from_json(j);
  EXPECT_EQ(cfg.n, 50);
  ASSERT_EQ(cfg.rates.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.rates[1].a_over_n, 0.3);
  EXPECT_EQ(cfg.workers, 2);
  EXPECT_EQ(simulation_config_from_json(to_json(cfg)).reps, 3);
  EXPECT_THROW(simulation_config_from_json(Json::parse(R"({"rates": [[1]]})")), ConfigError);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 5) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(RunSizePower, IdenticalAcrossWorkerCounts) {
  SimulationConfig cfg = small_config();
  cfg.workers = 1;
  const std::string one = to_json(run_size_power(cfg)).dump();
  cfg.workers = 3;
  const std::string three = to_json(run_size_power(cfg)).dump();
  EXPECT_EQ(one, three);
}

TEST(RunSizePower, SingleReplicationIsReproducible) {
  SimulationConfig cfg = small_config();
  cfg.rates = {{0.6, 0.2}};
  cfg.r_grid = {0.4};
  cfg.reps = 1;
  const PowerTable a = run_size_power(cfg), b = run_size_power(cfg);
  ASSERT_EQ(a.cells.size(), 1u);
  ASSERT_EQ(a.cells[0].replications.size(), 1u);
  EXPECT_EQ(a.cells[0].replications[0].t_n, b.cells[0].replications[0].t_n);
  EXPECT_EQ(a.cells[0].replications[0].n6, b.cells[0].replications[0].n6);
}

TEST(RunSizePower, AggregatesAreRecomputableFromLog) {
  SimulationConfig cfg = small_config();
  cfg.n = 12;
  cfg.rates = {{0.3, 0.3}};
  cfg.r_grid = {0.3};
  cfg.reps = 40;
  const PowerTable t = run_size_power(cfg);
  const PowerCell& c = t.cells[0];
  int degenerate = 0, rejections = 0;
  double sum = 0.0;
  for (const auto& o : c.replications) {
    if (!o.t_n) {
      ++degenerate;
      EXPECT_EQ(o.n3, 0u);
      continue;
    }
    sum += *o.t_n;
    rejections += o.reject;
  }
  // Sparse small graphs produce triangle-free samples.
  EXPECT_GT(degenerate, 0);
  EXPECT_LT(degenerate, c.reps);
  EXPECT_EQ(c.degenerate, degenerate);
  EXPECT_EQ(c.rejections, rejections);
  EXPECT_DOUBLE_EQ(c.rejection_fraction, static_cast<double>(rejections) / (c.reps - degenerate));
  EXPECT_NEAR(c.mean_t, sum / (c.reps - degenerate), 1e-12);
}

TEST(RunNullCalibration, RequiresNullCells) {
  SimulationConfig cfg = small_config();
  EXPECT_THROW(run_null_calibration(cfg), ConfigError);
  cfg.rates = {{0.2, 0.2}};
  const CalibrationReport rep = run_null_calibration(cfg);
  EXPECT_EQ(rep.reps, 24);
  EXPECT_GE(rep.ks_distance, 0.0);
  EXPECT_LE(rep.ks_distance, 1.0);
}

TEST(SummarizeNull, ExcludesDegenerateReplications) {
  std::vector<ReplicationOutcome> outcomes(4);
  outcomes[0].t_n = -1.0;
  outcomes[1].t_n = 1.0;
  outcomes[2].t_n = 3.0;
  outcomes[2].reject = true;
  const CalibrationReport rep = summarize_null(outcomes, 0.05);
  EXPECT_EQ(rep.degenerate, 1);
  EXPECT_DOUBLE_EQ(rep.mean, 1.0);
  EXPECT_DOUBLE_EQ(rep.variance, 4.0);
  EXPECT_NEAR(rep.rejection_rate, 1.0 / 3.0, 1e-15);
}

TEST(KolmogorovSmirnov, ReferenceValues) {
  // scipy.stats.kstest([-1.5, -0.3, 0.2, 0.9, 2.1], "norm").statistic
  EXPECT_NEAR(ks_distance_normal({-1.5, -0.3, 0.2, 0.9, 2.1}), 0.2159398746532405, 1e-12);
  EXPECT_DOUBLE_EQ(ks_distance_normal({0.0}), 0.5);
  // Large-sample limit: scipy.stats.kstwobign.sf(1.0) and sf(1.628).
  const std::size_t big = 10'000'000'000ULL;
  const double root = std::sqrt(static_cast<double>(big));
  EXPECT_NEAR(ks_p_value(1.0 / root, big), 0.26999967167735456, 1e-5);
  EXPECT_NEAR(ks_p_value(1.628 / root, big), 0.009975522431181053, 1e-5);
  EXPECT_DOUBLE_EQ(ks_p_value(0.0, 100), 1.0);
}

TEST(RunDataset, TriangleFreeFileIsDegenerate) {
  const fs::path p = scratch_dir() / "c6.txt";
  std::ofstream(p) << "1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";
  const DatasetReport rep = run_dataset(p.string(), 0.05);
  EXPECT_EQ(rep.parse.n, 6);
  EXPECT_EQ(rep.test.census.n6, 1u);
  EXPECT_TRUE(rep.test.degenerate);
  EXPECT_TRUE(to_json(rep)["t_n"].is_null());
}

TEST(RunDataset, MissingFileIsInputError) {
  EXPECT_THROW(run_dataset((scratch_dir() / "missing.txt").string(), 0.05), InputError);
}

TEST(Generate, RoundTripsThroughFiles) {
  const auto params = ModelParams::from_rates(120, 0.5, 0.1, 0.3);
  const WeightSpec weights;
  const SeedSpec seed{3, 4, 0};
  const fs::path out = scratch_dir() / "planted.txt";
  const GenerateResult res = generate(params, weights, seed, out.string());

  const auto in_memory = t_statistic(sample_planted(params, weights.build(120), seed).graph);
  LoadOptions opts;
  opts.explicit_n = 120;
  const DatasetReport from_file = run_dataset(out.string(), 0.05, opts);
  EXPECT_EQ(from_file.test.t_n, in_memory.t_n);
  EXPECT_EQ(from_file.test.census.n6, in_memory.census.n6);

  const std::string first = read_file(out), first_side = read_file(res.sidecar_path);
  generate(params, weights, seed, out.string());
  EXPECT_EQ(read_file(out), first);
  EXPECT_EQ(read_file(res.sidecar_path), first_side);

  const Json side = Json::parse(first_side);
  EXPECT_FALSE(side["z_inert"].get<bool>());
  EXPECT_EQ(side["z"].size(), 120u);
}

TEST(Generate, NullSidecarMarksAssignmentInert) {
  const fs::path out = scratch_dir() / "null.txt";
  const auto res = generate(ModelParams::from_rates(30, 0.2, 0.2, 0.5), WeightSpec{},
                            SeedSpec{1, 0, 0}, out.string());
  const Json side = Json::parse(read_file(res.sidecar_path));
  EXPECT_TRUE(side["z_inert"].get<bool>());
  EXPECT_EQ(side["z"].size(), 30u);
}

TEST(Generate, UnwritablePath) {
  EXPECT_THROW(generate(ModelParams::from_rates(10, 0.2, 0.2, 0.5), WeightSpec{}, SeedSpec{},
                        "/nonexistent-dir/x.txt"),
               InputError);
}

TEST(Diagnose, TableSetting) {
  const auto rep = diagnose(ModelParams::from_rates(400, 0.56, 0.08, 0.3), WeightSpec{});
  EXPECT_NEAR(rep.theory.power_index, 5.78, 0.01);
  EXPECT_TRUE(rep.power_index_large);
  EXPECT_FALSE(rep.homogeneous);
  EXPECT_NEAR(rep.expected_community_size, 120.0, 1e-9);
  ASSERT_EQ(rep.regularity.flags.size(), 1u);
  EXPECT_EQ(rep.regularity.flags[0], regularity_flag::kNp0Large);
}

TEST(Diagnose, NullAndHomogeneous) {
  const auto rep = diagnose(ModelParams::from_rates(400, 0.08, 0.08, 0.3),
                            WeightSpec::parse("constant:1"));
  EXPECT_EQ(rep.theory.power_index, 0.0);
  EXPECT_EQ(rep.theory.lambda_sq, 0.0);
  EXPECT_EQ(rep.theory.lambda1_leading, 0.0);
  EXPECT_TRUE(rep.homogeneous);
  const Json j = to_json(rep);
  for (const char* key : {"a_n", "b_n", "c3", "c6", "lambda1_leading", "lambda_sq", "power_index"})
    EXPECT_TRUE(j["theory"].contains(key)) << key;
}

TEST(Serialization, CensusCsvAndReportFields) {
  const CycleCensus c = census(testing::complete_graph(6));
  std::ostringstream csv;
  write_census_csv(csv, c);
  EXPECT_EQ(csv.str(), "n,m,n3,n6,c3_hat,c6_hat\n6,15,20,60,1,1\n");
  const Json j = to_json(t_statistic(c));
  for (const char* key : {"t_n", "p_value", "reject", "alpha", "n3", "n6", "c3_hat", "c6_hat", "degenerate"})
    EXPECT_TRUE(j.contains(key)) << key;
}

}  // namespace
}  // namespace pds
