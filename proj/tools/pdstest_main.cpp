// Command-line front end: test, simulate, calibrate-null, generate, diagnose.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "pds/experiment.hpp"
#include "pds/serialize.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kDegenerate = 3 };

struct GridOptions {
  std::string config_path;
  int n = 400;
  std::string weights = "linear";
  std::vector<double> a_over_n{0.08};
  std::vector<double> b_over_n{0.08};
  std::vector<double> r{0.2};
  int reps = 200;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string json_out;
  std::string csv_out;
  bool quiet = false;
};

void add_grid_options(CLI::App* cmd, GridOptions& o) {
  cmd->add_option("--config", o.config_path, "JSON file mirroring SimulationConfig");
  cmd->add_option("--n", o.n, "vertex count");
  cmd->add_option("--weights", o.weights, "linear | constant:C | file:PATH | uniform:LO:HI[:SEED]");
  cmd->add_option("--a-over-n", o.a_over_n, "within-community rate(s) a/n")->delimiter(',');
  cmd->add_option("--b-over-n", o.b_over_n, "background rate(s) b/n")->delimiter(',');
  cmd->add_option("--r", o.r, "membership probabilities")->delimiter(',');
  cmd->add_option("--reps", o.reps, "replications per cell");
  cmd->add_option("--alpha", o.alpha, "significance level");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--workers", o.workers, "worker threads (default: $PDS_WORKERS or all cores)");
  cmd->add_option("--json-out", o.json_out, "write the full JSON report here ('-' for stdout)");
  cmd->add_option("--csv-out", o.csv_out, "write the summary CSV here");
  cmd->add_flag("--quiet", o.quiet, "suppress the text table");
}

pds::SimulationConfig build_config(const GridOptions& o, CLI::App* cmd) {
  pds::SimulationConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw pds::InputError("cannot open config '" + o.config_path + "'");
    pds::Json j;
    try {
      in >> j;
    } catch (const pds::Json::exception& e) {
      throw pds::ConfigError(o.config_path + ": " + e.what());
    }
    cfg = pds::simulation_config_from_json(j);
  }
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (o.config_path.empty() || given("--n")) cfg.n = o.n;
  if (o.config_path.empty() || given("--weights")) cfg.weights = pds::WeightSpec::parse(o.weights);
  if (o.config_path.empty() || given("--a-over-n") || given("--b-over-n")) {
    const auto& as = o.a_over_n;
    const auto& bs = o.b_over_n;
    if (as.size() != bs.size() && as.size() != 1 && bs.size() != 1) {
      throw pds::ConfigError("--a-over-n and --b-over-n lengths differ");
    }
    cfg.rates.clear();
    for (std::size_t i = 0; i < std::max(as.size(), bs.size()); ++i) {
      cfg.rates.push_back({as[as.size() == 1 ? 0 : i], bs[bs.size() == 1 ? 0 : i]});
    }
  }
  if (o.config_path.empty() || given("--r")) cfg.r_grid = o.r;
  if (o.config_path.empty() || given("--reps")) cfg.reps = o.reps;
  if (o.config_path.empty() || given("--alpha")) cfg.alpha = o.alpha;
  if (o.config_path.empty() || given("--seed")) cfg.master_seed = o.seed;
  if (given("--workers")) {
    cfg.workers = o.workers;
  } else if (o.config_path.empty() || cfg.workers < 1) {
    cfg.workers = pds::default_worker_count();
  }
  return cfg;
}

void emit_json(const std::string& target, const pds::Json& j) {
  if (target.empty()) return;
  if (target == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw pds::InputError("cannot write '" + target + "'");
  out << j.dump(2) << '\n';
}

std::string fmt_t(const std::optional<double>& t) {
  if (!t) return "undefined";
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << *t;
  return ss.str();
}

int cmd_test(const std::string& input, const std::string& format, double alpha,
             bool json) {
  pds::LoadOptions opts;
  if (format == "edgelist") opts.format = pds::EdgeListFormat::kEdgeList;
  if (format == "mtx") opts.format = pds::EdgeListFormat::kMatrixMarket;
  const pds::DatasetReport rep = pds::run_dataset(input, alpha, opts);
  if (json) {
    std::cout << pds::to_json(rep).dump(2) << '\n';
  } else {
    const auto& c = rep.test.census;
    std::cout << std::setprecision(10)
              << "file      " << rep.path << '\n'
              << "n         " << c.n << '\n'
              << "m         " << c.m << '\n'
              << "n3        " << c.n3 << '\n'
              << "n6        " << c.n6 << '\n'
              << "C3_hat    " << c.c3_hat << '\n'
              << "C6_hat    " << c.c6_hat << '\n'
              << "T_n       " << fmt_t(rep.test.t_n) << '\n'
              << "p_value   " << rep.test.p_value << '\n'
              << "decision  "
              << (rep.test.degenerate ? "degenerate (no triangles)"
                  : rep.test.reject   ? "reject H0"
                                      : "fail to reject H0")
              << " at alpha=" << alpha << '\n';
    if (rep.parse.dropped_self_loops || rep.parse.collapsed_duplicates) {
      std::cout << "note      dropped " << rep.parse.dropped_self_loops
                << " self-loops, collapsed " << rep.parse.collapsed_duplicates
                << " duplicate edges\n";
    }
  }
  return rep.test.degenerate ? kDegenerate : kOk;
}

int cmd_simulate(const pds::SimulationConfig& cfg, const GridOptions& o) {
  const pds::PowerTable table = pds::run_size_power(cfg);
  if (!o.quiet) {
    std::cout << "  a/n     b/n     r      reps  degen  reject  power   se      mean_T   var_T\n";
    for (const auto& c : table.cells) {
      std::printf("  %-7.4g %-7.4g %-6.3g %5d  %5d  %6d  %.4f  %.4f  %7.4f  %7.4f\n",
                  c.rates.a_over_n, c.rates.b_over_n, c.r, c.reps, c.degenerate,
                  c.rejections, c.rejection_fraction, c.standard_error,
                  c.mean_t, c.var_t);
    }
  }
  emit_json(o.json_out, pds::to_json(table));
  if (!o.csv_out.empty()) {
    std::ofstream out(o.csv_out);
    if (!out) throw pds::InputError("cannot write '" + o.csv_out + "'");
    pds::write_power_table_csv(out, table);
  }
  return kOk;
}

int cmd_calibrate(const pds::SimulationConfig& cfg, const GridOptions& o) {
  const pds::CalibrationReport rep = pds::run_null_calibration(cfg);
  if (!o.quiet) {
    std::printf("reps            %d\n", rep.reps);
    std::printf("degenerate      %d\n", rep.degenerate);
    std::printf("mean T_n        %.5f\n", rep.mean);
    std::printf("variance T_n    %.5f\n", rep.variance);
    std::printf("skewness T_n    %.5f\n", rep.skewness);
    std::printf("KS distance     %.5f (p = %.4f)\n", rep.ks_distance, rep.ks_p_value);
    std::printf("rejection rate  %.4f at alpha=%g\n", rep.rejection_rate, rep.alpha);
  }
  emit_json(o.json_out, pds::to_json(rep));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle-count test for a planted dense subgraph"};
  app.require_subcommand(1);

  std::string input, format = "auto";
  double test_alpha = 0.05;
  bool test_json = false;
  auto* test = app.add_subcommand("test", "run the test on an edge-list or MatrixMarket file");
  test->add_option("--input", input, "graph file")->required();
  test->add_option("--format", format, "auto | edgelist | mtx")
      ->check(CLI::IsMember({"auto", "edgelist", "mtx"}));
  test->add_option("--alpha", test_alpha, "significance level");
  test->add_flag("--json", test_json, "JSON output");

  GridOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "empirical size/power over a parameter grid");
  add_grid_options(simulate, sim_opts);

  GridOptions cal_opts;
  cal_opts.reps = 500;
  double cal_p0 = 0.08;
  auto* calibrate = app.add_subcommand("calibrate-null", "null distribution of T_n versus N(0,1)");
  add_grid_options(calibrate, cal_opts);
  calibrate->add_option("--p0", cal_p0, "null edge probability scale (sets a/n = b/n)");

  int gen_n = 400;
  std::string gen_weights = "linear", gen_out;
  double gen_a = 0.08, gen_b = 0.08, gen_r = 0.2;
  std::uint64_t gen_seed = 1, gen_rep = 0;
  auto* gen = app.add_subcommand("generate", "sample one planted graph to a file");
  gen->add_option("--n", gen_n);
  gen->add_option("--weights", gen_weights);
  gen->add_option("--a-over-n", gen_a);
  gen->add_option("--b-over-n", gen_b);
  gen->add_option("--r", gen_r);
  gen->add_option("--seed", gen_seed);
  gen->add_option("--replication", gen_rep);
  gen->add_option("--out", gen_out, "edge-list path; sidecar written to OUT.json")->required();

  int diag_n = 400;
  std::string diag_weights = "linear";
  double diag_a = 0.08, diag_b = 0.08, diag_r = 0.2;
  pds::RegularityThresholds thresholds;
  bool diag_json = false;
  auto* diag = app.add_subcommand("diagnose", "regularity conditions and theoretical power quantities");
  diag->add_option("--n", diag_n);
  diag->add_option("--weights", diag_weights);
  diag->add_option("--a-over-n", diag_a);
  diag->add_option("--b-over-n", diag_b);
  diag->add_option("--r", diag_r);
  diag->add_option("--t-low", thresholds.t_low, "threshold standing in for '>> 1'");
  diag->add_option("--c1", thresholds.c1);
  diag->add_option("--c2", thresholds.c2);
  diag->add_flag("--json", diag_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*test) return cmd_test(input, format, test_alpha, test_json);
    if (*simulate) return cmd_simulate(build_config(sim_opts, simulate), sim_opts);
    if (*calibrate) {
      pds::SimulationConfig cfg = build_config(cal_opts, calibrate);
      if (calibrate->count("--p0") || cal_opts.config_path.empty()) {
        cfg.rates = {{cal_p0, cal_p0}};
      }
      if (!calibrate->count("--r") && cal_opts.config_path.empty()) cfg.r_grid = {0.0};
      return cmd_calibrate(cfg, cal_opts);
    }
    if (*gen) {
      const auto params = pds::ModelParams::from_rates(gen_n, gen_a, gen_b, gen_r);
      const auto res = pds::generate(params, pds::WeightSpec::parse(gen_weights),
                                     pds::SeedSpec{gen_seed, gen_rep, 0}, gen_out);
      std::cout << "wrote " << res.edge_list_path << " (n=" << res.sample.graph.n()
                << ", m=" << res.sample.graph.m() << ") and " << res.sidecar_path << '\n';
      return kOk;
    }
    if (*diag) {
      const auto params = pds::ModelParams::from_rates(diag_n, diag_a, diag_b, diag_r);
      const auto rep = pds::diagnose(params, pds::WeightSpec::parse(diag_weights), thresholds);
      if (diag_json) {
        std::cout << pds::to_json(rep).dump(2) << '\n';
        return kOk;
      }
      const auto& q = rep.theory;
      const auto& g = rep.regularity;
      std::cout << std::setprecision(6)
                << "weights               " << rep.weights
                << (rep.homogeneous ? " (homogeneous: Erdos-Renyi special case)" : "") << '\n'
                << "n p0                  " << g.n_p0 << "  (sqrt n = " << g.sqrt_n << ")\n"
                << "p0 ||W||_2^2          " << g.p0_norm2sq << '\n'
                << "||W||_2^2 / n         " << g.norm2sq_over_n << '\n'
                << "A_n                   " << q.a_n << '\n'
                << "B_n                   " << q.b_n << '\n'
                << "C3                    " << q.c3 << '\n'
                << "C6                    " << q.c6 << '\n'
                << "Lambda1 (leading)     " << q.lambda1_leading << '\n'
                << "C3^2 - C6 (exact)     " << q.lambda1_exact << '\n'
                << "lambda_n^2            " << q.lambda_sq << '\n'
                << "T_n at expectations   " << q.lambda_exact << '\n'
                << "power index           " << q.power_index
                << (rep.power_index_large ? "  (large)" : "  (not large)") << '\n'
                << "expected community    " << rep.expected_community_size << " vertices\n";
      std::cout << "flags                 " << (g.flags.empty() ? "none" : "") << '\n';
      for (const auto& f : g.flags) std::cout << "  - " << f << '\n';
      return kOk;
    }
  } catch (const pds::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const pds::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const pds::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const pds::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kUsage;
}
