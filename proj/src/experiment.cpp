#include "pds/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "pds/normal.hpp"
#include "pds/serialize.hpp"

namespace pds {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(s);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number '" + s + "' in " + what);
  }
}

}  // namespace

WeightSpec WeightSpec::parse(const std::string& text) {
  WeightSpec spec;
  if (text == "linear") return spec;
  if (text.starts_with("file:")) {
    spec.kind = Kind::kFile;
    spec.path = text.substr(5);
    if (spec.path.empty()) throw ConfigError("weights file path is empty");
    return spec;
  }
  const auto parts = split(text, ':');
  if (!parts.empty() && parts[0] == "constant") {
    spec.kind = Kind::kConstant;
    if (parts.size() > 2) throw ConfigError("weights spec '" + text + "'");
    spec.c = parts.size() == 2 ? parse_double(parts[1], "weights spec") : 1.0;
    if (!(spec.c >= 0.0)) throw ConfigError("constant weight must be >= 0");
    return spec;
  }
  if (!parts.empty() && parts[0] == "uniform") {
    spec.kind = Kind::kUniform;
    if (parts.size() < 3 || parts.size() > 4)
      throw ConfigError("weights spec '" + text + "' needs uniform:LO:HI[:SEED]");
    spec.lo = parse_double(parts[1], "weights spec");
    spec.hi = parse_double(parts[2], "weights spec");
    if (parts.size() == 4) spec.seed = std::stoull(parts[3]);
    return spec;
  }
  throw ConfigError("unknown weights spec '" + text +
                    "' (expected linear, constant:C, file:PATH, uniform:LO:HI)");
}

std::string WeightSpec::to_string() const {
  std::ostringstream ss;
  ss.precision(17);
  switch (kind) {
    case Kind::kLinear:
      return "linear";
    case Kind::kConstant:
      ss << "constant:" << c;
      return ss.str();
    case Kind::kFile:
      return "file:" + path;
    case Kind::kUniform:
      ss << "uniform:" << lo << ':' << hi << ':' << seed;
      return ss.str();
  }
  return "linear";
}

WeightVector WeightSpec::build(int n) const {
  switch (kind) {
    case Kind::kLinear:
      return weights_linear(n);
    case Kind::kConstant:
      return weights_constant(n, c);
    case Kind::kFile: {
      WeightVector w = load_weights_file(path);
      if (w.size() != n) {
        throw ConfigError("weights file '" + path + "' has " +
                          std::to_string(w.size()) + " entries, expected " +
                          std::to_string(n));
      }
      return w;
    }
    case Kind::kUniform:
      return weights_uniform(n, lo, hi, SeedSpec{seed, 0, 0});
  }
  return weights_linear(n);
}

void SimulationConfig::validate() const {
  if (n < 6) throw ConfigError("n must be at least 6");
  if (reps < 1) throw ConfigError("reps must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must be in (0, 1)");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (rates.empty()) throw ConfigError("rate grid is empty");
  if (r_grid.empty()) throw ConfigError("r grid is empty");
  const WeightVector w = weights.build(n);
  for (const auto& rate : rates) {
    for (double r : r_grid) {
      try {
        ModelParams::from_rates(n, rate.a_over_n, rate.b_over_n, r).validate(w);
      } catch (const ParameterError& e) {
        std::ostringstream ss;
        ss << "cell (a/n=" << rate.a_over_n << ", b/n=" << rate.b_over_n
           << ", r=" << r << "): " << e.what();
        throw ConfigError(ss.str());
      }
    }
  }
}

int default_worker_count() {
  if (const char* env = std::getenv("PDS_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& task) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      if (failed.load()) return;
      try {
        task(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

ReplicationOutcome run_replication(const ModelParams& params,
                                   const WeightVector& w, double alpha,
                                   const SeedSpec& seed) {
  const PlantedSample sample = sample_planted(params, w, seed);
  const TestReport report = t_statistic(sample.graph, alpha);
  ReplicationOutcome out;
  out.t_n = report.t_n;
  out.reject = report.reject;
  out.m = report.census.m;
  out.n3 = report.census.n3;
  out.n6 = report.census.n6;
  return out;
}

namespace {

struct Moments {
  int count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double skewness = 0.0;  // moment estimator g1
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.count = static_cast<int>(xs.size());
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= m.count;
  double m2 = 0.0, m3 = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  if (m.count > 1) m.variance = m2 / (m.count - 1);
  m2 /= m.count;
  m3 /= m.count;
  if (m2 > 0.0) m.skewness = m3 / std::pow(m2, 1.5);
  return m;
}

std::vector<double> defined_statistics(const std::vector<ReplicationOutcome>& outcomes) {
  std::vector<double> ts;
  ts.reserve(outcomes.size());
  for (const auto& o : outcomes)
    if (o.t_n) ts.push_back(*o.t_n);
  return ts;
}

// Runs every (cell, replication) task on one pool; results land at fixed slots.
std::vector<std::vector<ReplicationOutcome>> run_grid(const SimulationConfig& config) {
  config.validate();
  const WeightVector w = config.weights.build(config.n);
  std::vector<ModelParams> cells;
  for (const auto& rate : config.rates)
    for (double r : config.r_grid)
      cells.push_back(ModelParams::from_rates(config.n, rate.a_over_n, rate.b_over_n, r));

  const auto reps = static_cast<std::size_t>(config.reps);
  std::vector<std::vector<ReplicationOutcome>> results(
      cells.size(), std::vector<ReplicationOutcome>(reps));
  parallel_for(cells.size() * reps, config.workers, [&](std::size_t task) {
    const std::size_t cell = task / reps, rep = task % reps;
    results[cell][rep] = run_replication(
        cells[cell], w, config.alpha, SeedSpec{config.master_seed, rep, cell});
  });
  return results;
}

}  // namespace

PowerTable run_size_power(const SimulationConfig& config) {
  auto results = run_grid(config);
  PowerTable table;
  table.config = config;
  std::size_t cell = 0;
  for (const auto& rate : config.rates) {
    for (double r : config.r_grid) {
      PowerCell pc;
      pc.rates = rate;
      pc.r = r;
      pc.reps = config.reps;
      pc.replications = std::move(results[cell++]);
      for (const auto& o : pc.replications) {
        if (!o.t_n) ++pc.degenerate;
        if (o.reject) ++pc.rejections;
      }
      const int used = pc.reps - pc.degenerate;
      if (used > 0) {
        pc.rejection_fraction = static_cast<double>(pc.rejections) / used;
        pc.standard_error = std::sqrt(
            pc.rejection_fraction * (1.0 - pc.rejection_fraction) / used);
      }
      const Moments mo = moments(defined_statistics(pc.replications));
      pc.mean_t = mo.mean;
      pc.var_t = mo.variance;
      table.cells.push_back(std::move(pc));
    }
  }
  return table;
}

CalibrationReport summarize_null(std::vector<ReplicationOutcome> outcomes,
                                 double alpha) {
  CalibrationReport rep;
  rep.alpha = alpha;
  rep.reps = static_cast<int>(outcomes.size());
  int rejections = 0;
  for (const auto& o : outcomes) {
    if (!o.t_n) ++rep.degenerate;
    if (o.reject) ++rejections;
  }
  const std::vector<double> ts = defined_statistics(outcomes);
  const Moments mo = moments(ts);
  rep.mean = mo.mean;
  rep.variance = mo.variance;
  rep.skewness = mo.skewness;
  if (!ts.empty()) {
    rep.ks_distance = ks_distance_normal(ts);
    rep.ks_p_value = ks_p_value(rep.ks_distance, ts.size());
    rep.rejection_rate = static_cast<double>(rejections) / ts.size();
  }
  rep.replications = std::move(outcomes);
  return rep;
}

CalibrationReport run_null_calibration(const SimulationConfig& config) {
  for (const auto& rate : config.rates) {
    if (rate.a_over_n != rate.b_over_n) {
      throw ConfigError("null calibration requires a/n == b/n in every cell");
    }
  }
  auto results = run_grid(config);
  std::vector<ReplicationOutcome> pooled;
  for (auto& cell : results)
    pooled.insert(pooled.end(), cell.begin(), cell.end());
  return summarize_null(std::move(pooled), config.alpha);
}

double ks_distance_normal(std::vector<double> sample) {
  if (sample.empty()) return 0.0;
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = normal_cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_p_value(double distance, std::size_t sample_size) {
  const double sn = std::sqrt(static_cast<double>(sample_size));
  const double lambda = (sn + 0.12 + 0.11 / sn) * distance;
  if (lambda < 1e-3) return 1.0;
  // Q_KS(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2)
  double sum = 0.0, sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::fabs(term) < 1e-16 * std::fabs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

DatasetReport run_dataset(const std::string& path, double alpha,
                          const LoadOptions& options) {
  LoadedGraph loaded = load_edge_list_file(path, options);
  DatasetReport rep;
  rep.path = path;
  rep.test = t_statistic(loaded.graph, alpha);
  rep.parse = std::move(loaded.report);
  return rep;
}

GenerateResult generate(const ModelParams& params, const WeightSpec& weights,
                        const SeedSpec& seed, const std::string& out) {
  const WeightVector w = weights.build(params.n);
  GenerateResult result;
  result.sample = sample_planted(params, w, seed);
  result.edge_list_path = out;
  result.sidecar_path = out + ".json";

  std::ofstream edges(out, std::ios::binary);
  if (!edges) throw InputError("cannot write '" + out + "'");
  write_edge_list(edges, result.sample.graph);
  if (!edges.flush()) throw InputError("failed writing '" + out + "'");

  Json side;
  side["params"] = to_json(params);
  side["weights"] = weights.to_string();
  side["seed"] = {{"master_seed", seed.master_seed},
                  {"replication_index", seed.replication_index},
                  {"stream", seed.stream}};
  side["n"] = result.sample.graph.n();
  side["m"] = result.sample.graph.m();
  side["z_inert"] = params.is_null();
  side["z"] = result.sample.assignment.z;
  std::ofstream meta(result.sidecar_path, std::ios::binary);
  if (!meta) throw InputError("cannot write '" + result.sidecar_path + "'");
  meta << side.dump(2) << '\n';
  if (!meta.flush()) throw InputError("failed writing '" + result.sidecar_path + "'");
  return result;
}

DiagnoseReport diagnose(const ModelParams& params, const WeightSpec& weights,
                        const RegularityThresholds& thresholds) {
  const WeightVector w = weights.build(params.n);
  params.validate(w);
  DiagnoseReport rep;
  rep.params = params;
  rep.weights = weights.to_string();
  rep.regularity = check_regularity(params.n, params.p0(), w, thresholds);
  rep.theory = theoretical_quantities(params, w);
  const auto& v = w.values();
  rep.homogeneous = v.size() > 0 && (v.array() == v(0)).all();
  rep.expected_community_size = params.n * params.r;
  rep.power_index_large = rep.theory.power_index > thresholds.t_low;
  return rep;
}

}  // namespace pds
