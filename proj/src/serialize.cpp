#include "pds/serialize.hpp"

#include <ostream>

namespace pds {

namespace {

Json optional_number(const std::optional<double>& x) {
  return x ? Json(*x) : Json(nullptr);
}

}  // namespace

Json to_json(const CycleCensus& c) {
  return {{"n", c.n},           {"m", c.m},
          {"n3", c.n3},         {"n6", c.n6},
          {"c3_hat", c.c3_hat}, {"c6_hat", c.c6_hat},
          {"degenerate", c.degenerate}};
}

Json to_json(const TestReport& r) {
  return {{"t_n", optional_number(r.t_n)},
          {"p_value", r.p_value},
          {"reject", r.reject},
          {"alpha", r.alpha},
          {"critical_value", r.critical_value},
          {"n", r.census.n},
          {"m", r.census.m},
          {"n3", r.census.n3},
          {"n6", r.census.n6},
          {"c3_hat", r.census.c3_hat},
          {"c6_hat", r.census.c6_hat},
          {"degenerate", r.degenerate}};
}

Json to_json(const TheoreticalQuantities& q) {
  return {{"a_n", q.a_n},
          {"b_n", q.b_n},
          {"c3", q.c3},
          {"c6", q.c6},
          {"lambda1_leading", q.lambda1_leading},
          {"lambda1_exact", q.lambda1_exact},
          {"lambda_sq", q.lambda_sq},
          {"lambda_exact", q.lambda_exact},
          {"power_index", q.power_index}};
}

Json to_json(const RegularityReport& r) {
  Json ratios = Json::object();
  Json norms = Json::object();
  for (int k = 3; k <= 12; ++k) {
    norms[std::to_string(k)] = r.normk[k - 3];
    ratios[std::to_string(k)] = r.norm_ratios[k - 3];
  }
  return {{"n_p0", r.n_p0},
          {"sqrt_n", r.sqrt_n},
          {"p0_norm2sq", r.p0_norm2sq},
          {"norm2sq", r.norm2sq},
          {"norm2sq_over_n", r.norm2sq_over_n},
          {"normk", norms},
          {"norm_ratios", ratios},
          {"thresholds",
           {{"t_low", r.thresholds.t_low},
            {"c1", r.thresholds.c1},
            {"c2", r.thresholds.c2}}},
          {"flags", r.flags}};
}

Json to_json(const ParseReport& r) {
  return {{"n", r.n},
          {"m", r.m},
          {"dropped_self_loops", r.dropped_self_loops},
          {"collapsed_duplicates", r.collapsed_duplicates},
          {"lines_read", r.lines_read},
          {"matrix_market", r.matrix_market}};
}

Json to_json(const ModelParams& p) {
  return {{"n", p.n},
          {"a", p.a},
          {"b", p.b},
          {"a_over_n", p.a_over_n()},
          {"b_over_n", p.b_over_n()},
          {"r", p.r}};
}

Json to_json(const SimulationConfig& c) {
  Json rates = Json::array();
  for (const auto& rp : c.rates) rates.push_back({rp.a_over_n, rp.b_over_n});
  // Worker count is deliberately absent: output must not depend on it.
  return {{"n", c.n},
          {"weights", c.weights.to_string()},
          {"rates", rates},
          {"r_grid", c.r_grid},
          {"reps", c.reps},
          {"alpha", c.alpha},
          {"master_seed", c.master_seed}};
}

Json to_json(const ReplicationOutcome& o) {
  return {{"t_n", optional_number(o.t_n)},
          {"reject", o.reject},
          {"m", o.m},
          {"n3", o.n3},
          {"n6", o.n6}};
}

Json to_json(const PowerTable& t, bool include_replications) {
  Json cells = Json::array();
  for (const auto& c : t.cells) {
    Json cell = {{"a_over_n", c.rates.a_over_n},
                 {"b_over_n", c.rates.b_over_n},
                 {"r", c.r},
                 {"reps", c.reps},
                 {"degenerate", c.degenerate},
                 {"rejections", c.rejections},
                 {"rejection_fraction", c.rejection_fraction},
                 {"standard_error", c.standard_error},
                 {"mean_t", c.mean_t},
                 {"var_t", c.var_t}};
    if (include_replications) {
      Json reps = Json::array();
      for (const auto& o : c.replications) reps.push_back(to_json(o));
      cell["replications"] = std::move(reps);
    }
    cells.push_back(std::move(cell));
  }
  return {{"config", to_json(t.config)}, {"cells", cells}};
}

Json to_json(const CalibrationReport& r, bool include_replications) {
  Json j = {{"reps", r.reps},
            {"degenerate", r.degenerate},
            {"mean", r.mean},
            {"variance", r.variance},
            {"skewness", r.skewness},
            {"ks_distance", r.ks_distance},
            {"ks_p_value", r.ks_p_value},
            {"alpha", r.alpha},
            {"rejection_rate", r.rejection_rate}};
  if (include_replications) {
    Json reps = Json::array();
    for (const auto& o : r.replications) reps.push_back(to_json(o));
    j["replications"] = std::move(reps);
  }
  return j;
}

Json to_json(const DatasetReport& r) {
  Json j = to_json(r.test);
  j["path"] = r.path;
  j["parse"] = to_json(r.parse);
  return j;
}

Json to_json(const DiagnoseReport& r) {
  return {{"params", to_json(r.params)},
          {"weights", r.weights},
          {"homogeneous", r.homogeneous},
          {"expected_community_size", r.expected_community_size},
          {"power_index_large", r.power_index_large},
          {"theory", to_json(r.theory)},
          {"regularity", to_json(r.regularity)}};
}

SimulationConfig simulation_config_from_json(const Json& j) {
  SimulationConfig c;
  try {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    c.n = j.value("n", c.n);
    if (j.contains("weights")) c.weights = WeightSpec::parse(j.at("weights").get<std::string>());
    if (j.contains("rates")) {
      for (const auto& item : j.at("rates")) {
        if (item.is_array()) {
          if (item.size() != 2) throw ConfigError("rate pair must have 2 entries");
          c.rates.push_back({item[0].get<double>(), item[1].get<double>()});
        } else {
          c.rates.push_back({item.at("a_over_n").get<double>(),
                             item.at("b_over_n").get<double>()});
        }
      }
    }
    if (j.contains("r_grid")) c.r_grid = j.at("r_grid").get<std::vector<double>>();
    c.reps = j.value("reps", c.reps);
    c.alpha = j.value("alpha", c.alpha);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.workers = j.value("workers", c.workers);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  return c;
}

void write_census_csv(std::ostream& out, const CycleCensus& c) {
  const auto old = out.precision(17);
  out << "n,m,n3,n6,c3_hat,c6_hat\n"
      << c.n << ',' << c.m << ',' << c.n3 << ',' << c.n6 << ',' << c.c3_hat
      << ',' << c.c6_hat << '\n';
  out.precision(old);
}

void write_power_table_csv(std::ostream& out, const PowerTable& t) {
  const auto old = out.precision(17);
  out << "a_over_n,b_over_n,r,reps,degenerate,rejections,rejection_fraction,"
         "standard_error,mean_t,var_t\n";
  for (const auto& c : t.cells) {
    out << c.rates.a_over_n << ',' << c.rates.b_over_n << ',' << c.r << ','
        << c.reps << ',' << c.degenerate << ',' << c.rejections << ','
        << c.rejection_fraction << ',' << c.standard_error << ',' << c.mean_t
        << ',' << c.var_t << '\n';
  }
  out.precision(old);
}

}  // namespace pds
