#pragma once

#include <iosfwd>
#include <json.hpp>

#include "pds/cycle_census.hpp"
#include "pds/experiment.hpp"
#include "pds/inference.hpp"

namespace pds {

using Json = nlohmann::ordered_json;

Json to_json(const CycleCensus& c);
Json to_json(const TestReport& r);
Json to_json(const TheoreticalQuantities& q);
Json to_json(const RegularityReport& r);
Json to_json(const ParseReport& r);
Json to_json(const ModelParams& p);
Json to_json(const SimulationConfig& c);
Json to_json(const ReplicationOutcome& o);
Json to_json(const PowerTable& t, bool include_replications = true);
Json to_json(const CalibrationReport& r, bool include_replications = true);
Json to_json(const DatasetReport& r);
Json to_json(const DiagnoseReport& r);

/// Field names mirror SimulationConfig: n, weights, rates ([[a/n, b/n], ...]
/// or [{"a_over_n":..,"b_over_n":..}]), r_grid, reps, alpha, master_seed,
/// workers. Missing fields keep their defaults. Throws ConfigError.
SimulationConfig simulation_config_from_json(const Json& j);

/// Header "n,m,n3,n6,c3_hat,c6_hat" plus one row.
void write_census_csv(std::ostream& out, const CycleCensus& c);
void write_power_table_csv(std::ostream& out, const PowerTable& t);

}  // namespace pds
