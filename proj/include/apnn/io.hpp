#pragma once

#include <json.hpp>
#include <string>

#include "apnn/dataset.hpp"
#include "apnn/network.hpp"
#include "apnn/refsolver.hpp"
#include "apnn/scenarios.hpp"
#include "apnn/training.hpp"

namespace apnn {

// All JSON documents carry "format" and "schema_version"; doubles are written
// in shortest round-trip form, so every save/load pair is lossless.
inline constexpr int kFileSchemaVersion = 1;

nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

nlohmann::json arch_to_json(const NetworkArch& arch);
NetworkArch arch_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const ModelSpec& spec);
ModelSpec model_from_json(const nlohmann::json& j);

nlohmann::json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const nlohmann::json& j);
void save_scenario(const std::string& path, const ScenarioConfig& cfg);
ScenarioConfig load_scenario(const std::string& path);

/// truth.csv (t, x, components on the report grid) and truth.json sidecar
/// (scenario, grid, solver metadata) inside `dir`.
void write_truth(const std::string& dir, const ScenarioConfig& cfg, const Trajectory& traj);

/// dataset_<set>.csv (x, t, enforced components) plus dataset.json.
void write_dataset(const std::string& dir, const ScenarioConfig& cfg, const Dataset& d);
Dataset read_dataset(const std::string& dir);

/// Columns: epoch, total, each loss term, validation, each learnable parameter.
void write_history_csv(const std::string& path, const TrainHistory& h);

/// Writes a table with a header row; doubles with 17 significant digits.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace apnn
