#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apnn/refsolver.hpp"
#include "apnn/scenarios.hpp"
#include "apnn/training.hpp"

namespace apnn {

struct ParameterRow {
  std::string name;
  double truth = 0.0;
  double initial_guess = 0.0;
  double estimate = 0.0;
  // |estimate - truth| / |truth|; empty when the truth is zero.
  std::optional<double> relative_error;
};

/// Errors of one state component on the report grid. The map holds
/// |u_NN - u| / ||u||, the norm being the root mean square of u over the
/// whole grid, so its root mean square equals `relative_l2`.
struct FieldError {
  std::string component;
  double relative_l2 = 0.0;
  // Same ratio restricted to t > t_train (NaN without t_train).
  double forecast_relative_l2 = 0.0;
  Eigen::MatrixXd map;  // nt x nx
};

struct Report {
  int schema_version = 1;
  std::string scenario;
  std::string residual_form;
  std::uint64_t seed = 0;
  int epochs_run = 0;
  int best_epoch = 0;
  std::string stop_reason;
  std::optional<double> t_train;
  std::vector<ParameterRow> parameters;
  std::vector<FieldError> fields;
  std::vector<double> t;
  std::vector<double> x;
  // SIR only; NaN where R_t is undefined.
  std::vector<double> rt_network, rt_truth;
  std::vector<double> infected_network, infected_truth;
  std::vector<double> population_network, population_truth;
  double conservation_drift_network = 0.0;
  double conservation_drift_truth = 0.0;
  // GT only: median over the grid of |f+ - f-|.
  double kinetic_gap_median = 0.0;

  const ParameterRow* parameter(const std::string& name) const;
  const FieldError* field(const std::string& component) const;
};

/// Network outputs mapped to state components on the report grid, one
/// nt x nx table per component.
std::vector<Eigen::MatrixXd> network_tables(const ScenarioConfig& cfg, const NetworkParams& params);

/// ||a - b|| / ||b|| over the rows with t > t_from (all rows when t_from < 0).
double relative_l2(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const std::vector<double>& t,
                   double t_from = -1.0);

Report compute_metrics(const ScenarioConfig& cfg, const NetworkParams& params, const Trajectory& traj);

nlohmann::json report_to_json(const Report& r);
/// errors.csv (t, x, error per component) and series.csv (SIR time series).
void write_report_tables(const std::string& dir, const Report& r);

// ---------------------------------------------------------------------------
// Experiment orchestration.

enum class Stage { config, generate, dataset, train, report, io };
const char* to_string(Stage s);
/// Process exit status of a failing stage (0 is success).
int exit_code(Stage s);

class StageError : public std::runtime_error {
 public:
  StageError(Stage stage, const std::string& what)
      : std::runtime_error(std::string(to_string(stage)) + ": " + what), stage_(stage) {}
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

struct RunOverrides {
  std::optional<double> scale;
  std::optional<std::uint64_t> seed;
  std::optional<ResidualForm> residual;
  // Applied after the scale.
  std::optional<int> epochs;
  std::optional<std::size_t> n_data;
  std::optional<std::size_t> n_residual;
};

/// Catalog entry with overrides applied (residual form, scale, then counts).
ScenarioConfig resolve_scenario(const std::string& name, const RunOverrides& o);

struct RunOutcome {
  std::string directory;
  Report report;
  TrainHistory history;
  NetworkParams params;
};

using ProgressCallback = std::function<void(const std::string&)>;

/// generate -> build_dataset -> train -> evaluate. Writes scenario.json,
/// truth/, dataset/, history.csv, checkpoint.json, report.json and the
/// report tables into a fresh timestamped directory below `output_root`.
/// Failures are rethrown as StageError.
RunOutcome run_experiment(const ScenarioConfig& cfg, const std::string& output_root,
                          const ProgressCallback& progress = {});

/// Output root from $APNN_OUTPUT_ROOT, else "runs".
std::string default_output_root();

/// Recomputes the report of a run directory from its scenario and checkpoint.
Report rerun_report(const std::string& run_dir);

}  // namespace apnn
