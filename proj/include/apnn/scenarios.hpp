#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apnn/dataset.hpp"
#include "apnn/loss.hpp"
#include "apnn/network.hpp"
#include "apnn/physics.hpp"
#include "apnn/refsolver.hpp"
#include "apnn/training.hpp"

namespace apnn {

inline constexpr int kScenarioSchemaVersion = 1;

struct Hotspot {
  double center = 0.0;
  double amplitude = 0.0;
};

/// Initial densities; fluxes always start in Fick equilibrium J = -D u_x.
///  cosine:   rho = mean + amplitude cos(wavenumber pi x)          (GT)
///  gaussian: rho = mean + amplitude exp(-rate x^2)                (GT)
///  hotspots: I = sum a_k exp(-(x - x_k)^2), S = 1 - I, R = 0      (SIR)
struct InitialCondition {
  enum class Kind { cosine, gaussian, hotspots };
  Kind kind = Kind::cosine;
  double mean = 0.0;
  double amplitude = 0.0;
  double wavenumber = 1.0;
  double rate = 1.0;
  std::vector<Hotspot> hotspots;
};

enum class DataSampling { none, lattice, importance };

const char* to_string(DataSampling s);
DataSampling data_sampling_from_string(const std::string& s);

struct DatasetPlan {
  DataSampling sampling = DataSampling::lattice;
  std::size_t n_data = 0;
  std::size_t n_residual = 0;
  std::size_t n_boundary = 0;
  std::size_t n_conservation = 0;
  std::size_t n_quadrature = 200;
  std::vector<int> data_components;
  std::vector<int> boundary_components;
  // Forecasting: data restricted to t <= t_train; residuals span the horizon.
  std::optional<double> t_train;
  // Desired nx / nt of the equally spaced data lattice.
  double lattice_aspect = 2.0;
};

/// Ground-truth generation and report grid.
struct TruthConfig {
  int cells = 400;
  int time_levels = 401;  // solver output levels, used for interpolation
  int table_nx = 200;     // report grid in x (periodic nodes)
  int table_nt = 201;     // report grid in t (both ends included)
  SolverConfig solver;
};

struct ScenarioConfig {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  std::string description;
  ModelSpec model = GTSpec{};
  double x_min = 0.0;
  double x_max = 1.0;
  double t_end = 1.0;
  InitialCondition ic;
  DatasetPlan plan;
  NetworkArch arch;
  LossWeights weights;
  TrainConfig train;
  ResidualForm residual = ResidualForm::ap;
  TruthConfig truth;

  void validate() const;
  double domain_length() const { return x_max - x_min; }
  LossProblem loss_problem() const { return {model, arch, residual, weights}; }
};

/// The named scenarios of the GT, GT-source and SIR test suite.
const std::vector<ScenarioConfig>& catalog();
/// Throws ConfigError for unknown names.
ScenarioConfig find_scenario(const std::string& name);

/// Multiplies point counts (data, residual, boundary, conservation) and
/// epochs by `s` (rounded, at least 1); weights and learning rate unchanged.
ScenarioConfig apply_scale(ScenarioConfig cfg, double s);

/// Switches a GT scenario to the kinetic (f+, f-) network and residual;
/// data and boundary sets then carry both rho and j.
ScenarioConfig with_residual_form(ScenarioConfig cfg, ResidualForm form);

/// Exact initial value of state component `comp` at x (fluxes in equilibrium).
double initial_value(const ScenarioConfig& cfg, int comp, double x);

/// Initial network parameters with the scenario's initial guesses.
NetworkParams initial_params(const ScenarioConfig& cfg, std::uint64_t seed);

Trajectory generate_ground_truth(const ScenarioConfig& cfg);

/// Report grid nodes.
std::vector<double> report_x(const ScenarioConfig& cfg);
std::vector<double> report_t(const ScenarioConfig& cfg);

/// Component `comp` of the trajectory on the report grid.
FieldTable truth_table(const ScenarioConfig& cfg, const Trajectory& traj, int comp);

Dataset build_dataset(const ScenarioConfig& cfg, const Trajectory& traj);

/// Seeds of the independent random streams of one run.
enum class SeedStream : std::uint64_t { network = 0, data = 1, residual = 2, data_split = 3, residual_split = 4 };
std::uint64_t stream_seed(std::uint64_t seed, SeedStream s);

}  // namespace apnn
