#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "apnn/physics.hpp"

namespace apnn {

/// Uniform periodic grid of cells on [a, b].
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  int cells = 400;

  void validate() const;
  double length() const { return b - a; }
  double dx() const { return (b - a) / cells; }
  double center(int i) const { return a + (i + 0.5) * dx(); }
};

struct SolverConfig {
  double cfl_hyperbolic = 0.5;
  double cfl_parabolic = 0.25;
  // Cap on dt times the largest explicit reaction rate.
  double reaction_cfl = 0.1;
  // Hyperbolic speeds above this are penalized into the implicit part.
  double reference_speed = 1.0;
  double min_dt = 1e-14;
};

/// Cell averages at report times. `states[k]` is components x cells; rows
/// follow component_names(spec).
struct Trajectory {
  ModelSpec spec;
  Grid1D grid;
  std::vector<double> times;
  std::vector<Eigen::MatrixXd> states;
  std::string scheme = "ARS(2,2,2) IMEX-RK, MUSCL-minmod, Rusanov";
  SolverConfig config;
  // dt used inside each report interval; dt_history[k] covers (times[k], times[k+1]].
  std::vector<double> dt_history;
  long total_steps = 0;

  int components() const { return static_cast<int>(states.empty() ? 0 : states.front().rows()); }
  /// Point value of component `comp` at (x, t): fourth-order deconvolution
  /// of the cell averages, cubic Lagrange interpolation in x (periodic) and t.
  double point_value(int comp, double x, double t) const;
  /// Point values at the cell centers of report level k.
  Eigen::MatrixXd point_values(std::size_t k) const;
};

/// Initial data as point-evaluable functions per component.
using InitialField = std::function<double(double)>;

/// Cell averages of `f` by three-point Gauss quadrature per cell.
Eigen::VectorXd cell_averages(const InitialField& f, const Grid1D& grid);

/// Integrates the macroscopic GT or SIR system from cell averages `initial`
/// (components x cells) and records the state at each of `report_times`
/// (ascending, first entry 0 meaning the initial state).
Trajectory imex_fv_solve(const ModelSpec& spec, const Grid1D& grid, const Eigen::MatrixXd& initial,
                         const std::vector<double>& report_times, const SolverConfig& config = {});

/// rho(x, t) = A + B cos(k pi x) exp(-(c^2/sigma)(k pi)^2 t), the solution of
/// the diffusion limit rho_t = (c^2/sigma) rho_xx.
struct HeatMode {
  double mean = 0.0;
  double amplitude = 0.0;
  double wavenumber = 1.0;  // k
};

double analytic_heat_solution(double x, double t, double c, double sigma, const HeatMode& mode);
/// j = -(c^2/sigma) d(rho)/dx for the same solution.
double analytic_heat_flux(double x, double t, double c, double sigma, const HeatMode& mode);
/// Exact average of the heat solution over [x - h/2, x + h/2].
double analytic_heat_cell_average(double x, double h, double t, double c, double sigma,
                                  const HeatMode& mode);

}  // namespace apnn
