#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "apnn/dataset.hpp"
#include "apnn/network.hpp"
#include "apnn/physics.hpp"

namespace apnn {

/// `ap`: macroscopic network outputs and the AP residual. `standard`: GT
/// only; the network outputs the kinetic pair (f+, f-) and the residual is
/// the eps^2-scaled kinetic one.
enum class ResidualForm { ap, standard };

const char* to_string(ResidualForm f);
ResidualForm residual_form_from_string(const std::string& s);

/// Per-component weights, indexed like component_names(spec) (residuals:
/// one per equation in the same order). A zero weight omits the term.
/// In standard form the GT weights map onto the kinetic pair: data[0]
/// weighs both f+ and f-, boundary/residual[0] weigh f+ and [1] weigh f-.
struct LossWeights {
  std::vector<double> data;
  std::vector<double> boundary;
  std::vector<double> residual;
  double conservation = 0.0;

  void validate(int state_dim) const;
};

struct LossBreakdown {
  double total = 0.0;
  double data = 0.0;
  double boundary = 0.0;
  double residual = 0.0;
  double conservation = 0.0;
  // Weighted sub-terms, indexed like the weights.
  std::vector<double> data_terms;
  std::vector<double> boundary_terms;
  std::vector<double> residual_terms;
};

/// Everything the loss needs besides the parameters.
struct LossProblem {
  ModelSpec spec;
  NetworkArch arch;
  ResidualForm form = ResidualForm::ap;
  LossWeights weights;
};

/// Point sets entering one loss evaluation; any may be empty except the
/// residual set.
struct LossInputs {
  const PointSet* data = nullptr;
  const PointSet* boundary = nullptr;
  const PointSet* residual = nullptr;
  const std::vector<double>* conservation_times = nullptr;
  const std::vector<double>* quadrature_x = nullptr;
  double quadrature_weight = 1.0;
  double initial_population = 0.0;
};

LossInputs training_inputs(const Dataset& d);
/// Validation data and validation residual points only.
LossInputs validation_inputs(const Dataset& d);

/// Evaluates the loss; when `grad` is non-null it is resized to
/// params.values.size() and receives d(total)/d(theta, physical).
LossBreakdown assemble_loss(const LossProblem& problem, const NetworkParams& params,
                            const LossInputs& inputs, Eigen::VectorXd* grad = nullptr);

LossBreakdown assemble_loss_gt(const LossProblem& problem, const NetworkParams& params,
                               const LossInputs& inputs, Eigen::VectorXd* grad = nullptr);
LossBreakdown assemble_loss_sir(const LossProblem& problem, const NetworkParams& params,
                                const LossInputs& inputs, Eigen::VectorXd* grad = nullptr);

/// Network outputs mapped to macroscopic variables at the given points:
/// state_dim x n. In standard form rho = f+ + f-, j = c (f+ - f-) / eps.
Eigen::MatrixXd predict_macro(const LossProblem& problem, const NetworkParams& params,
                              std::span<const double> x, std::span<const double> t);

}  // namespace apnn
