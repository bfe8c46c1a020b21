#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apnn/dataset.hpp"
#include "apnn/loss.hpp"
#include "apnn/network.hpp"

namespace apnn {

struct TrainConfig {
  double learning_rate = 1e-3;
  int epochs = 1000;
  double validation_fraction = 0.2;
  // Counted in validation evaluations, which happen every epoch.
  int patience = 500;
  double min_delta = 0.0;
  std::uint64_t seed = 1;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  // History rows are kept every `log_stride` epochs (and for the last one).
  int log_stride = 1;
  // Gradient max-norm clipping; 0 disables it.
  double max_grad_norm = 0.0;

  void validate() const;
};

struct AdamState {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long step = 0;
};

/// One bias-corrected Adam update. Throws NumericalError naming the first
/// non-finite gradient entry.
void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AdamState& state,
               const TrainConfig& config);

struct TrainHistory {
  std::vector<std::string> term_names;      // columns of `terms`
  std::vector<std::string> physical_names;  // columns of `physical`
  std::vector<int> epoch;
  std::vector<double> total;
  std::vector<std::vector<double>> terms;  // data, boundary, residual, conservation, then per component
  std::vector<double> validation;          // NaN when no validation set
  std::vector<std::vector<double>> physical;
  int best_epoch = -1;
  double best_validation = 0.0;
  int epochs_run = 0;
  std::string stop_reason;

  std::size_t size() const { return epoch.size(); }
};

struct TrainResult {
  NetworkParams params;
  TrainHistory history;
};

/// Raised when the loss or its gradient stops being finite; carries the
/// last finite parameters and the history so far.
class TrainingDiverged : public std::runtime_error {
 public:
  TrainingDiverged(const std::string& what, TrainResult partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const TrainResult& partial() const { return partial_; }

 private:
  TrainResult partial_;
};

using EpochCallback =
    std::function<void(int epoch, const LossBreakdown& train, double validation, const NetworkParams&)>;

/// Full-batch Adam on the training part of `data`, early stopping on the
/// validation part. Returns the parameters with the lowest validation loss
/// (the final ones when there is no validation set).
TrainResult train(const LossProblem& problem, const Dataset& data, const NetworkParams& initial,
                  const TrainConfig& config, const EpochCallback& on_epoch = {});

}  // namespace apnn
