#include "apnn/training.hpp"

#include <cmath>
#include <limits>
#if defined(__GLIBC__)
#include <malloc.h>
#endif
#include <sstream>

#include "apnn/error.hpp"

namespace apnn {

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0 && std::isfinite(learning_rate))) throw ConfigError("learning rate must be > 0");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    throw ConfigError("validation fraction must lie in [0, 1)");
  }
  if (patience < 1) throw ConfigError("early-stop patience must be >= 1");
  if (!(min_delta >= 0.0)) throw ConfigError("early-stop min-delta must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("Adam betas must lie in [0, 1)");
  }
  if (!(adam_eps > 0.0)) throw ConfigError("Adam epsilon must be > 0");
  if (log_stride < 1) throw ConfigError("log stride must be >= 1");
  if (!(max_grad_norm >= 0.0)) throw ConfigError("max gradient norm must be >= 0");
}

void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AdamState& state,
               const TrainConfig& config) {
  if (grad.size() != params.size()) throw ConfigError("adam_step: gradient size mismatch");
  for (Eigen::Index k = 0; k < grad.size(); ++k) {
    if (!std::isfinite(grad[k])) {
      throw NumericalError("adam_step: non-finite gradient at parameter " + std::to_string(k));
    }
  }
  if (state.m.size() != params.size()) {
    if (state.step != 0) throw ConfigError("adam_step: optimizer state does not match the parameters");
    state.m.setZero(params.size());
    state.v.setZero(params.size());
  }
  ++state.step;
  const double b1 = config.beta1;
  const double b2 = config.beta2;
  state.m = b1 * state.m + (1.0 - b1) * grad;
  state.v = b2 * state.v + (1.0 - b2) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  const double lr = config.learning_rate;
  const double eps = config.adam_eps;
  params.array() -= lr * (state.m.array() / c1) / ((state.v.array() / c2).sqrt() + eps);
}

namespace {

void record(TrainHistory& h, int epoch, const LossBreakdown& br, double validation,
            const NetworkParams& p) {
  h.epoch.push_back(epoch);
  h.total.push_back(br.total);
  std::vector<double> row{br.data, br.boundary, br.residual, br.conservation};
  row.insert(row.end(), br.data_terms.begin(), br.data_terms.end());
  row.insert(row.end(), br.boundary_terms.begin(), br.boundary_terms.end());
  row.insert(row.end(), br.residual_terms.begin(), br.residual_terms.end());
  h.terms.push_back(std::move(row));
  h.validation.push_back(validation);
  std::vector<double> phys(p.physical_count());
  for (std::size_t k = 0; k < phys.size(); ++k) phys[k] = p.physical(k);
  h.physical.push_back(std::move(phys));
}

std::string describe(const LossBreakdown& br) {
  std::ostringstream os;
  os << "data=" << br.data << " boundary=" << br.boundary << " residual=" << br.residual
     << " conservation=" << br.conservation;
  return os.str();
}

// Each epoch allocates and frees multi-megabyte trace matrices; keeping them
// on the heap instead of fresh mmaps avoids page-faulting them every time.
void keep_large_blocks_on_heap() {
#if defined(__GLIBC__)
  static const bool done = [] {
    mallopt(M_MMAP_THRESHOLD, 1 << 30);
    mallopt(M_TRIM_THRESHOLD, 1 << 30);
    return true;
  }();
  (void)done;
#endif
}

std::string parameter_label(const NetworkParams& p, Eigen::Index k) {
  const auto n_net = static_cast<Eigen::Index>(p.network_size());
  if (k >= n_net) return "physical parameter '" + p.physical_names[static_cast<std::size_t>(k - n_net)] + "'";
  return "network parameter " + std::to_string(k);
}

}  // namespace

TrainResult train(const LossProblem& problem, const Dataset& data, const NetworkParams& initial,
                  const TrainConfig& config, const EpochCallback& on_epoch) {
  config.validate();
  keep_large_blocks_on_heap();
  TrainResult best{initial, {}};
  TrainHistory& hist = best.history;
  const std::vector<std::string> names = component_names(problem.spec);
  hist.term_names = {"data", "boundary", "residual", "conservation"};
  for (const char* group : {"data_", "boundary_", "residual_"}) {
    for (const auto& n : names) hist.term_names.push_back(group + n);
  }
  hist.physical_names = initial.physical_names;

  const LossInputs train_in = training_inputs(data);
  const LossInputs val_in = validation_inputs(data);
  const bool has_validation = !data.residual_validation.empty() || !data.data_validation.empty();

  NetworkParams current = initial;
  AdamState adam;
  Eigen::VectorXd grad;
  double best_val = std::numeric_limits<double>::infinity();
  int since_best = 0;
  hist.stop_reason = "max_epochs";

  auto diverged = [&](const std::string& why) {
    TrainResult partial{current, hist};
    if (has_validation && hist.best_epoch >= 0) partial.params = best.params;
    throw TrainingDiverged(why, std::move(partial));
  };

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    LossBreakdown br;
    try {
      br = assemble_loss(problem, current, train_in, &grad);
    } catch (const NumericalError& e) {
      diverged(std::string("epoch ") + std::to_string(epoch) + ": " + e.what());
    }
    if (!std::isfinite(br.total)) {
      diverged("epoch " + std::to_string(epoch) + ": training loss is not finite (" + describe(br) + ")");
    }
    double val = std::numeric_limits<double>::quiet_NaN();
    if (has_validation) {
      // Validation residual points may be absent when only data were split.
      if (!data.residual_validation.empty()) {
        val = assemble_loss(problem, current, val_in).total;
      } else {
        LossInputs only_data = val_in;
        only_data.residual = &data.residual_train;
        const LossBreakdown vb = assemble_loss(problem, current, only_data);
        val = vb.data;
      }
      if (!std::isfinite(val)) diverged("epoch " + std::to_string(epoch) + ": validation loss is not finite");
    }
    const bool last = epoch + 1 == config.epochs;
    if (epoch % config.log_stride == 0 || last) record(hist, epoch, br, val, current);
    if (on_epoch) on_epoch(epoch, br, val, current);
    hist.epochs_run = epoch + 1;

    if (has_validation) {
      if (val < best_val - config.min_delta) {
        best_val = val;
        best.params = current;
        hist.best_epoch = epoch;
        hist.best_validation = val;
        since_best = 0;
      } else if (++since_best >= config.patience) {
        hist.stop_reason = "early_stopping";
        if (!(epoch % config.log_stride == 0 || last)) record(hist, epoch, br, val, current);
        break;
      }
    }

    if (config.max_grad_norm > 0.0) {
      const double norm = grad.norm();
      if (norm > config.max_grad_norm) grad *= config.max_grad_norm / norm;
    }
    try {
      adam_step(current.values, grad, adam, config);
    } catch (const NumericalError&) {
      Eigen::Index bad = 0;
      while (bad < grad.size() && std::isfinite(grad[bad])) ++bad;
      diverged("epoch " + std::to_string(epoch) + ": non-finite gradient at " +
               parameter_label(current, bad) + " (" + describe(br) + ")");
    }
  }
  if (!has_validation) {
    best.params = current;
    hist.best_epoch = hist.epochs_run;
  }
  return best;
}

}  // namespace apnn
