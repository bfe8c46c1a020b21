#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apnn/jet.hpp"

namespace apnn {

enum class Activation { tanh, sin };

const char* to_string(Activation a);
Activation activation_from_string(const std::string& s);

/// x -> (cos(2 pi alpha x / L), sin(2 pi alpha x / L)); period L / alpha.
struct PeriodicEmbedding {
  double alpha = 1.0;
  double domain_length = 1.0;
};

std::array<double, 2> periodic_embed(double x, double alpha, double domain_length);

/// Feed-forward surrogate U_NN(x, t). `depth` counts affine layers: the first
/// maps the input features to `width` without activation, the next depth-2
/// are activated, and the last maps to `output_dim` without activation.
struct NetworkArch {
  int depth = 8;
  int width = 32;
  int output_dim = 2;
  Activation activation = Activation::sin;
  std::optional<PeriodicEmbedding> embedding;
  // The time input is rescaled to [0, 1] over [t_min, t_max].
  double t_min = 0.0;
  double t_max = 1.0;
  // SIREN frequency used in the hidden-layer init bound.
  double sine_omega0 = 1.0;

  void validate() const;
  int input_dim() const { return embedding ? 3 : 2; }
  /// Layer widths m_0 (features), m_1, ..., m_depth (outputs).
  std::vector<int> layer_sizes() const;
  /// Number of weights and biases.
  std::size_t weight_count() const;
};

/// Input features as jets with respect to (x, t).
std::vector<ad::Jet2> input_features(const NetworkArch& arch, double x, double t);

/// Flat parameter vector: all layers (W^l column-major, then b^l), followed by
/// the learnable physical scalars in `physical_names` order.
struct NetworkParams {
  std::vector<int> sizes;
  Eigen::VectorXd values;
  std::vector<std::string> physical_names;

  std::size_t network_size() const;
  std::size_t physical_count() const { return physical_names.size(); }
  std::size_t weight_offset(int layer) const;
  std::size_t bias_offset(int layer) const;

  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;
  Eigen::Map<Eigen::MatrixXd> weight(int layer);
  Eigen::Map<Eigen::VectorXd> bias(int layer);

  double physical(std::size_t k) const { return values[static_cast<Eigen::Index>(network_size() + k)]; }
  double& physical(std::size_t k) { return values[static_cast<Eigen::Index>(network_size() + k)]; }
  /// Index of a named physical parameter, or -1.
  int physical_index(const std::string& name) const;

  /// Throws ConfigError when the layout does not match `arch`.
  void check_against(const NetworkArch& arch) const;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

/// SIREN init for sin networks (first layer U(+-1/fan_in), later layers
/// U(+-sqrt(6/fan_in)/omega0), biases U(+-1/sqrt(fan_in))); Glorot-uniform
/// weights and zero biases for tanh networks.
NetworkParams init_params(const NetworkArch& arch, std::uint64_t seed,
                          const std::vector<NamedValue>& physical = {});

/// Scalar-generic forward pass (value and both input partials per output).
/// With T = ad::Var this records the whole network on a tape; it is the
/// slow reference path used to cross-check the batched engine.
template <class T>
std::vector<ad::BasicJet<T>> fnn_forward(std::span<const T> theta, const std::vector<int>& sizes,
                                         const NetworkArch& arch, double x, double t) {
  using std::cos;
  using std::sin;
  using std::tanh;
  const auto feats = input_features(arch, x, t);
  const int depth = static_cast<int>(sizes.size()) - 1;
  std::size_t off = 0;
  std::vector<ad::BasicJet<T>> z;
  for (int l = 0; l < depth; ++l) {
    const int rows = sizes[static_cast<std::size_t>(l + 1)];
    const int cols = sizes[static_cast<std::size_t>(l)];
    const std::size_t w_off = off;
    const std::size_t b_off = off + static_cast<std::size_t>(rows * cols);
    off = b_off + static_cast<std::size_t>(rows);
    std::vector<ad::BasicJet<T>> a(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
      const T& b = theta[b_off + static_cast<std::size_t>(r)];
      T v = b;
      T dx = b * 0.0;
      T dt = b * 0.0;
      for (int c = 0; c < cols; ++c) {
        const T& w = theta[w_off + static_cast<std::size_t>(c * rows + r)];
        if (l == 0) {
          const ad::Jet2& f = feats[static_cast<std::size_t>(c)];
          v = v + w * f.value;
          dx = dx + w * f.d_x;
          dt = dt + w * f.d_t;
        } else {
          const ad::BasicJet<T>& f = z[static_cast<std::size_t>(c)];
          v = v + w * f.value;
          dx = dx + w * f.d_x;
          dt = dt + w * f.d_t;
        }
      }
      ad::BasicJet<T> pre(v, dx, dt);
      const bool activated = l > 0 && l < depth - 1;
      if (activated) {
        a[static_cast<std::size_t>(r)] =
            arch.activation == Activation::sin ? ad::sin(pre) : ad::tanh(pre);
      } else {
        a[static_cast<std::size_t>(r)] = pre;
      }
    }
    z = std::move(a);
  }
  return z;
}

/// Forward state of a batch of points kept for the reverse sweep. Jet blocks
/// are stacked horizontally: columns [0,N) values, [N,2N) d/dx, [2N,3N) d/dt.
struct BatchTrace {
  bool with_jets = false;
  Eigen::Index points = 0;
  std::vector<Eigen::MatrixXd> inputs;   // per layer, m_l x (N or 3N)
  std::vector<Eigen::MatrixXd> d1;       // sigma'(a) per activated layer
  std::vector<Eigen::MatrixXd> d2;       // sigma''(a) per activated layer
  std::vector<Eigen::MatrixXd> pre_jet;  // a_x | a_t per activated layer
  Eigen::MatrixXd output;                // out_dim x (N or 3N)

  double value(int k, Eigen::Index i) const { return output(k, i); }
  double d_x(int k, Eigen::Index i) const { return output(k, points + i); }
  double d_t(int k, Eigen::Index i) const { return output(k, 2 * points + i); }
};

/// Batched evaluation at points (x_i, t_i).
void forward_batch(const NetworkParams& params, const NetworkArch& arch,
                   std::span<const double> x, std::span<const double> t, bool with_jets,
                   BatchTrace& trace);

/// Accumulates d(loss)/d(theta) into `grad` (network part of the flat vector)
/// given the loss adjoints of the outputs, laid out like trace.output.
void backward_batch(const NetworkParams& params, const BatchTrace& trace,
                    const Eigen::MatrixXd& output_adjoint, Eigen::Ref<Eigen::VectorXd> grad);

/// Convenience: jets of all outputs at one point via the batched engine.
std::vector<ad::Jet2> evaluate_point(const NetworkParams& params, const NetworkArch& arch, double x,
                                     double t);

// Checkpoint files (JSON, schema-versioned, bit-exact doubles).
struct Checkpoint {
  NetworkArch arch;
  NetworkParams params;
  std::uint64_t seed = 0;
  int epoch = 0;
};

void save_checkpoint(const std::string& path, const Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace apnn
