#include "apnn/network.hpp"

#include <cmath>
#include <numbers>

#include "apnn/error.hpp"
#include "apnn/rng.hpp"

namespace apnn {

const char* to_string(Activation a) { return a == Activation::sin ? "sin" : "tanh"; }

Activation activation_from_string(const std::string& s) {
  if (s == "sin") return Activation::sin;
  if (s == "tanh") return Activation::tanh;
  throw ConfigError("unknown activation '" + s + "'");
}

std::array<double, 2> periodic_embed(double x, double alpha, double domain_length) {
  if (!(alpha > 0.0)) throw ConfigError("periodic embedding needs alpha > 0");
  if (!(domain_length > 0.0)) throw ConfigError("periodic embedding needs a positive domain length");
  const double phase = 2.0 * std::numbers::pi * alpha * x / domain_length;
  return {std::cos(phase), std::sin(phase)};
}

void NetworkArch::validate() const {
  if (depth < 2) throw ConfigError("network depth must be >= 2");
  if (width < 1) throw ConfigError("network width must be >= 1");
  if (output_dim < 1) throw ConfigError("network output_dim must be >= 1");
  if (!(t_max > t_min)) throw ConfigError("network time range must satisfy t_max > t_min");
  if (embedding) {
    if (!(embedding->alpha > 0.0)) throw ConfigError("periodic embedding needs alpha > 0");
    if (!(embedding->domain_length > 0.0)) {
      throw ConfigError("periodic embedding needs a positive domain length");
    }
  }
}

std::vector<int> NetworkArch::layer_sizes() const {
  std::vector<int> s;
  s.push_back(input_dim());
  for (int l = 0; l < depth - 1; ++l) s.push_back(width);
  s.push_back(output_dim);
  return s;
}

std::size_t NetworkArch::weight_count() const {
  const auto s = layer_sizes();
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < s.size(); ++l) {
    n += static_cast<std::size_t>(s[l + 1]) * static_cast<std::size_t>(s[l] + 1);
  }
  return n;
}

std::vector<ad::Jet2> input_features(const NetworkArch& arch, double x, double t) {
  const double inv_span = 1.0 / (arch.t_max - arch.t_min);
  const ad::Jet2 time((t - arch.t_min) * inv_span, 0.0, inv_span);
  if (!arch.embedding) {
    return {ad::Jet2(x, 1.0, 0.0), time};
  }
  const double k = 2.0 * std::numbers::pi * arch.embedding->alpha / arch.embedding->domain_length;
  const auto cs = periodic_embed(x, arch.embedding->alpha, arch.embedding->domain_length);
  return {ad::Jet2(cs[0], -k * cs[1], 0.0), ad::Jet2(cs[1], k * cs[0], 0.0), time};
}

// ---------------------------------------------------------------------------

std::size_t NetworkParams::network_size() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    n += static_cast<std::size_t>(sizes[l + 1]) * static_cast<std::size_t>(sizes[l] + 1);
  }
  return n;
}

std::size_t NetworkParams::weight_offset(int layer) const {
  std::size_t off = 0;
  for (int l = 0; l < layer; ++l) {
    const auto i = static_cast<std::size_t>(l);
    off += static_cast<std::size_t>(sizes[i + 1]) * static_cast<std::size_t>(sizes[i] + 1);
  }
  return off;
}

std::size_t NetworkParams::bias_offset(int layer) const {
  const auto i = static_cast<std::size_t>(layer);
  return weight_offset(layer) + static_cast<std::size_t>(sizes[i + 1]) * static_cast<std::size_t>(sizes[i]);
}

Eigen::Map<const Eigen::MatrixXd> NetworkParams::weight(int layer) const {
  const auto i = static_cast<std::size_t>(layer);
  return {values.data() + weight_offset(layer), sizes[i + 1], sizes[i]};
}

Eigen::Map<const Eigen::VectorXd> NetworkParams::bias(int layer) const {
  return {values.data() + bias_offset(layer), sizes[static_cast<std::size_t>(layer) + 1]};
}

Eigen::Map<Eigen::MatrixXd> NetworkParams::weight(int layer) {
  const auto i = static_cast<std::size_t>(layer);
  return {values.data() + weight_offset(layer), sizes[i + 1], sizes[i]};
}

Eigen::Map<Eigen::VectorXd> NetworkParams::bias(int layer) {
  return {values.data() + bias_offset(layer), sizes[static_cast<std::size_t>(layer) + 1]};
}

int NetworkParams::physical_index(const std::string& name) const {
  for (std::size_t k = 0; k < physical_names.size(); ++k) {
    if (physical_names[k] == name) return static_cast<int>(k);
  }
  return -1;
}

void NetworkParams::check_against(const NetworkArch& arch) const {
  if (sizes != arch.layer_sizes()) throw ConfigError("network parameters do not match architecture");
  const auto expected = network_size() + physical_names.size();
  if (static_cast<std::size_t>(values.size()) != expected) {
    throw ConfigError("network parameter vector has " + std::to_string(values.size()) +
                      " entries, expected " + std::to_string(expected));
  }
}

NetworkParams init_params(const NetworkArch& arch, std::uint64_t seed,
                          const std::vector<NamedValue>& physical) {
  arch.validate();
  NetworkParams p;
  p.sizes = arch.layer_sizes();
  const std::size_t n_net = p.network_size();
  p.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_net + physical.size()));
  Rng rng(seed);
  const int depth = arch.depth;
  for (int l = 0; l < depth; ++l) {
    const auto fan_in = static_cast<double>(p.sizes[static_cast<std::size_t>(l)]);
    const auto fan_out = static_cast<double>(p.sizes[static_cast<std::size_t>(l) + 1]);
    double w_bound = 0.0;
    double b_bound = 0.0;
    if (arch.activation == Activation::sin) {
      w_bound = l == 0 ? 1.0 / fan_in : std::sqrt(6.0 / fan_in) / arch.sine_omega0;
      b_bound = 1.0 / std::sqrt(fan_in);
    } else {
      w_bound = std::sqrt(6.0 / (fan_in + fan_out));
    }
    auto w = p.weight(l);
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      for (Eigen::Index r = 0; r < w.rows(); ++r) w(r, c) = rng.uniform(-w_bound, w_bound);
    }
    auto b = p.bias(l);
    for (Eigen::Index r = 0; r < b.size(); ++r) {
      b(r) = b_bound > 0.0 ? rng.uniform(-b_bound, b_bound) : 0.0;
    }
  }
  for (std::size_t k = 0; k < physical.size(); ++k) {
    p.physical_names.push_back(physical[k].name);
    p.values[static_cast<Eigen::Index>(n_net + k)] = physical[k].value;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Batched engine

namespace {

// tanh through exp: Eigen vectorizes exp for double but not tanh.
void fast_tanh(const Eigen::Ref<const Eigen::MatrixXd>& a, Eigen::Ref<Eigen::MatrixXd> out) {
  out = 1.0 - 2.0 / ((2.0 * a.array()).exp() + 1.0);
}

// sin and cos of n values. Cody-Waite reduction by pi/2 with a three-part
// constant and the fdlibm kernels on [-pi/4, pi/4]; the loop vectorizes,
// unlike std::sin. Accurate to a few ulp for |x| < 1e5, beyond that the
// library functions take over.
void sincos_n(const double* __restrict x, double* __restrict s, double* __restrict c, Eigen::Index n) {
  constexpr double two_over_pi = 6.36619772367581382433e-01;
  constexpr double p1 = 1.57079632673412561417e+00;
  constexpr double p2 = 6.07710050630396597660e-11;
  constexpr double p3 = 2.02226624879595063154e-21;
  constexpr double round_magic = 6755399441055744.0;  // 1.5 * 2^52
  bool large = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = x[i];
    const double k = (v * two_over_pi + round_magic) - round_magic;
    const double r = ((v - k * p1) - k * p2) - k * p3;
    const double z = r * r;
    const double ps =
        r + r * z *
                (-1.66666666666666324348e-01 +
                 z * (8.33333333332248946124e-03 +
                      z * (-1.98412698298579493134e-04 +
                           z * (2.75573137070700676789e-06 +
                                z * (-2.50507602534068634195e-08 + z * 1.58969099521155010221e-10)))));
    const double pc =
        1.0 - 0.5 * z +
        z * z *
            (4.16666666666666019037e-02 +
             z * (-1.38888888888741095749e-03 +
                  z * (2.48015872894767294178e-05 +
                       z * (-2.75573143513906633035e-07 +
                            z * (2.08757232129817482790e-09 + z * -1.13596475577881948265e-11)))));
    const auto q = static_cast<long>(k) & 3;
    const double sa = (q & 1) ? pc : ps;
    const double ca = (q & 1) ? ps : pc;
    s[i] = (q & 2) ? -sa : sa;
    c[i] = ((q + 1) & 2) ? -ca : ca;
    large |= !(std::abs(v) < 1e5);
  }
  if (!large) return;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(std::abs(x[i]) < 1e5)) {
      s[i] = std::sin(x[i]);
      c[i] = std::cos(x[i]);
    }
  }
}

}  // namespace

void forward_batch(const NetworkParams& params, const NetworkArch& arch,
                   std::span<const double> x, std::span<const double> t, bool with_jets,
                   BatchTrace& trace) {
  if (x.size() != t.size()) throw ConfigError("forward_batch: x and t sizes differ");
  params.check_against(arch);
  const auto n = static_cast<Eigen::Index>(x.size());
  const Eigen::Index cols = with_jets ? 3 * n : n;
  const int depth = arch.depth;
  trace.with_jets = with_jets;
  trace.points = n;
  trace.inputs.resize(static_cast<std::size_t>(depth));
  trace.d1.resize(static_cast<std::size_t>(depth));
  trace.d2.resize(static_cast<std::size_t>(depth));
  trace.pre_jet.resize(static_cast<std::size_t>(depth));

  // Features.
  Eigen::MatrixXd& feat = trace.inputs[0];
  feat.resize(arch.input_dim(), cols);
  const double inv_span = 1.0 / (arch.t_max - arch.t_min);
  const double k = arch.embedding
                       ? 2.0 * std::numbers::pi * arch.embedding->alpha / arch.embedding->domain_length
                       : 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    const double ts = (t[static_cast<std::size_t>(i)] - arch.t_min) * inv_span;
    if (arch.embedding) {
      const double c = std::cos(k * xi);
      const double s = std::sin(k * xi);
      feat(0, i) = c;
      feat(1, i) = s;
      feat(2, i) = ts;
      if (with_jets) {
        feat(0, n + i) = -k * s;
        feat(1, n + i) = k * c;
        feat(2, n + i) = 0.0;
        feat(0, 2 * n + i) = 0.0;
        feat(1, 2 * n + i) = 0.0;
        feat(2, 2 * n + i) = inv_span;
      }
    } else {
      feat(0, i) = xi;
      feat(1, i) = ts;
      if (with_jets) {
        feat(0, n + i) = 1.0;
        feat(1, n + i) = 0.0;
        feat(0, 2 * n + i) = 0.0;
        feat(1, 2 * n + i) = inv_span;
      }
    }
  }

  Eigen::MatrixXd a;
  for (int l = 0; l < depth; ++l) {
    const auto li = static_cast<std::size_t>(l);
    const auto w = params.weight(l);
    const auto b = params.bias(l);
    a.noalias() = w * trace.inputs[li];
    a.leftCols(n).colwise() += b;
    const bool activated = l > 0 && l < depth - 1;
    Eigen::MatrixXd& next = (l + 1 < depth) ? trace.inputs[li + 1] : trace.output;
    if (!activated) {
      next = std::move(a);
      a = Eigen::MatrixXd();
      continue;
    }
    const Eigen::Index rows = a.rows();
    Eigen::MatrixXd& d1 = trace.d1[li];
    Eigen::MatrixXd& d2 = trace.d2[li];
    next.resize(rows, cols);
    d1.resize(rows, n);
    d2.resize(rows, n);
    auto av = a.leftCols(n);
    if (arch.activation == Activation::sin) {
      sincos_n(av.data(), next.data(), d1.data(), av.size());
      d2 = -next.leftCols(n);
    } else {
      fast_tanh(av, next.leftCols(n));
      d1 = 1.0 - next.leftCols(n).array().square();
      d2 = -2.0 * next.leftCols(n).array() * d1.array();
    }
    if (with_jets) {
      Eigen::MatrixXd& pj = trace.pre_jet[li];
      pj = a.rightCols(2 * n);
      next.middleCols(n, n) = d1.array() * pj.leftCols(n).array();
      next.rightCols(n) = d1.array() * pj.rightCols(n).array();
    }
  }
  if (!trace.output.allFinite()) throw NumericalError("network produced a non-finite output");
}

void backward_batch(const NetworkParams& params, const BatchTrace& trace,
                    const Eigen::MatrixXd& output_adjoint, Eigen::Ref<Eigen::VectorXd> grad) {
  const int depth = static_cast<int>(params.sizes.size()) - 1;
  const Eigen::Index n = trace.points;
  const Eigen::Index cols = trace.with_jets ? 3 * n : n;
  if (output_adjoint.rows() != trace.output.rows() || output_adjoint.cols() != cols) {
    throw ConfigError("backward_batch: adjoint shape does not match the trace");
  }
  Eigen::MatrixXd g = output_adjoint;
  Eigen::MatrixXd ga;
  for (int l = depth - 1; l >= 0; --l) {
    const auto li = static_cast<std::size_t>(l);
    const bool activated = l > 0 && l < depth - 1;
    if (activated) {
      const Eigen::MatrixXd& d1 = trace.d1[li];
      const Eigen::MatrixXd& d2 = trace.d2[li];
      ga.resize(g.rows(), cols);
      if (trace.with_jets) {
        const Eigen::MatrixXd& pj = trace.pre_jet[li];
        ga.leftCols(n) = g.leftCols(n).array() * d1.array() +
                         (g.middleCols(n, n).array() * pj.leftCols(n).array() +
                          g.rightCols(n).array() * pj.rightCols(n).array()) *
                             d2.array();
        ga.middleCols(n, n) = g.middleCols(n, n).array() * d1.array();
        ga.rightCols(n) = g.rightCols(n).array() * d1.array();
      } else {
        ga = g.array() * d1.array();
      }
    } else {
      ga = std::move(g);
    }
    const auto rows = params.sizes[li + 1];
    const auto in = params.sizes[li];
    Eigen::Map<Eigen::MatrixXd> gw(grad.data() + params.weight_offset(l), rows, in);
    Eigen::Map<Eigen::VectorXd> gb(grad.data() + params.bias_offset(l), rows);
    gw.noalias() += ga * trace.inputs[li].transpose();
    gb += ga.leftCols(n).rowwise().sum();
    if (l > 0) g.noalias() = params.weight(l).transpose() * ga;
  }
}

std::vector<ad::Jet2> evaluate_point(const NetworkParams& params, const NetworkArch& arch, double x,
                                     double t) {
  BatchTrace tr;
  const double xs[1] = {x};
  const double ts[1] = {t};
  forward_batch(params, arch, xs, ts, true, tr);
  std::vector<ad::Jet2> out;
  for (int k = 0; k < arch.output_dim; ++k) out.emplace_back(tr.value(k, 0), tr.d_x(k, 0), tr.d_t(k, 0));
  return out;
}

}  // namespace apnn
