#include "apnn/loss.hpp"

#include <array>
#include <cmath>

#include "apnn/error.hpp"
#include "apnn/tape.hpp"

namespace apnn {

const char* to_string(ResidualForm f) { return f == ResidualForm::ap ? "ap" : "standard"; }

ResidualForm residual_form_from_string(const std::string& s) {
  if (s == "ap") return ResidualForm::ap;
  if (s == "standard") return ResidualForm::standard;
  throw ConfigError("unknown residual form '" + s + "' (expected ap or standard)");
}

void LossWeights::validate(int state_dim) const {
  const auto n = static_cast<std::size_t>(state_dim);
  if (data.size() != n || boundary.size() != n || residual.size() != n) {
    throw ConfigError("loss weights: expected " + std::to_string(n) + " entries per term");
  }
  bool any_residual = false;
  for (const auto* w : {&data, &boundary, &residual}) {
    for (double v : *w) {
      if (!(std::isfinite(v) && v >= 0.0)) throw ConfigError("loss weights must be finite and >= 0");
    }
  }
  for (double v : residual) any_residual = any_residual || v > 0.0;
  if (!any_residual) throw ConfigError("loss weights: at least one residual weight must be positive");
  if (!(std::isfinite(conservation) && conservation >= 0.0)) {
    throw ConfigError("loss weights: conservation weight must be finite and >= 0");
  }
}

LossInputs training_inputs(const Dataset& d) {
  LossInputs in;
  in.data = &d.data_train;
  in.boundary = &d.boundary;
  in.residual = &d.residual_train;
  in.conservation_times = &d.conservation_times;
  in.quadrature_x = &d.quadrature_x;
  in.quadrature_weight = d.quadrature_weight;
  in.initial_population = d.initial_population;
  return in;
}

LossInputs validation_inputs(const Dataset& d) {
  LossInputs in;
  in.data = &d.data_validation;
  in.residual = &d.residual_validation;
  return in;
}

namespace {

constexpr int kMaxState = 6;

template <class T>
using Residuals = std::array<T, kMaxState>;

/// Residual components at one point from the network output jets `u` and
/// the learnable physical values `phys`.
template <class T, class MakeConst>
Residuals<T> point_residual(const LossProblem& p, const std::array<ad::BasicJet<T>, kMaxState>& u,
                            std::span<const T> phys, double x, MakeConst make_const) {
  Residuals<T> r{};
  if (const auto* gt = std::get_if<GTSpec>(&p.spec)) {
    const GTCoeffs<T> k = gt_coeffs<T>(*gt, phys, x, make_const);
    const auto two = p.form == ResidualForm::ap ? residual_gt_ap<T>(u[0], u[1], k)
                                                : residual_gt_standard<T>(u[0], u[1], k);
    r[0] = two[0];
    r[1] = two[1];
    return r;
  }
  const auto& sir = std::get<SIRSpec>(p.spec);
  const SIRCoeffs<T> k = sir_coeffs<T>(sir, phys, x, make_const);
  return residual_sir_ap<T>(u, k);
}

struct Checked {
  int m = 0;
  bool gt = false;
  bool kinetic = false;
  double eps = 1.0;
  double c = 1.0;
};

Checked check_problem(const LossProblem& p, const NetworkParams& params, const LossInputs& in) {
  Checked ck;
  ck.m = state_dim(p.spec);
  ck.gt = std::holds_alternative<GTSpec>(p.spec);
  ck.kinetic = p.form == ResidualForm::standard;
  if (ck.kinetic && !ck.gt) throw ConfigError("standard residual form is only defined for GT");
  if (ck.gt) {
    ck.eps = std::get<GTSpec>(p.spec).eps;
    ck.c = std::get<GTSpec>(p.spec).c;
  }
  if (p.arch.output_dim != ck.m) {
    throw ConfigError("network output_dim " + std::to_string(p.arch.output_dim) +
                      " does not match the model state dimension " + std::to_string(ck.m));
  }
  params.check_against(p.arch);
  const auto learn = learnable_parameters(p.spec);
  if (learn.size() != params.physical_count()) {
    throw ConfigError("network carries " + std::to_string(params.physical_count()) +
                      " physical parameters, model declares " + std::to_string(learn.size()));
  }
  for (std::size_t k = 0; k < learn.size(); ++k) {
    if (learn[k]->name != params.physical_names[k]) {
      throw ConfigError("physical parameter order mismatch at '" + params.physical_names[k] + "'");
    }
  }
  p.weights.validate(ck.m);
  if (in.residual == nullptr || in.residual->empty()) {
    throw ConfigError("loss: the residual point set is empty");
  }
  for (const PointSet* s : {in.data, in.boundary, in.residual}) {
    if (s == nullptr) continue;
    s->check();
    for (int c : s->components) {
      if (c < 0 || c >= ck.m) throw ConfigError("point set enforces an unknown component");
    }
  }
  return ck;
}

int find_row(const PointSet& s, int comp) {
  for (std::size_t r = 0; r < s.components.size(); ++r) {
    if (s.components[r] == comp) return static_cast<int>(r);
  }
  return -1;
}

/// Weighted MSE of network outputs against a PointSet. `col0` is the first
/// column of this set in the batch. Adds to `terms` and to the adjoint.
void mse_term(const Checked& ck, const PointSet& s, const std::vector<double>& weights,
              bool data_term, const Eigen::MatrixXd& out, Eigen::Index col0,
              std::vector<double>& terms, Eigen::MatrixXd* adj) {
  if (s.empty()) return;
  const double n = static_cast<double>(s.size());
  auto add = [&](int out_row, int term, double w, auto target_of) {
    if (w == 0.0) return;
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto col = col0 + static_cast<Eigen::Index>(i);
      const double diff = out(out_row, col) - target_of(i);
      sum += diff * diff;
      if (adj) (*adj)(out_row, col) += 2.0 * w / n * diff;
    }
    terms[static_cast<std::size_t>(term)] += w * sum / n;
  };
  if (!ck.kinetic) {
    for (std::size_t r = 0; r < s.components.size(); ++r) {
      const int c = s.components[r];
      add(c, c, weights[static_cast<std::size_t>(c)],
          [&](std::size_t i) { return s.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)); });
    }
    return;
  }
  // Kinetic outputs (f+, f-).
  const int r_rho = find_row(s, 0);
  const int r_j = find_row(s, 1);
  if (r_rho >= 0 && r_j >= 0) {
    const double h = ck.eps / ck.c;
    for (int sign : {0, 1}) {
      const double w = data_term ? weights[0] : weights[static_cast<std::size_t>(sign)];
      add(sign, sign, w, [&](std::size_t i) {
        const double rho = s.values(r_rho, static_cast<Eigen::Index>(i));
        const double j = s.values(r_j, static_cast<Eigen::Index>(i));
        return sign == 0 ? 0.5 * (rho + h * j) : 0.5 * (rho - h * j);
      });
    }
    return;
  }
  if (r_rho >= 0) {
    // Density only: rho = f+ + f-.
    const double w = weights[0];
    if (w == 0.0) return;
    double sum = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto col = col0 + static_cast<Eigen::Index>(i);
      const double diff = out(0, col) + out(1, col) - s.values(r_rho, static_cast<Eigen::Index>(i));
      sum += diff * diff;
      if (adj) {
        (*adj)(0, col) += 2.0 * w / n * diff;
        (*adj)(1, col) += 2.0 * w / n * diff;
      }
    }
    terms[0] += w * sum / n;
    return;
  }
  if (!s.components.empty()) throw ConfigError("standard form: flux-only targets are not supported");
}

}  // namespace

LossBreakdown assemble_loss(const LossProblem& problem, const NetworkParams& params,
                            const LossInputs& in, Eigen::VectorXd* grad) {
  const Checked ck = check_problem(problem, params, in);
  const int m = ck.m;
  const auto sm = static_cast<std::size_t>(m);
  const LossWeights& w = problem.weights;
  LossBreakdown br;
  br.data_terms.assign(sm, 0.0);
  br.boundary_terms.assign(sm, 0.0);
  br.residual_terms.assign(sm, 0.0);
  const Eigen::Index n_params = params.values.size();
  const auto n_net = static_cast<Eigen::Index>(params.network_size());
  if (grad) grad->setZero(n_params);

  // ---- value-only points: data, boundary, conservation nodes
  const bool use_cons = w.conservation > 0.0 && in.conservation_times != nullptr &&
                        !in.conservation_times->empty();
  if (use_cons) {
    if (ck.gt) throw ConfigError("conservation loss is only defined for the SIR model");
    if (in.quadrature_x == nullptr || in.quadrature_x->size() < 2) {
      throw ConfigError("conservation loss needs at least 2 quadrature nodes");
    }
  }
  const std::size_t nd = in.data ? in.data->size() : 0;
  const std::size_t nb = in.boundary ? in.boundary->size() : 0;
  const std::size_t nc = use_cons ? in.conservation_times->size() : 0;
  const std::size_t nq = use_cons ? in.quadrature_x->size() : 0;
  const std::size_t n_val = nd + nb + nc * nq;
  if (n_val > 0) {
    std::vector<double> xs;
    std::vector<double> ts;
    xs.reserve(n_val);
    ts.reserve(n_val);
    for (const PointSet* s : {in.data, in.boundary}) {
      if (!s) continue;
      xs.insert(xs.end(), s->x.begin(), s->x.end());
      ts.insert(ts.end(), s->t.begin(), s->t.end());
    }
    for (std::size_t k = 0; k < nc; ++k) {
      for (std::size_t q = 0; q < nq; ++q) {
        xs.push_back((*in.quadrature_x)[q]);
        ts.push_back((*in.conservation_times)[k]);
      }
    }
    BatchTrace trace;
    forward_batch(params, problem.arch, xs, ts, false, trace);
    Eigen::MatrixXd adj;
    if (grad) adj.setZero(m, static_cast<Eigen::Index>(n_val));
    Eigen::MatrixXd* adj_ptr = grad ? &adj : nullptr;
    if (nd > 0) mse_term(ck, *in.data, w.data, true, trace.output, 0, br.data_terms, adj_ptr);
    if (nb > 0) {
      mse_term(ck, *in.boundary, w.boundary, false, trace.output, static_cast<Eigen::Index>(nd),
               br.boundary_terms, adj_ptr);
    }
    if (nc > 0) {
      const double scale = w.conservation / static_cast<double>(nc);
      for (std::size_t k = 0; k < nc; ++k) {
        const auto col0 = static_cast<Eigen::Index>(nd + nb + k * nq);
        double sum = 0.0;
        for (std::size_t q = 0; q < nq; ++q) {
          const auto col = col0 + static_cast<Eigen::Index>(q);
          sum += trace.output(0, col) + trace.output(1, col) + trace.output(2, col);
        }
        const double dev = in.quadrature_weight * sum - in.initial_population;
        br.conservation += scale * dev * dev;
        if (grad) {
          adj.block(0, col0, 3, static_cast<Eigen::Index>(nq)).array() += 2.0 * scale * dev * in.quadrature_weight;
        }
      }
    }
    if (grad) backward_batch(params, trace, adj, grad->head(n_net));
  }

  // ---- residual points (need input jets)
  const PointSet& rs = *in.residual;
  const auto nr = static_cast<Eigen::Index>(rs.size());
  BatchTrace trace;
  forward_batch(params, problem.arch, rs.x, rs.t, true, trace);
  const std::size_t n_phys = params.physical_count();
  std::vector<double> phys_val(n_phys);
  for (std::size_t k = 0; k < n_phys; ++k) phys_val[k] = params.physical(k);
  std::vector<double> rw(sm);
  for (std::size_t c = 0; c < sm; ++c) rw[c] = w.residual[c] / static_cast<double>(nr);

  if (!grad) {
    const auto ident = [](double v) { return v; };
    std::array<ad::Jet2, kMaxState> u{};
    for (Eigen::Index i = 0; i < nr; ++i) {
      for (int c = 0; c < m; ++c) {
        u[static_cast<std::size_t>(c)] = ad::Jet2(trace.value(c, i), trace.d_x(c, i), trace.d_t(c, i));
      }
      const auto r = point_residual<double>(problem, u, phys_val, rs.x[static_cast<std::size_t>(i)], ident);
      for (std::size_t c = 0; c < sm; ++c) br.residual_terms[c] += rw[c] * r[c] * r[c];
    }
  } else {
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(m, 3 * nr);
    ad::Tape tape;
    std::vector<double> adjoints;
    std::vector<ad::Var> phys(n_phys);
    std::array<ad::BasicJet<ad::Var>, kMaxState> u{};
    const auto make_const = [&tape](double v) { return tape.constant(v); };
    for (Eigen::Index i = 0; i < nr; ++i) {
      tape.clear();
      for (int c = 0; c < m; ++c) {
        const ad::Var v = tape.leaf(trace.value(c, i));
        const ad::Var dx = tape.leaf(trace.d_x(c, i));
        const ad::Var dt = tape.leaf(trace.d_t(c, i));
        u[static_cast<std::size_t>(c)] = ad::BasicJet<ad::Var>(v, dx, dt);
      }
      for (std::size_t k = 0; k < n_phys; ++k) phys[k] = tape.leaf(phys_val[k]);
      const auto r = point_residual<ad::Var>(problem, u, std::span<const ad::Var>(phys),
                                         rs.x[static_cast<std::size_t>(i)], make_const);
      ad::Var total = tape.constant(0.0);
      for (std::size_t c = 0; c < sm; ++c) {
        if (rw[c] == 0.0) continue;
        const double rv = r[c].value();
        br.residual_terms[c] += rw[c] * rv * rv;
        total = total + rw[c] * (r[c] * r[c]);
      }
      tape.backward(total, adjoints);
      // Leaves were pushed first, in a known order: 3 per component, then phys.
      for (int c = 0; c < m; ++c) {
        const auto base = static_cast<std::size_t>(3 * c);
        adj(c, i) = adjoints[base];
        adj(c, nr + i) = adjoints[base + 1];
        adj(c, 2 * nr + i) = adjoints[base + 2];
      }
      for (std::size_t k = 0; k < n_phys; ++k) {
        (*grad)[n_net + static_cast<Eigen::Index>(k)] += adjoints[static_cast<std::size_t>(phys[k].index())];
      }
    }
    backward_batch(params, trace, adj, grad->head(n_net));
  }

  for (std::size_t c = 0; c < sm; ++c) {
    br.data += br.data_terms[c];
    br.boundary += br.boundary_terms[c];
    br.residual += br.residual_terms[c];
  }
  br.total = br.data + br.boundary + br.residual + br.conservation;
  if (grad) {
    for (Eigen::Index k = 0; k < n_params; ++k) {
      if (!std::isfinite((*grad)[k])) {
        throw NumericalError("loss gradient is not finite (component " + std::to_string(k) + ")");
      }
    }
  }
  return br;
}

LossBreakdown assemble_loss_gt(const LossProblem& problem, const NetworkParams& params,
                               const LossInputs& inputs, Eigen::VectorXd* grad) {
  if (!std::holds_alternative<GTSpec>(problem.spec)) throw ConfigError("assemble_loss_gt: not a GT model");
  return assemble_loss(problem, params, inputs, grad);
}

LossBreakdown assemble_loss_sir(const LossProblem& problem, const NetworkParams& params,
                                const LossInputs& inputs, Eigen::VectorXd* grad) {
  if (!std::holds_alternative<SIRSpec>(problem.spec)) throw ConfigError("assemble_loss_sir: not a SIR model");
  return assemble_loss(problem, params, inputs, grad);
}

Eigen::MatrixXd predict_macro(const LossProblem& problem, const NetworkParams& params,
                              std::span<const double> x, std::span<const double> t) {
  BatchTrace trace;
  forward_batch(params, problem.arch, x, t, false, trace);
  Eigen::MatrixXd out = trace.output;
  if (problem.form == ResidualForm::standard) {
    const auto& gt = std::get<GTSpec>(problem.spec);
    for (Eigen::Index i = 0; i < out.cols(); ++i) {
      const auto macro = to_macro(trace.output(0, i), trace.output(1, i), gt.eps, gt.c);
      out(0, i) = macro[0];
      out(1, i) = macro[1];
    }
  }
  return out;
}

}  // namespace apnn
