#include "apnn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apnn/error.hpp"
#include "apnn/rng.hpp"

namespace apnn {

const char* to_string(DataSampling s) {
  switch (s) {
    case DataSampling::none: return "none";
    case DataSampling::lattice: return "lattice";
    case DataSampling::importance: return "importance";
  }
  return "none";
}

DataSampling data_sampling_from_string(const std::string& s) {
  if (s == "none") return DataSampling::none;
  if (s == "lattice") return DataSampling::lattice;
  if (s == "importance") return DataSampling::importance;
  throw ConfigError("unknown data sampling '" + s + "'");
}

std::uint64_t stream_seed(std::uint64_t seed, SeedStream s) {
  return mix_seed(seed, static_cast<std::uint64_t>(s));
}

void ScenarioConfig::validate() const {
  if (schema_version != kScenarioSchemaVersion) {
    throw ConfigError("scenario schema version " + std::to_string(schema_version) + " is not supported");
  }
  if (name.empty()) throw ConfigError("scenario needs a name");
  std::visit([](const auto& s) { s.validate(); }, model);
  if (!(x_max > x_min)) throw ConfigError("scenario domain needs x_max > x_min");
  if (!(t_end > 0.0)) throw ConfigError("scenario horizon must be positive");
  arch.validate();
  const int m = state_dim(model);
  if (arch.output_dim != m) throw ConfigError("network output_dim does not match the model");
  if (arch.embedding && std::abs(arch.embedding->domain_length - domain_length()) > 1e-12) {
    throw ConfigError("embedding domain length differs from the scenario domain");
  }
  weights.validate(m);
  train.validate();
  if (residual == ResidualForm::standard && !std::holds_alternative<GTSpec>(model)) {
    throw ConfigError("standard residual form is only available for GT scenarios");
  }
  for (const Parameter* p : learnable_parameters(model)) {
    if (!std::isfinite(p->initial_guess)) throw ConfigError("learnable " + p->name + " needs an initial guess");
  }
  if (plan.n_residual < 1) throw ConfigError("scenario needs residual points");
  if (plan.sampling != DataSampling::none && plan.n_data < 1) throw ConfigError("data sampling without points");
  if (plan.t_train && !(*plan.t_train > 0.0 && *plan.t_train <= t_end)) {
    throw ConfigError("t_train must lie in (0, t_end]");
  }
  for (const auto* comps : {&plan.data_components, &plan.boundary_components}) {
    for (int c : *comps) {
      if (c < 0 || c >= m) throw ConfigError("dataset plan names an unknown component");
    }
  }
  if (std::holds_alternative<SIRSpec>(model)) {
    for (int c : plan.data_components) {
      if (c >= 3) throw ConfigError("SIR measurements cannot include fluxes");
    }
  }
  if (plan.sampling == DataSampling::importance && !std::holds_alternative<SIRSpec>(model)) {
    throw ConfigError("importance sampling needs an infected compartment");
  }
  if (plan.n_conservation > 0 && plan.n_quadrature < 2) {
    throw ConfigError("conservation needs at least 2 quadrature nodes");
  }
  if (!(plan.lattice_aspect > 0.0)) throw ConfigError("lattice aspect must be positive");
  if (truth.cells < 4 || truth.time_levels < 2 || truth.table_nx < 2 || truth.table_nt < 2) {
    throw ConfigError("truth grid is too small");
  }
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

Parameter learnable(const char* name, double truth, double guess) {
  return Parameter{name, truth, true, guess};
}

NetworkArch make_arch(int outputs, Activation act, double alpha, double length, double t_end) {
  NetworkArch a;
  a.depth = 8;
  a.width = 32;
  a.output_dim = outputs;
  a.activation = act;
  a.embedding = PeriodicEmbedding{alpha, length};
  a.t_min = 0.0;
  a.t_max = t_end;
  return a;
}

ScenarioConfig gt_scenario(std::string name, std::string description, const GTSpec& spec,
                           double t_end, const InitialCondition& ic, double alpha) {
  ScenarioConfig s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.model = spec;
  s.x_min = -1.0;
  s.x_max = 1.0;
  s.t_end = t_end;
  s.ic = ic;
  s.arch = make_arch(2, Activation::sin, alpha, 2.0, t_end);
  s.weights.data = {100.0, 0.0};
  s.weights.boundary = {1.0, 1.0};
  s.weights.residual = {1.0, 1.0};
  s.plan.data_components = {0};
  s.plan.boundary_components = {0, 1};
  s.plan.n_boundary = 200;
  s.train.learning_rate = 1e-2;
  return s;
}

InitialCondition sir_hotspots(std::vector<Hotspot> spots) {
  InitialCondition ic;
  ic.kind = InitialCondition::Kind::hotspots;
  ic.hotspots = std::move(spots);
  return ic;
}

ScenarioConfig sir_scenario(std::string name, std::string description, const SIRSpec& spec,
                            double t_end, const InitialCondition& ic) {
  ScenarioConfig s;
  s.name = std::move(name);
  s.description = std::move(description);
  s.model = spec;
  s.x_min = 0.0;
  s.x_max = 20.0;
  s.t_end = t_end;
  s.ic = ic;
  s.arch = make_arch(6, Activation::tanh, 1.0, 20.0, t_end);
  s.plan.data_components = {0, 1, 2};
  s.weights.conservation = 1.0;
  return s;
}

SIRSpec sir_spec(double lambda2, double tau) {
  SIRSpec s;
  const double lambda = std::sqrt(lambda2);
  s.lambda = {lambda, lambda, lambda};
  s.tau = {tau, tau, tau};
  return s;
}

void inference(ScenarioConfig& s, std::size_t n_data) {
  s.plan.sampling = DataSampling::importance;
  s.plan.n_data = n_data;
}

void forecast(ScenarioConfig& s, std::size_t n_data, double t_train) {
  s.plan.sampling = DataSampling::lattice;
  s.plan.n_data = n_data;
  s.plan.t_train = t_train;
}

std::vector<ScenarioConfig> build_catalog() {
  std::vector<ScenarioConfig> out;

  // Test 1: GT, diffusive regime.
  {
    GTSpec gt;
    gt.eps = 1e-4;
    gt.c = 1.0;
    gt.sigma = learnable("sigma", 4.0, 2.0);
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::cosine;
    ic.mean = 6.0;
    ic.amplitude = 3.0;
    ic.wavenumber = 3.0;
    ScenarioConfig inv = gt_scenario("test1-inverse", "GT, eps=1e-4: infer sigma from density data",
                                     gt, 0.1, ic, 3.0);
    inv.plan.sampling = DataSampling::lattice;
    inv.plan.n_data = 24000;
    inv.plan.n_residual = 24000;
    inv.train.epochs = 20000;
    out.push_back(inv);

    ScenarioConfig fwd = inv;
    fwd.name = "test1-forward";
    fwd.description = "GT, eps=1e-4: forward problem from initial data";
    auto& spec = std::get<GTSpec>(fwd.model);
    spec.sigma.learnable = false;
    fwd.plan.sampling = DataSampling::none;
    fwd.plan.n_data = 0;
    fwd.plan.data_components.clear();
    out.push_back(fwd);
  }

  // Test 2: GT with source kappa(x) = kappa0 + kappa1 sin(kappa2 pi x).
  {
    GTSpec gt;
    gt.c = 1.0;
    gt.sigma = Parameter{"sigma", 1.0, false, 1.0};
    gt.source = true;
    gt.kappa0 = learnable("kappa0", 0.0, 0.5);
    gt.kappa1 = learnable("kappa1", 3.0, 2.0);
    gt.kappa2 = learnable("kappa2", 4.0, 3.0);
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::gaussian;
    ic.mean = 1.0;
    ic.amplitude = 0.5;
    ic.rate = 10.0;

    gt.eps = 1e-5;
    ScenarioConfig a = gt_scenario("test2a", "GT with source, eps=1e-5: infer kappa", gt, 0.1, ic, 1.0);
    a.plan.sampling = DataSampling::lattice;
    a.plan.n_data = 12000;
    a.plan.n_residual = 12000;
    a.train.epochs = 40000;
    out.push_back(a);

    gt.eps = 1.0;
    ScenarioConfig b = gt_scenario("test2b", "GT with source, eps=1: infer kappa", gt, 0.5, ic, 1.0);
    b.plan.sampling = DataSampling::lattice;
    b.plan.n_data = 16800;
    b.plan.n_residual = 16800;
    b.train.epochs = 12000;
    out.push_back(b);
  }

  // Test 3: SIR, constant beta and gamma, two hot-spots.
  {
    const InitialCondition ic = sir_hotspots({{5.0, 0.01}, {15.0, 1e-4}});
    auto test3 = [&](const char* name, const char* desc, double lambda2, double tau, double t_end,
                     std::size_t n_residual, std::vector<double> w_res, double lr) {
      SIRSpec spec = sir_spec(lambda2, tau);
      spec.beta = learnable("beta", 12.0, 8.0);
      spec.gamma = learnable("gamma", 6.0, 3.0);
      ScenarioConfig s = sir_scenario(name, desc, spec, t_end, ic);
      s.weights.data = {1.0, 100.0, 10.0, 0.0, 0.0, 0.0};
      s.weights.boundary = {1.0, 10.0, 1.0, 0.0, 0.0, 0.0};
      s.weights.residual = std::move(w_res);
      s.plan.boundary_components = {0, 1, 2};
      s.plan.n_boundary = 200;
      s.plan.n_conservation = 47;
      s.plan.n_residual = n_residual;
      s.train.learning_rate = lr;
      s.train.epochs = 20000;
      return s;
    };
    const std::vector<double> w_a{1, 10, 1, 1, 10, 1};
    const std::vector<double> w_b{1, 100, 10, 1, 100, 10};

    ScenarioConfig s = test3("test3a-inference", "SIR diffusive: infer beta, gamma from 20 samples",
                             1e3, 1e-3, 4.0, 40000, w_a, 1e-3);
    inference(s, 20);
    out.push_back(s);
    s = test3("test3a-forecast", "SIR diffusive: forecast from data on [0, 1.5]", 1e3, 1e-3, 4.0,
              40000, w_a, 1e-3);
    forecast(s, 5300, 1.5);
    out.push_back(s);
    s = test3("test3b-inference", "SIR hyperbolic: infer beta, gamma from 20 samples", 1.0, 1.0,
              5.0, 23600, w_b, 1e-2);
    inference(s, 20);
    out.push_back(s);
    s = test3("test3b-forecast-1.5", "SIR hyperbolic: forecast from data on [0, 1.5]", 1.0, 1.0,
              5.0, 23600, w_b, 1e-2);
    forecast(s, 5000, 1.5);
    out.push_back(s);
    s = test3("test3b-forecast-2.5", "SIR hyperbolic: forecast from data on [0, 2.5]", 1.0, 1.0,
              5.0, 23600, w_b, 1e-2);
    forecast(s, 8500, 2.5);
    out.push_back(s);
  }

  // Test 4: SIR with beta(x) = beta0 + beta1 sin(zeta pi x), three hot-spots.
  {
    const InitialCondition ic =
        sir_hotspots({{10.0 / 3.0, 0.01}, {10.0, 0.001}, {50.0 / 3.0, 0.004}});
    auto test4 = [&](const char* name, const char* desc, double lambda2, double tau,
                     std::size_t n_residual, std::size_t n_boundary, std::size_t n_cons) {
      SIRSpec spec = sir_spec(lambda2, tau);
      spec.spatial_beta = true;
      spec.beta = Parameter{"beta", 9.0, false, 9.0};
      spec.beta0 = learnable("beta0", 9.0, 5.0);
      spec.beta1 = learnable("beta1", 2.5, 1.5);
      spec.zeta = learnable("zeta", 0.55, 0.5);
      spec.gamma = Parameter{"gamma", 8.0, false, 8.0};
      ScenarioConfig s = sir_scenario(name, desc, spec, 5.0, ic);
      s.weights.data = {1.0, 1000.0, 100.0, 0.0, 0.0, 0.0};
      s.weights.boundary = {1.0, 1000.0, 100.0, 1.0, 10.0, 1.0};
      s.weights.residual = {1.0, 1000.0, 100.0, 1.0, 10.0, 1.0};
      s.plan.boundary_components = {0, 1, 2, 3, 4, 5};
      s.plan.n_boundary = n_boundary;
      s.plan.n_conservation = n_cons;
      s.plan.n_residual = n_residual;
      s.train.learning_rate = 1e-3;
      s.train.epochs = 150000;
      return s;
    };
    ScenarioConfig s = test4("test4a-inference", "SIR diffusive, spatial beta: infer beta0, beta1, zeta",
                             1e5, 1e-5, 10100, 200, 235);
    inference(s, 1000);
    out.push_back(s);
    s = test4("test4a-forecast", "SIR diffusive, spatial beta: forecast from data on [0, 2.5]", 1e5,
              1e-5, 10100, 200, 235);
    forecast(s, 10100, 2.5);
    out.push_back(s);
    s = test4("test4b-inference", "SIR hyperbolic, spatial beta: infer beta0, beta1, zeta", 1.0, 1.0,
              23500, 600, 47);
    inference(s, 1000);
    out.push_back(s);
    s = test4("test4b-forecast", "SIR hyperbolic, spatial beta: forecast from data on [0, 2.5]", 1.0,
              1.0, 23500, 600, 47);
    forecast(s, 8400, 2.5);
    out.push_back(s);
  }
  for (const auto& s : out) s.validate();
  return out;
}

}  // namespace

const std::vector<ScenarioConfig>& catalog() {
  static const std::vector<ScenarioConfig> scenarios = build_catalog();
  return scenarios;
}

ScenarioConfig find_scenario(const std::string& name) {
  for (const auto& s : catalog()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "' (see `apnn list`)");
}

ScenarioConfig apply_scale(ScenarioConfig cfg, double s) {
  if (!(s > 0.0 && std::isfinite(s))) throw ConfigError("scale must be positive");
  auto scaled = [s](std::size_t n) -> std::size_t {
    if (n == 0) return 0;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * s)));
  };
  cfg.plan.n_data = scaled(cfg.plan.n_data);
  cfg.plan.n_residual = scaled(cfg.plan.n_residual);
  cfg.plan.n_boundary = scaled(cfg.plan.n_boundary);
  cfg.plan.n_conservation = scaled(cfg.plan.n_conservation);
  cfg.train.epochs = static_cast<int>(scaled(static_cast<std::size_t>(cfg.train.epochs)));
  return cfg;
}

ScenarioConfig with_residual_form(ScenarioConfig cfg, ResidualForm form) {
  cfg.residual = form;
  if (form == ResidualForm::standard) {
    if (!std::holds_alternative<GTSpec>(cfg.model)) {
      throw ConfigError("standard residual form is only available for GT scenarios");
    }
    if (cfg.plan.sampling != DataSampling::none) cfg.plan.data_components = {0, 1};
    cfg.plan.boundary_components = {0, 1};
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Initial data

namespace {

/// Density value and x-derivative.
std::array<double, 2> gt_density(const InitialCondition& ic, double x) {
  switch (ic.kind) {
    case InitialCondition::Kind::cosine: {
      const double k = ic.wavenumber * std::numbers::pi;
      return {ic.mean + ic.amplitude * std::cos(k * x), -ic.amplitude * k * std::sin(k * x)};
    }
    case InitialCondition::Kind::gaussian: {
      const double g = ic.amplitude * std::exp(-ic.rate * x * x);
      return {ic.mean + g, -2.0 * ic.rate * x * g};
    }
    case InitialCondition::Kind::hotspots: break;
  }
  throw ConfigError("GT scenario needs a cosine or gaussian initial condition");
}

std::array<double, 2> infected(const InitialCondition& ic, double x) {
  if (ic.kind != InitialCondition::Kind::hotspots) {
    throw ConfigError("SIR scenario needs a hotspots initial condition");
  }
  double v = 0.0;
  double d = 0.0;
  for (const Hotspot& h : ic.hotspots) {
    const double g = h.amplitude * std::exp(-(x - h.center) * (x - h.center));
    v += g;
    d += -2.0 * (x - h.center) * g;
  }
  return {v, d};
}

}  // namespace

double initial_value(const ScenarioConfig& cfg, int comp, double x) {
  if (const auto* gt = std::get_if<GTSpec>(&cfg.model)) {
    const auto rho = gt_density(cfg.ic, x);
    if (comp == 0) return rho[0];
    if (comp == 1) return -gt->diffusion() * rho[1];
    throw ConfigError("GT has two components");
  }
  const auto& sir = std::get<SIRSpec>(cfg.model);
  const auto I = infected(cfg.ic, x);
  switch (comp) {
    case 0: return 1.0 - I[0];
    case 1: return I[0];
    case 2: return 0.0;
    case 3: return sir.diffusion(0) * I[1];  // S_x = -I_x
    case 4: return -sir.diffusion(1) * I[1];
    case 5: return 0.0;
    default: throw ConfigError("SIR has six components");
  }
}

NetworkParams initial_params(const ScenarioConfig& cfg, std::uint64_t seed) {
  std::vector<NamedValue> phys;
  for (const Parameter* p : learnable_parameters(cfg.model)) phys.push_back({p->name, p->initial_guess});
  NetworkArch arch = cfg.arch;
  return init_params(arch, stream_seed(seed, SeedStream::network), phys);
}

Trajectory generate_ground_truth(const ScenarioConfig& cfg) {
  cfg.validate();
  const Grid1D grid{cfg.x_min, cfg.x_max, cfg.truth.cells};
  const int m = state_dim(cfg.model);
  Eigen::MatrixXd init(m, grid.cells);
  for (int c = 0; c < m; ++c) {
    init.row(c) = cell_averages([&](double x) { return initial_value(cfg, c, x); }, grid).transpose();
  }
  std::vector<double> times(static_cast<std::size_t>(cfg.truth.time_levels));
  const double denom = static_cast<double>(cfg.truth.time_levels - 1);
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = static_cast<double>(k) * cfg.t_end / denom;
  return imex_fv_solve(cfg.model, grid, init, times, cfg.truth.solver);
}

std::vector<double> report_x(const ScenarioConfig& cfg) {
  std::vector<double> x(static_cast<std::size_t>(cfg.truth.table_nx));
  const double h = cfg.domain_length() / static_cast<double>(cfg.truth.table_nx);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = cfg.x_min + static_cast<double>(i) * h;
  return x;
}

std::vector<double> report_t(const ScenarioConfig& cfg) {
  std::vector<double> t(static_cast<std::size_t>(cfg.truth.table_nt));
  const double denom = static_cast<double>(cfg.truth.table_nt - 1);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k) * cfg.t_end / denom;
  return t;
}

FieldTable truth_table(const ScenarioConfig& cfg, const Trajectory& traj, int comp) {
  FieldTable table;
  table.x = report_x(cfg);
  table.t = report_t(cfg);
  table.values.resize(static_cast<Eigen::Index>(table.t.size()), static_cast<Eigen::Index>(table.x.size()));
  for (std::size_t k = 0; k < table.t.size(); ++k) {
    for (std::size_t i = 0; i < table.x.size(); ++i) {
      table.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
          traj.point_value(comp, table.x[i], table.t[k]);
    }
  }
  return table;
}

Dataset build_dataset(const ScenarioConfig& cfg, const Trajectory& traj) {
  cfg.validate();
  const DatasetPlan& plan = cfg.plan;
  const std::uint64_t seed = cfg.train.seed;
  if (traj.times.empty() || traj.times.back() < cfg.t_end * (1.0 - 1e-12)) {
    throw ConfigError("trajectory does not cover the scenario horizon");
  }
  Dataset d;
  const double t_data = plan.t_train.value_or(cfg.t_end);

  // Measurements.
  PointSet data;
  if (plan.sampling == DataSampling::lattice) {
    const auto [nx, nt] = lattice_shape(plan.n_data, plan.lattice_aspect);
    if (nx > static_cast<std::size_t>(cfg.truth.cells) || nt > static_cast<std::size_t>(cfg.truth.time_levels)) {
      throw ConfigError("data lattice " + std::to_string(nx) + "x" + std::to_string(nt) +
                        " exceeds the truth resolution");
    }
    data = uniform_lattice(cfg.x_min, cfg.x_max, 0.0, t_data, nx, nt);
  } else if (plan.sampling == DataSampling::importance) {
    FieldTable table = truth_table(cfg, traj, 1);
    Eigen::Index rows = 0;
    while (rows < static_cast<Eigen::Index>(table.t.size()) &&
           table.t[static_cast<std::size_t>(rows)] <= t_data * (1.0 + 1e-12)) {
      ++rows;
    }
    table.t.resize(static_cast<std::size_t>(rows));
    table.values.conservativeResize(rows, Eigen::NoChange);
    // Round-off negatives of the solver are not probabilities.
    for (Eigen::Index k = 0; k < table.values.size(); ++k) {
      double& v = table.values.data()[k];
      if (v < 0.0 && v > -1e-12) v = 0.0;
    }
    data = importance_sample(table, plan.n_data, stream_seed(seed, SeedStream::data));
  }
  if (!data.empty()) {
    data.components = plan.data_components;
    data.values.resize(static_cast<Eigen::Index>(data.components.size()), static_cast<Eigen::Index>(data.size()));
    for (std::size_t r = 0; r < data.components.size(); ++r) {
      for (std::size_t i = 0; i < data.size(); ++i) {
        data.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
            traj.point_value(data.components[r], data.x[i], data.t[i]);
      }
    }
    const SplitIndices split =
        split_validation(data.size(), cfg.train.validation_fraction, stream_seed(seed, SeedStream::data_split));
    d.data_train = data.subset(split.train);
    d.data_validation = data.subset(split.validation);
    d.data_validation_index = split.validation;
  }

  // Residual collocation points.
  PointSet res = uniform_random(cfg.x_min, cfg.x_max, 0.0, cfg.t_end, plan.n_residual,
                                stream_seed(seed, SeedStream::residual));
  const SplitIndices rsplit = split_validation(res.size(), cfg.train.validation_fraction,
                                               stream_seed(seed, SeedStream::residual_split));
  d.residual_train = res.subset(rsplit.train);
  d.residual_validation = res.subset(rsplit.validation);
  d.residual_validation_index = rsplit.validation;

  // Initial data at t = 0, equally spaced.
  if (plan.n_boundary > 0 && !plan.boundary_components.empty()) {
    PointSet& b = d.boundary;
    const double h = cfg.domain_length() / static_cast<double>(plan.n_boundary);
    b.components = plan.boundary_components;
    b.values.resize(static_cast<Eigen::Index>(b.components.size()), static_cast<Eigen::Index>(plan.n_boundary));
    for (std::size_t k = 0; k < plan.n_boundary; ++k) {
      const double x = cfg.x_min + static_cast<double>(k) * h;
      b.x.push_back(x);
      b.t.push_back(0.0);
      for (std::size_t r = 0; r < b.components.size(); ++r) {
        b.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = initial_value(cfg, b.components[r], x);
      }
    }
  }

  // Conservation levels and quadrature nodes.
  if (plan.n_conservation > 0 && std::holds_alternative<SIRSpec>(cfg.model)) {
    const std::size_t nc = plan.n_conservation;
    for (std::size_t k = 0; k < nc; ++k) {
      d.conservation_times.push_back(nc == 1 ? 0.0
                                             : cfg.t_end * static_cast<double>(k) / static_cast<double>(nc - 1));
    }
    const double h = cfg.domain_length() / static_cast<double>(plan.n_quadrature);
    double p0 = 0.0;
    for (std::size_t q = 0; q < plan.n_quadrature; ++q) {
      const double x = cfg.x_min + static_cast<double>(q) * h;
      d.quadrature_x.push_back(x);
      p0 += initial_value(cfg, 0, x) + initial_value(cfg, 1, x) + initial_value(cfg, 2, x);
    }
    d.quadrature_weight = h;
    d.initial_population = h * p0;
  }
  return d;
}

}  // namespace apnn
