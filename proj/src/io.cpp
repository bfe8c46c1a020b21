#include "apnn/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "apnn/error.hpp"

namespace apnn {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void check_format(const json& j, const char* format) {
  if (!j.is_object() || j.value("format", std::string()) != format) {
    throw IoError(std::string("not an ") + format + " document");
  }
  const int version = j.value("schema_version", -1);
  if (version != kFileSchemaVersion) {
    throw IoError(std::string(format) + ": unsupported schema version " + std::to_string(version));
  }
}

json header(const char* format) { return json{{"format", format}, {"schema_version", kFileSchemaVersion}}; }

// NaN and infinities have no JSON literal.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json parameter_to_json(const Parameter& p) {
  return {{"name", p.name}, {"value", p.value}, {"learnable", p.learnable}, {"initial_guess", p.initial_guess}};
}

Parameter parameter_from_json(const json& j) {
  return Parameter{j.at("name").get<std::string>(), j.at("value").get<double>(), j.at("learnable").get<bool>(),
                   j.at("initial_guess").get<double>()};
}

json points_meta(const PointSet& p) { return {{"size", p.size()}, {"components", p.components}}; }

const char* ic_kind_name(InitialCondition::Kind k) {
  switch (k) {
    case InitialCondition::Kind::cosine: return "cosine";
    case InitialCondition::Kind::gaussian: return "gaussian";
    case InitialCondition::Kind::hotspots: return "hotspots";
  }
  return "cosine";
}

InitialCondition::Kind ic_kind_from(const std::string& s) {
  if (s == "cosine") return InitialCondition::Kind::cosine;
  if (s == "gaussian") return InitialCondition::Kind::gaussian;
  if (s == "hotspots") return InitialCondition::Kind::hotspots;
  throw ConfigError("unknown initial condition kind '" + s + "'");
}

template <class F>
auto wrap_parse(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw IoError(what + ": " + e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path, std::size_t expected_cols) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw IoError(path + ": malformed number '" + cell + "'");
      row.push_back(v);
    }
    if (row.size() != expected_cols) throw IoError(path + ": wrong column count");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return wrap_parse(path, [&] { return json::parse(in); });
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& head,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t k = 0; k < head.size(); ++k) out << (k ? "," : "") << head[k];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------

json arch_to_json(const NetworkArch& a) {
  json j{{"depth", a.depth},         {"width", a.width}, {"output_dim", a.output_dim},
         {"activation", to_string(a.activation)},
         {"t_min", a.t_min},         {"t_max", a.t_max}, {"sine_omega0", a.sine_omega0}};
  if (a.embedding) {
    j["embedding"] = {{"alpha", a.embedding->alpha}, {"domain_length", a.embedding->domain_length}};
  } else {
    j["embedding"] = nullptr;
  }
  return j;
}

NetworkArch arch_from_json(const json& j) {
  NetworkArch a;
  a.depth = j.at("depth").get<int>();
  a.width = j.at("width").get<int>();
  a.output_dim = j.at("output_dim").get<int>();
  a.activation = activation_from_string(j.at("activation").get<std::string>());
  a.t_min = j.at("t_min").get<double>();
  a.t_max = j.at("t_max").get<double>();
  a.sine_omega0 = j.at("sine_omega0").get<double>();
  const json& e = j.at("embedding");
  if (!e.is_null()) a.embedding = PeriodicEmbedding{e.at("alpha").get<double>(), e.at("domain_length").get<double>()};
  return a;
}

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  json j = header("apnn-checkpoint");
  j["arch"] = arch_to_json(ck.arch);
  j["sizes"] = ck.params.sizes;
  j["values"] = std::vector<double>(ck.params.values.data(), ck.params.values.data() + ck.params.values.size());
  j["physical_names"] = ck.params.physical_names;
  j["seed"] = ck.seed;
  j["epoch"] = ck.epoch;
  write_json(path, j);
}

Checkpoint load_checkpoint(const std::string& path) {
  const json j = read_json(path);
  check_format(j, "apnn-checkpoint");
  Checkpoint ck = wrap_parse(path, [&] {
    Checkpoint c;
    c.arch = arch_from_json(j.at("arch"));
    c.params.sizes = j.at("sizes").get<std::vector<int>>();
    const auto v = j.at("values").get<std::vector<double>>();
    c.params.values = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    c.params.physical_names = j.at("physical_names").get<std::vector<std::string>>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.epoch = j.at("epoch").get<int>();
    return c;
  });
  ck.arch.validate();
  ck.params.check_against(ck.arch);
  return ck;
}

// ---------------------------------------------------------------------------

json model_to_json(const ModelSpec& spec) {
  if (const auto* gt = std::get_if<GTSpec>(&spec)) {
    return {{"type", "GT"},
            {"eps", gt->eps},
            {"c", gt->c},
            {"sigma", parameter_to_json(gt->sigma)},
            {"source", gt->source},
            {"kappa0", parameter_to_json(gt->kappa0)},
            {"kappa1", parameter_to_json(gt->kappa1)},
            {"kappa2", parameter_to_json(gt->kappa2)}};
  }
  const auto& s = std::get<SIRSpec>(spec);
  return {{"type", "SIR"},
          {"tau", s.tau},
          {"lambda", s.lambda},
          {"spatial_beta", s.spatial_beta},
          {"beta", parameter_to_json(s.beta)},
          {"beta0", parameter_to_json(s.beta0)},
          {"beta1", parameter_to_json(s.beta1)},
          {"zeta", parameter_to_json(s.zeta)},
          {"gamma", parameter_to_json(s.gamma)}};
}

ModelSpec model_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "GT") {
    GTSpec gt;
    gt.eps = j.at("eps").get<double>();
    gt.c = j.at("c").get<double>();
    gt.sigma = parameter_from_json(j.at("sigma"));
    gt.source = j.at("source").get<bool>();
    gt.kappa0 = parameter_from_json(j.at("kappa0"));
    gt.kappa1 = parameter_from_json(j.at("kappa1"));
    gt.kappa2 = parameter_from_json(j.at("kappa2"));
    return gt;
  }
  if (type == "SIR") {
    SIRSpec s;
    s.tau = j.at("tau").get<std::array<double, 3>>();
    s.lambda = j.at("lambda").get<std::array<double, 3>>();
    s.spatial_beta = j.at("spatial_beta").get<bool>();
    s.beta = parameter_from_json(j.at("beta"));
    s.beta0 = parameter_from_json(j.at("beta0"));
    s.beta1 = parameter_from_json(j.at("beta1"));
    s.zeta = parameter_from_json(j.at("zeta"));
    s.gamma = parameter_from_json(j.at("gamma"));
    return s;
  }
  throw ConfigError("unknown model type '" + type + "'");
}

json scenario_to_json(const ScenarioConfig& c) {
  json j = header("apnn-scenario");
  j["scenario_schema_version"] = c.schema_version;
  j["name"] = c.name;
  j["description"] = c.description;
  j["model"] = model_to_json(c.model);
  j["domain"] = {c.x_min, c.x_max};
  j["t_end"] = c.t_end;
  json spots = json::array();
  for (const Hotspot& h : c.ic.hotspots) spots.push_back({{"center", h.center}, {"amplitude", h.amplitude}});
  j["initial_condition"] = {{"kind", ic_kind_name(c.ic.kind)}, {"mean", c.ic.mean},
                            {"amplitude", c.ic.amplitude},     {"wavenumber", c.ic.wavenumber},
                            {"rate", c.ic.rate},               {"hotspots", spots}};
  const DatasetPlan& p = c.plan;
  j["plan"] = {{"sampling", to_string(p.sampling)},
               {"n_data", p.n_data},
               {"n_residual", p.n_residual},
               {"n_boundary", p.n_boundary},
               {"n_conservation", p.n_conservation},
               {"n_quadrature", p.n_quadrature},
               {"data_components", p.data_components},
               {"boundary_components", p.boundary_components},
               {"t_train", p.t_train ? json(*p.t_train) : json(nullptr)},
               {"lattice_aspect", p.lattice_aspect}};
  j["arch"] = arch_to_json(c.arch);
  j["weights"] = {{"data", c.weights.data},
                  {"boundary", c.weights.boundary},
                  {"residual", c.weights.residual},
                  {"conservation", c.weights.conservation}};
  const TrainConfig& t = c.train;
  j["train"] = {{"learning_rate", t.learning_rate}, {"epochs", t.epochs},   {"validation_fraction", t.validation_fraction},
                {"patience", t.patience},           {"min_delta", t.min_delta}, {"seed", t.seed},
                {"beta1", t.beta1},                 {"beta2", t.beta2},     {"adam_eps", t.adam_eps},
                {"log_stride", t.log_stride},       {"max_grad_norm", t.max_grad_norm}};
  j["residual_form"] = to_string(c.residual);
  const TruthConfig& tr = c.truth;
  j["truth"] = {{"cells", tr.cells},
                {"time_levels", tr.time_levels},
                {"table_nx", tr.table_nx},
                {"table_nt", tr.table_nt},
                {"solver",
                 {{"cfl_hyperbolic", tr.solver.cfl_hyperbolic},
                  {"cfl_parabolic", tr.solver.cfl_parabolic},
                  {"reaction_cfl", tr.solver.reaction_cfl},
                  {"reference_speed", tr.solver.reference_speed},
                  {"min_dt", tr.solver.min_dt}}}};
  return j;
}

ScenarioConfig scenario_from_json(const json& j) {
  check_format(j, "apnn-scenario");
  ScenarioConfig c = wrap_parse("scenario", [&] {
    ScenarioConfig s;
    s.schema_version = j.at("scenario_schema_version").get<int>();
    s.name = j.at("name").get<std::string>();
    s.description = j.at("description").get<std::string>();
    s.model = model_from_json(j.at("model"));
    const auto dom = j.at("domain").get<std::array<double, 2>>();
    s.x_min = dom[0];
    s.x_max = dom[1];
    s.t_end = j.at("t_end").get<double>();
    const json& ic = j.at("initial_condition");
    s.ic.kind = ic_kind_from(ic.at("kind").get<std::string>());
    s.ic.mean = ic.at("mean").get<double>();
    s.ic.amplitude = ic.at("amplitude").get<double>();
    s.ic.wavenumber = ic.at("wavenumber").get<double>();
    s.ic.rate = ic.at("rate").get<double>();
    for (const json& h : ic.at("hotspots")) {
      s.ic.hotspots.push_back({h.at("center").get<double>(), h.at("amplitude").get<double>()});
    }
    const json& p = j.at("plan");
    s.plan.sampling = data_sampling_from_string(p.at("sampling").get<std::string>());
    s.plan.n_data = p.at("n_data").get<std::size_t>();
    s.plan.n_residual = p.at("n_residual").get<std::size_t>();
    s.plan.n_boundary = p.at("n_boundary").get<std::size_t>();
    s.plan.n_conservation = p.at("n_conservation").get<std::size_t>();
    s.plan.n_quadrature = p.at("n_quadrature").get<std::size_t>();
    s.plan.data_components = p.at("data_components").get<std::vector<int>>();
    s.plan.boundary_components = p.at("boundary_components").get<std::vector<int>>();
    if (!p.at("t_train").is_null()) s.plan.t_train = p.at("t_train").get<double>();
    s.plan.lattice_aspect = p.at("lattice_aspect").get<double>();
    s.arch = arch_from_json(j.at("arch"));
    const json& w = j.at("weights");
    s.weights.data = w.at("data").get<std::vector<double>>();
    s.weights.boundary = w.at("boundary").get<std::vector<double>>();
    s.weights.residual = w.at("residual").get<std::vector<double>>();
    s.weights.conservation = w.at("conservation").get<double>();
    const json& t = j.at("train");
    s.train.learning_rate = t.at("learning_rate").get<double>();
    s.train.epochs = t.at("epochs").get<int>();
    s.train.validation_fraction = t.at("validation_fraction").get<double>();
    s.train.patience = t.at("patience").get<int>();
    s.train.min_delta = t.at("min_delta").get<double>();
    s.train.seed = t.at("seed").get<std::uint64_t>();
    s.train.beta1 = t.at("beta1").get<double>();
    s.train.beta2 = t.at("beta2").get<double>();
    s.train.adam_eps = t.at("adam_eps").get<double>();
    s.train.log_stride = t.at("log_stride").get<int>();
    s.train.max_grad_norm = t.at("max_grad_norm").get<double>();
    s.residual = residual_form_from_string(j.at("residual_form").get<std::string>());
    const json& tr = j.at("truth");
    s.truth.cells = tr.at("cells").get<int>();
    s.truth.time_levels = tr.at("time_levels").get<int>();
    s.truth.table_nx = tr.at("table_nx").get<int>();
    s.truth.table_nt = tr.at("table_nt").get<int>();
    const json& so = tr.at("solver");
    s.truth.solver.cfl_hyperbolic = so.at("cfl_hyperbolic").get<double>();
    s.truth.solver.cfl_parabolic = so.at("cfl_parabolic").get<double>();
    s.truth.solver.reaction_cfl = so.at("reaction_cfl").get<double>();
    s.truth.solver.reference_speed = so.at("reference_speed").get<double>();
    s.truth.solver.min_dt = so.at("min_dt").get<double>();
    return s;
  });
  c.validate();
  return c;
}

void save_scenario(const std::string& path, const ScenarioConfig& cfg) { write_json(path, scenario_to_json(cfg)); }

ScenarioConfig load_scenario(const std::string& path) { return scenario_from_json(read_json(path)); }

// ---------------------------------------------------------------------------

void write_truth(const std::string& dir, const ScenarioConfig& cfg, const Trajectory& traj) {
  fs::create_directories(dir);
  const auto names = component_names(cfg.model);
  std::vector<std::string> head{"t", "x"};
  head.insert(head.end(), names.begin(), names.end());
  const auto xs = report_x(cfg);
  const auto ts = report_t(cfg);
  std::vector<FieldTable> tables;
  for (int c = 0; c < static_cast<int>(names.size()); ++c) tables.push_back(truth_table(cfg, traj, c));
  std::vector<std::vector<double>> rows;
  rows.reserve(xs.size() * ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::vector<double> row{ts[k], xs[i]};
      for (const auto& tab : tables) row.push_back(tab.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)));
      rows.push_back(std::move(row));
    }
  }
  write_csv((fs::path(dir) / "truth.csv").string(), head, rows);

  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;
  for (double dt : traj.dt_history) {
    dt_min = std::min(dt_min, dt);
    dt_max = std::max(dt_max, dt);
  }
  json side = header("apnn-truth");
  side["scenario"] = scenario_to_json(cfg);
  side["grid"] = {{"a", traj.grid.a}, {"b", traj.grid.b}, {"cells", traj.grid.cells}, {"boundary", "periodic"}};
  side["table"] = {{"nx", xs.size()}, {"nt", ts.size()}, {"columns", head}, {"values", "point values"}};
  side["solver"] = {{"scheme", traj.scheme},
                    {"cfl_hyperbolic", traj.config.cfl_hyperbolic},
                    {"cfl_parabolic", traj.config.cfl_parabolic},
                    {"reaction_cfl", traj.config.reaction_cfl},
                    {"reference_speed", traj.config.reference_speed},
                    {"time_levels", traj.times.size()},
                    {"total_steps", traj.total_steps},
                    {"dt_min", number(dt_min)},
                    {"dt_max", dt_max}};
  write_json((fs::path(dir) / "truth.json").string(), side);
}

void write_dataset(const std::string& dir, const ScenarioConfig& cfg, const Dataset& d) {
  fs::create_directories(dir);
  const auto names = component_names(cfg.model);
  const std::pair<const char*, const PointSet*> sets[] = {{"data_train", &d.data_train},
                                                          {"data_validation", &d.data_validation},
                                                          {"boundary", &d.boundary},
                                                          {"residual_train", &d.residual_train},
                                                          {"residual_validation", &d.residual_validation}};
  json side = header("apnn-dataset");
  side["scenario"] = cfg.name;
  for (const auto& [name, set] : sets) {
    std::vector<std::string> head{"x", "t"};
    for (int c : set->components) head.push_back(names[static_cast<std::size_t>(c)]);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < set->size(); ++i) {
      std::vector<double> row{set->x[i], set->t[i]};
      for (std::size_t r = 0; r < set->components.size(); ++r) {
        row.push_back(set->values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)));
      }
      rows.push_back(std::move(row));
    }
    write_csv((fs::path(dir) / (std::string("dataset_") + name + ".csv")).string(), head, rows);
    side["sets"][name] = points_meta(*set);
  }
  side["conservation_times"] = d.conservation_times;
  side["quadrature_x"] = d.quadrature_x;
  side["quadrature_weight"] = d.quadrature_weight;
  side["initial_population"] = d.initial_population;
  side["data_validation_index"] = d.data_validation_index;
  side["residual_validation_index"] = d.residual_validation_index;
  write_json((fs::path(dir) / "dataset.json").string(), side);
}

Dataset read_dataset(const std::string& dir) {
  const json side = read_json((fs::path(dir) / "dataset.json").string());
  check_format(side, "apnn-dataset");
  return wrap_parse(dir, [&] {
    Dataset d;
    const std::pair<const char*, PointSet*> sets[] = {{"data_train", &d.data_train},
                                                      {"data_validation", &d.data_validation},
                                                      {"boundary", &d.boundary},
                                                      {"residual_train", &d.residual_train},
                                                      {"residual_validation", &d.residual_validation}};
    for (const auto& [name, set] : sets) {
      const json& meta = side.at("sets").at(name);
      set->components = meta.at("components").get<std::vector<int>>();
      const auto rows = read_csv_rows((fs::path(dir) / (std::string("dataset_") + name + ".csv")).string(),
                                      2 + set->components.size());
      if (rows.size() != meta.at("size").get<std::size_t>()) throw IoError(std::string(name) + ": size mismatch");
      set->values.resize(static_cast<Eigen::Index>(set->components.size()), static_cast<Eigen::Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        set->x.push_back(rows[i][0]);
        set->t.push_back(rows[i][1]);
        for (std::size_t r = 0; r < set->components.size(); ++r) {
          set->values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = rows[i][2 + r];
        }
      }
      set->check();
    }
    d.conservation_times = side.at("conservation_times").get<std::vector<double>>();
    d.quadrature_x = side.at("quadrature_x").get<std::vector<double>>();
    d.quadrature_weight = side.at("quadrature_weight").get<double>();
    d.initial_population = side.at("initial_population").get<double>();
    d.data_validation_index = side.at("data_validation_index").get<std::vector<std::size_t>>();
    d.residual_validation_index = side.at("residual_validation_index").get<std::vector<std::size_t>>();
    return d;
  });
}

void write_history_csv(const std::string& path, const TrainHistory& h) {
  std::vector<std::string> head{"epoch", "total"};
  head.insert(head.end(), h.term_names.begin(), h.term_names.end());
  head.push_back("validation");
  head.insert(head.end(), h.physical_names.begin(), h.physical_names.end());
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < h.size(); ++k) {
    std::vector<double> row{static_cast<double>(h.epoch[k]), h.total[k]};
    row.insert(row.end(), h.terms[k].begin(), h.terms[k].end());
    row.push_back(h.validation[k]);
    row.insert(row.end(), h.physical[k].begin(), h.physical[k].end());
    rows.push_back(std::move(row));
  }
  write_csv(path, head, rows);
}

}  // namespace apnn
