#include "apnn/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <limits>
#include <sstream>

#include "apnn/error.hpp"
#include "apnn/io.hpp"

namespace apnn {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json series(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

double median(std::vector<double> v) {
  if (v.empty()) return kNaN;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  return 0.5 * (hi + *std::max_element(v.begin(), mid));
}

std::vector<double> row_of(const Eigen::MatrixXd& m, Eigen::Index k) {
  std::vector<double> r(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.cols(); ++i) r[static_cast<std::size_t>(i)] = m(k, i);
  return r;
}

/// The model with learnable values replaced by the network's estimates.
ModelSpec estimated_model(const ModelSpec& spec, const NetworkParams& params) {
  ModelSpec out = spec;
  for (std::size_t k = 0; k < params.physical_count(); ++k) {
    Parameter* p = find_parameter(out, params.physical_names[k]);
    if (p == nullptr) throw ConfigError("checkpoint names unknown parameter " + params.physical_names[k]);
    p->value = params.physical(k);
  }
  return out;
}

struct SirSeries {
  std::vector<double> rt, infected, population;
};

SirSeries sir_series(const SIRSpec& spec, const std::vector<Eigen::MatrixXd>& u, const std::vector<double>& x,
                     double dx) {
  SirSeries s;
  std::vector<double> beta(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) beta[i] = spec.transmission(x[i]);
  const std::vector<double> gamma(x.size(), spec.gamma.value);
  for (Eigen::Index k = 0; k < u[0].rows(); ++k) {
    const auto S = row_of(u[0], k);
    const auto I = row_of(u[1], k);
    const auto R = row_of(u[2], k);
    s.rt.push_back(effective_reproduction_number(S, I, beta, gamma, dx).value_or(kNaN));
    s.infected.push_back(periodic_trapezoid(I, dx));
    s.population.push_back(total_population(S, I, R, dx));
  }
  return s;
}

double drift(const std::vector<double>& p) {
  double d = 0.0;
  for (double v : p) d = std::max(d, std::abs(v - p.front()));
  return d;
}

}  // namespace

const ParameterRow* Report::parameter(const std::string& name) const {
  for (const auto& p : parameters) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const FieldError* Report::field(const std::string& component) const {
  for (const auto& f : fields) {
    if (f.component == component) return &f;
  }
  return nullptr;
}

std::vector<Eigen::MatrixXd> network_tables(const ScenarioConfig& cfg, const NetworkParams& params) {
  const auto xs = report_x(cfg);
  const auto ts = report_t(cfg);
  std::vector<double> px, pt;
  px.reserve(xs.size() * ts.size());
  pt.reserve(xs.size() * ts.size());
  for (double t : ts) {
    for (double x : xs) {
      px.push_back(x);
      pt.push_back(t);
    }
  }
  const Eigen::MatrixXd out = predict_macro(cfg.loss_problem(), params, px, pt);
  std::vector<Eigen::MatrixXd> tables;
  const auto nx = static_cast<Eigen::Index>(xs.size());
  const auto nt = static_cast<Eigen::Index>(ts.size());
  for (Eigen::Index c = 0; c < out.rows(); ++c) {
    Eigen::MatrixXd tab(nt, nx);
    for (Eigen::Index k = 0; k < nt; ++k) {
      for (Eigen::Index i = 0; i < nx; ++i) tab(k, i) = out(c, k * nx + i);
    }
    tables.push_back(std::move(tab));
  }
  return tables;
}

double relative_l2(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const std::vector<double>& t,
                   double t_from) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || static_cast<std::size_t>(a.rows()) != t.size()) {
    throw ConfigError("relative_l2: shape mismatch");
  }
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    if (!(t[static_cast<std::size_t>(k)] > t_from)) continue;
    num += (a.row(k) - b.row(k)).squaredNorm();
    den += b.row(k).squaredNorm();
  }
  return den > 0.0 ? std::sqrt(num / den) : kNaN;
}

Report compute_metrics(const ScenarioConfig& cfg, const NetworkParams& params, const Trajectory& traj) {
  params.check_against(cfg.arch);
  Report r;
  r.scenario = cfg.name;
  r.residual_form = to_string(cfg.residual);
  r.seed = cfg.train.seed;
  r.t_train = cfg.plan.t_train;
  r.x = report_x(cfg);
  r.t = report_t(cfg);

  for (const Parameter* p : learnable_parameters(cfg.model)) {
    ParameterRow row{p->name, p->value, p->initial_guess, kNaN, std::nullopt};
    const int idx = params.physical_index(p->name);
    if (idx < 0) throw ConfigError("network has no parameter " + p->name);
    row.estimate = params.physical(static_cast<std::size_t>(idx));
    if (p->value != 0.0) row.relative_error = std::abs(row.estimate - p->value) / std::abs(p->value);
    r.parameters.push_back(row);
  }

  const auto names = component_names(cfg.model);
  const std::vector<Eigen::MatrixXd> nn = network_tables(cfg, params);
  std::vector<Eigen::MatrixXd> truth;
  for (int c = 0; c < static_cast<int>(names.size()); ++c) truth.push_back(truth_table(cfg, traj, c).values);

  for (std::size_t c = 0; c < names.size(); ++c) {
    FieldError f;
    f.component = names[c];
    const double norm = std::sqrt(truth[c].squaredNorm() / static_cast<double>(truth[c].size()));
    f.map = (nn[c] - truth[c]).cwiseAbs() / norm;
    f.relative_l2 = relative_l2(nn[c], truth[c], r.t);
    f.forecast_relative_l2 = cfg.plan.t_train ? relative_l2(nn[c], truth[c], r.t, *cfg.plan.t_train) : kNaN;
    r.fields.push_back(std::move(f));
  }

  const double dx = cfg.domain_length() / static_cast<double>(r.x.size());
  if (const auto* sir = std::get_if<SIRSpec>(&cfg.model)) {
    const SIRSpec est = std::get<SIRSpec>(estimated_model(cfg.model, params));
    const SirSeries a = sir_series(est, nn, r.x, dx);
    const SirSeries b = sir_series(*sir, truth, r.x, dx);
    r.rt_network = a.rt;
    r.rt_truth = b.rt;
    r.infected_network = a.infected;
    r.infected_truth = b.infected;
    r.population_network = a.population;
    r.population_truth = b.population;
    r.conservation_drift_network = drift(a.population);
    r.conservation_drift_truth = drift(b.population);
    r.kinetic_gap_median = kNaN;
  } else {
    const auto& gt = std::get<GTSpec>(cfg.model);
    std::vector<double> gap;
    gap.reserve(static_cast<std::size_t>(nn[0].size()));
    for (Eigen::Index k = 0; k < nn[0].size(); ++k) {
      const KineticPair f = to_kinetic(nn[0].data()[k], nn[1].data()[k], gt.eps, gt.c);
      gap.push_back(std::abs(f.f_plus - f.f_minus));
    }
    r.kinetic_gap_median = median(std::move(gap));
    r.conservation_drift_network = kNaN;
    r.conservation_drift_truth = kNaN;
  }
  return r;
}

json report_to_json(const Report& r) {
  json j{{"format", "apnn-report"}, {"schema_version", kFileSchemaVersion}};
  j["scenario"] = r.scenario;
  j["residual_form"] = r.residual_form;
  j["seed"] = r.seed;
  j["epochs_run"] = r.epochs_run;
  j["best_epoch"] = r.best_epoch;
  j["stop_reason"] = r.stop_reason;
  j["t_train"] = r.t_train ? json(*r.t_train) : json(nullptr);
  json params = json::array();
  for (const auto& p : r.parameters) {
    params.push_back({{"name", p.name},
                      {"truth", p.truth},
                      {"initial_guess", p.initial_guess},
                      {"estimate", number(p.estimate)},
                      {"relative_error", p.relative_error ? number(*p.relative_error) : json("N/A")}});
  }
  j["parameters"] = params;
  json fields = json::array();
  for (const auto& f : r.fields) {
    fields.push_back({{"component", f.component},
                      {"relative_l2", number(f.relative_l2)},
                      {"forecast_relative_l2", number(f.forecast_relative_l2)}});
  }
  j["fields"] = fields;
  j["conservation_drift_network"] = number(r.conservation_drift_network);
  j["conservation_drift_truth"] = number(r.conservation_drift_truth);
  j["kinetic_gap_median"] = number(r.kinetic_gap_median);
  if (!r.rt_truth.empty()) {
    j["rt0_truth"] = number(r.rt_truth.front());
    j["rt0_network"] = number(r.rt_network.front());
    j["series"] = {{"t", r.t},
                   {"rt_network", series(r.rt_network)},
                   {"rt_truth", series(r.rt_truth)},
                   {"infected_network", series(r.infected_network)},
                   {"infected_truth", series(r.infected_truth)}};
  }
  return j;
}

void write_report_tables(const std::string& dir, const Report& r) {
  std::vector<std::string> head{"t", "x"};
  for (const auto& f : r.fields) head.push_back("err_" + f.component);
  std::vector<std::vector<double>> rows;
  rows.reserve(r.t.size() * r.x.size());
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      std::vector<double> row{r.t[k], r.x[i]};
      for (const auto& f : r.fields) row.push_back(f.map(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)));
      rows.push_back(std::move(row));
    }
  }
  write_csv((fs::path(dir) / "errors.csv").string(), head, rows);
  if (r.rt_truth.empty()) return;
  std::vector<std::vector<double>> s;
  for (std::size_t k = 0; k < r.t.size(); ++k) {
    s.push_back({r.t[k], r.rt_network[k], r.rt_truth[k], r.infected_network[k], r.infected_truth[k],
                 r.population_network[k], r.population_truth[k]});
  }
  write_csv((fs::path(dir) / "series.csv").string(),
            {"t", "rt_network", "rt_truth", "infected_network", "infected_truth", "population_network",
             "population_truth"},
            s);
}

// ---------------------------------------------------------------------------

const char* to_string(Stage s) {
  switch (s) {
    case Stage::config: return "config";
    case Stage::generate: return "generate";
    case Stage::dataset: return "dataset";
    case Stage::train: return "train";
    case Stage::report: return "report";
    case Stage::io: return "io";
  }
  return "unknown";
}

int exit_code(Stage s) {
  switch (s) {
    case Stage::config: return 2;
    case Stage::generate: return 3;
    case Stage::dataset: return 4;
    case Stage::train: return 5;
    case Stage::report: return 6;
    case Stage::io: return 7;
  }
  return 1;
}

ScenarioConfig resolve_scenario(const std::string& name, const RunOverrides& o) {
  ScenarioConfig cfg = find_scenario(name);
  if (o.residual) cfg = with_residual_form(cfg, *o.residual);
  if (o.scale) cfg = apply_scale(cfg, *o.scale);
  if (o.epochs) cfg.train.epochs = *o.epochs;
  if (o.n_data) cfg.plan.n_data = *o.n_data;
  if (o.n_residual) cfg.plan.n_residual = *o.n_residual;
  if (o.seed) cfg.train.seed = *o.seed;
  cfg.validate();
  return cfg;
}

std::string default_output_root() {
  const char* env = std::getenv("APNN_OUTPUT_ROOT");
  return env && *env ? std::string(env) : std::string("runs");
}

namespace {

template <class F>
auto in_stage(Stage s, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(s, e.what());
  }
}

std::string fresh_run_dir(const std::string& root, const ScenarioConfig& cfg) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
  const std::string base = cfg.name + "-" + to_string(cfg.residual) + "-s" + std::to_string(cfg.train.seed) + "-" + stamp;
  fs::path dir = fs::path(root) / base;
  for (int k = 2; fs::exists(dir); ++k) dir = fs::path(root) / (base + "-" + std::to_string(k));
  fs::create_directories(dir);
  return dir.string();
}

void copy_metadata(Report& r, const TrainHistory& h) {
  r.epochs_run = h.epochs_run;
  r.best_epoch = h.best_epoch;
  r.stop_reason = h.stop_reason;
}

}  // namespace

RunOutcome run_experiment(const ScenarioConfig& cfg, const std::string& output_root,
                          const ProgressCallback& progress) {
  in_stage(Stage::config, [&] {
    cfg.validate();
    return 0;
  });
  auto say = [&](const std::string& s) {
    if (progress) progress(s);
  };
  RunOutcome out;
  out.directory = in_stage(Stage::io, [&] {
    const std::string dir = fresh_run_dir(output_root, cfg);
    save_scenario((fs::path(dir) / "scenario.json").string(), cfg);
    return dir;
  });
  const fs::path dir(out.directory);
  say("run directory " + out.directory);

  const Trajectory traj = in_stage(Stage::generate, [&] { return generate_ground_truth(cfg); });
  in_stage(Stage::io, [&] {
    write_truth((dir / "truth").string(), cfg, traj);
    return 0;
  });
  say("ground truth: " + std::to_string(traj.total_steps) + " solver steps");

  const Dataset data = in_stage(Stage::dataset, [&] { return build_dataset(cfg, traj); });
  in_stage(Stage::io, [&] {
    write_dataset((dir / "dataset").string(), cfg, data);
    return 0;
  });
  say("dataset: " + std::to_string(data.data_train.size()) + " data, " + std::to_string(data.residual_train.size()) +
      " residual, " + std::to_string(data.boundary.size()) + " initial points");

  const NetworkParams init = initial_params(cfg, cfg.train.seed);
  const int stride = std::max(1, cfg.train.epochs / 20);
  auto on_epoch = [&](int epoch, const LossBreakdown& br, double val, const NetworkParams& p) {
    if (!progress || (epoch % stride != 0 && epoch + 1 != cfg.train.epochs)) return;
    std::ostringstream os;
    os << "epoch " << epoch << " loss " << br.total << " val " << val;
    for (std::size_t k = 0; k < p.physical_count(); ++k) os << " " << p.physical_names[k] << "=" << p.physical(k);
    progress(os.str());
  };
  TrainResult result;
  try {
    result = train(cfg.loss_problem(), data, init, cfg.train, on_epoch);
  } catch (const TrainingDiverged& e) {
    try {
      write_history_csv((dir / "history.csv").string(), e.partial().history);
    } catch (const std::exception&) {
    }
    throw StageError(Stage::train, e.what());
  } catch (const std::exception& e) {
    throw StageError(Stage::train, e.what());
  }
  out.history = result.history;
  out.params = result.params;
  in_stage(Stage::io, [&] {
    write_history_csv((dir / "history.csv").string(), result.history);
    save_checkpoint((dir / "checkpoint.json").string(),
                    Checkpoint{cfg.arch, result.params, cfg.train.seed, result.history.best_epoch});
    return 0;
  });

  out.report = in_stage(Stage::report, [&] { return compute_metrics(cfg, result.params, traj); });
  copy_metadata(out.report, result.history);
  in_stage(Stage::io, [&] {
    write_json((dir / "report.json").string(), report_to_json(out.report));
    write_report_tables(dir.string(), out.report);
    return 0;
  });
  return out;
}

Report rerun_report(const std::string& run_dir) {
  const fs::path dir(run_dir);
  const ScenarioConfig cfg = in_stage(Stage::io, [&] { return load_scenario((dir / "scenario.json").string()); });
  const Checkpoint ck = in_stage(Stage::io, [&] { return load_checkpoint((dir / "checkpoint.json").string()); });
  const Trajectory traj = in_stage(Stage::generate, [&] { return generate_ground_truth(cfg); });
  Report r = in_stage(Stage::report, [&] { return compute_metrics(cfg, ck.params, traj); });
  const fs::path saved = dir / "report.json";
  if (fs::exists(saved)) {
    in_stage(Stage::io, [&] {
      const json j = read_json(saved.string());
      r.epochs_run = j.at("epochs_run").get<int>();
      r.best_epoch = j.at("best_epoch").get<int>();
      r.stop_reason = j.at("stop_reason").get<std::string>();
      return 0;
    });
  }
  return r;
}

}  // namespace apnn
