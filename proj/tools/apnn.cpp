// apnn: command-line harness for the scenario catalog.
//
//   apnn list
//   apnn generate <scenario> [--out DIR] [--scale S] [--seed K]
//   apnn run <scenario> [--scale S] [--seed K] [--residual ap|standard] [--epochs N]
//                       [--nd N] [--nr N] [--quiet]
//   apnn report <run-dir>
//
// Output goes below $APNN_OUTPUT_ROOT (default ./runs). Exit status: 0 ok,
// 2 config, 3 generate, 4 dataset, 5 train, 6 report, 7 io.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "apnn/error.hpp"
#include "apnn/io.hpp"
#include "apnn/report.hpp"
#include "apnn/scenarios.hpp"

namespace fs = std::filesystem;
using namespace apnn;

namespace {

void print_report(const Report& r) {
  std::printf("scenario %s (%s residual, seed %llu)\n", r.scenario.c_str(), r.residual_form.c_str(),
              static_cast<unsigned long long>(r.seed));
  if (r.epochs_run > 0) {
    std::printf("epochs run %d, best epoch %d, stop: %s\n", r.epochs_run, r.best_epoch, r.stop_reason.c_str());
  }
  if (!r.parameters.empty()) {
    std::printf("\n%-10s %14s %14s %14s %14s\n", "Parameter", "Ground Truth", "Initial Guess", "Estimation",
                "Relative Error");
    for (const auto& p : r.parameters) {
      char err[32];
      if (p.relative_error) {
        std::snprintf(err, sizeof err, "%.4e", *p.relative_error);
      } else {
        std::snprintf(err, sizeof err, "N/A");
      }
      std::printf("%-10s %14.6g %14.6g %14.6f %14s\n", p.name.c_str(), p.truth, p.initial_guess, p.estimate, err);
    }
  }
  std::printf("\n%-10s %14s %14s\n", "Component", "rel. L2", "forecast L2");
  for (const auto& f : r.fields) {
    std::printf("%-10s %14.4e %14.4e\n", f.component.c_str(), f.relative_l2, f.forecast_relative_l2);
  }
  if (!r.rt_truth.empty()) {
    std::printf("\nR_t(0): network %.6f, truth %.6f\n", r.rt_network.front(), r.rt_truth.front());
    std::printf("population drift: network %.3e, truth %.3e\n", r.conservation_drift_network,
                r.conservation_drift_truth);
  } else {
    std::printf("\nmedian |f+ - f-|: %.4e\n", r.kinetic_gap_median);
  }
}

int fail(Stage s, const std::string& what) {
  std::fprintf(stderr, "apnn: [%s] %s\n", to_string(s), what.c_str());
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic-preserving neural networks for GT and hyperbolic SIR models"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List catalog scenarios");

  std::string scenario;
  std::string out_dir;
  double scale = 1.0;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("generate", "Solve the ground truth and build the dataset");
  gen->add_option("scenario", scenario, "Scenario name")->required();
  gen->add_option("--out", out_dir, "Output directory (default <root>/truth/<scenario>)");
  gen->add_option("--scale", scale, "Point-count scale")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Random seed");

  RunOverrides ov;
  std::string residual;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Generate, train and evaluate one scenario");
  run->add_option("scenario", scenario, "Scenario name")->required();
  run->add_option("--scale", ov.scale, "Multiply point counts and epochs")->check(CLI::PositiveNumber);
  run->add_option("--seed", ov.seed, "Random seed");
  run->add_option("--residual", residual, "Residual form")->check(CLI::IsMember({"ap", "standard"}));
  run->add_option("--epochs", ov.epochs, "Epochs (after scaling)")->check(CLI::PositiveNumber);
  run->add_option("--nd", ov.n_data, "Number of data points (after scaling)");
  run->add_option("--nr", ov.n_residual, "Number of residual points (after scaling)");
  run->add_flag("--quiet", quiet, "No progress output");

  std::string run_dir;
  auto* rep = app.add_subcommand("report", "Recompute the report of a run directory");
  rep->add_option("run-dir", run_dir, "Run directory")->required()->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code(Stage::config);
  }

  try {
    if (list->parsed()) {
      for (const auto& s : catalog()) {
        std::printf("%-22s %s\n", s.name.c_str(), s.description.c_str());
      }
      return 0;
    }

    if (gen->parsed()) {
      ScenarioConfig cfg;
      try {
        cfg = apply_scale(find_scenario(scenario), scale);
        cfg.train.seed = seed;
        cfg.validate();
      } catch (const std::exception& e) {
        return fail(Stage::config, e.what());
      }
      const std::string dir = out_dir.empty() ? (fs::path(default_output_root()) / "truth" / cfg.name).string() : out_dir;
      Trajectory traj;
      try {
        traj = generate_ground_truth(cfg);
      } catch (const std::exception& e) {
        return fail(Stage::generate, e.what());
      }
      Dataset data;
      try {
        data = build_dataset(cfg, traj);
      } catch (const std::exception& e) {
        return fail(Stage::dataset, e.what());
      }
      try {
        fs::create_directories(dir);
        save_scenario((fs::path(dir) / "scenario.json").string(), cfg);
        write_truth(dir, cfg, traj);
        write_dataset((fs::path(dir) / "dataset").string(), cfg, data);
      } catch (const std::exception& e) {
        return fail(Stage::io, e.what());
      }
      std::printf("%s: %ld solver steps, truth and dataset written to %s\n", cfg.name.c_str(), traj.total_steps,
                  dir.c_str());
      return 0;
    }

    if (run->parsed()) {
      ScenarioConfig cfg;
      try {
        if (!residual.empty()) ov.residual = residual_form_from_string(residual);
        cfg = resolve_scenario(scenario, ov);
      } catch (const std::exception& e) {
        return fail(Stage::config, e.what());
      }
      ProgressCallback progress;
      if (!quiet) progress = [](const std::string& s) { std::fprintf(stderr, "%s\n", s.c_str()); };
      const RunOutcome out = run_experiment(cfg, default_output_root(), progress);
      print_report(out.report);
      std::printf("\nartifacts: %s\n", out.directory.c_str());
      return 0;
    }

    if (rep->parsed()) {
      const Report r = rerun_report(run_dir);
      print_report(r);
      const fs::path saved = fs::path(run_dir) / "report.json";
      if (fs::exists(saved)) {
        const bool same = read_json(saved.string()) == report_to_json(r);
        std::printf("\nrecomputed metrics %s the saved report\n", same ? "match" : "DIFFER FROM");
        if (!same) return exit_code(Stage::report);
      } else {
        write_json(saved.string(), report_to_json(r));
      }
      return 0;
    }
  } catch (const StageError& e) {
    return fail(e.stage(), e.what());
  } catch (const ConfigError& e) {
    return fail(Stage::config, e.what());
  } catch (const IoError& e) {
    return fail(Stage::io, e.what());
  } catch (const std::exception& e) {
    return fail(Stage::report, e.what());
  }
  return 0;
}
