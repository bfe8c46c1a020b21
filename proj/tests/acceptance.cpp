// Acceptance harness: one PASS/FAIL line per criterion A1..A12.
//
//   acceptance            run everything
//   acceptance A4 A11     run a selection
//
// Training criteria write their run directories below $APNN_ACCEPTANCE_ROOT
// (default ./acceptance_runs); every result line is also appended to
// results.txt there. Tolerances are pinned below and never read from input.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "apnn/loss.hpp"
#include "apnn/physics.hpp"
#include "apnn/refsolver.hpp"
#include "apnn/report.hpp"
#include "apnn/rng.hpp"
#include "apnn/scenarios.hpp"

using namespace apnn;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeeds[] = {1, 2, 3};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double rel_err(double est, double truth) { return std::abs(est - truth) / std::abs(truth); }

std::string output_root() {
  const char* env = std::getenv("APNN_ACCEPTANCE_ROOT");
  return env && *env ? env : "acceptance_runs";
}

RunOutcome train_run(const std::string& scenario, const RunOverrides& ov) {
  const ScenarioConfig cfg = resolve_scenario(scenario, ov);
  std::fprintf(stderr, "  training %s seed %llu: %zu data, %zu residual, %d epochs\n", cfg.name.c_str(),
               static_cast<unsigned long long>(cfg.train.seed), cfg.plan.n_data, cfg.plan.n_residual,
               cfg.train.epochs);
  RunOutcome out = run_experiment(cfg, output_root());
  std::fprintf(stderr, "    -> %d epochs (best %d, %s), %s\n", out.report.epochs_run, out.report.best_epoch,
               out.report.stop_reason.c_str(), out.directory.c_str());
  return out;
}

// ---------------------------------------------------------------------------
// A1: the AP residuals differ from their limits by the relaxation terms only.

Outcome a1() {
  Rng rng(101);
  double worst = 0.0;
  int checks = 0;
  const auto ident = [](double v) { return v; };

  // GT at several scalings, with and without source.
  for (const char* name : {"test1-inverse", "test2a", "test2b"}) {
    const ScenarioConfig base = find_scenario(name);
    for (double eps : {1.0, 0.1, 1e-4}) {
      GTSpec spec = std::get<GTSpec>(base.model);
      spec.eps = eps;
      for (int s = 0; s < 100; ++s) {
        const NetworkParams p = initial_params(base, 1000 + static_cast<std::uint64_t>(s));
        const double x = rng.uniform(base.x_min, base.x_max);
        const double t = rng.uniform(0.0, base.t_end);
        const auto u = evaluate_point(p, base.arch, x, t);
        std::vector<double> phys;
        for (std::size_t k = 0; k < p.physical_count(); ++k) phys.push_back(p.physical(k) * rng.uniform(0.5, 2.0));
        auto k = gt_coeffs<double>(spec, phys, x, ident);
        const auto r = residual_gt_ap(u[0], u[1], k);
        k.eps = 0.0;
        const auto r0 = residual_gt_ap(u[0], u[1], k);
        const double scale = std::max({1.0, std::abs(r[1]), std::abs(r0[1])});
        worst = std::max(worst, std::abs(r[0] - r0[0]) / scale);
        worst = std::max(worst, std::abs((r[1] - r0[1]) - eps * eps * u[1].d_t) / scale);
        checks += 2;
      }
    }
  }

  // SIR: the six residuals against their tau = 0 reduction, with the
  // relaxation terms written out from the flux equations.
  for (const char* name : {"test3a-inference", "test3b-inference", "test4a-inference", "test4b-inference"}) {
    const ScenarioConfig base = find_scenario(name);
    const SIRSpec& spec = std::get<SIRSpec>(base.model);
    for (int s = 0; s < 100; ++s) {
      const NetworkParams p = initial_params(base, 2000 + static_cast<std::uint64_t>(s));
      const double x = rng.uniform(base.x_min, base.x_max);
      const double t = rng.uniform(0.0, base.t_end);
      const auto out = evaluate_point(p, base.arch, x, t);
      std::array<ad::Jet2, 6> u;
      std::copy(out.begin(), out.end(), u.begin());
      std::vector<double> phys;
      for (std::size_t k = 0; k < p.physical_count(); ++k) phys.push_back(p.physical(k) * rng.uniform(0.5, 2.0));
      const auto k = sir_coeffs<double>(spec, phys, x, ident);
      auto k0 = k;
      k0.tau = {0.0, 0.0, 0.0};
      const auto r = residual_sir_ap(u, k);
      const auto r0 = residual_sir_ap(u, k0);
      const double I = u[1].value;
      const double JS = u[3].value;
      const double JI = u[4].value;
      const auto& lam = spec.lambda;
      const std::array<double, 6> relax{
          0.0,
          0.0,
          0.0,
          spec.tau[0] * (u[3].d_t + k.beta * JS * I),
          spec.tau[1] * (u[4].d_t - lam[1] / lam[0] * k.beta * JS * I + k.gamma * JI),
          spec.tau[2] * (u[5].d_t - lam[2] / lam[1] * k.gamma * JI),
      };
      for (std::size_t c = 0; c < 6; ++c) {
        const double scale = std::max({1.0, std::abs(r[c]), std::abs(r0[c])});
        worst = std::max(worst, std::abs((r[c] - r0[c]) - relax[c]) / scale);
        ++checks;
      }
    }
  }
  constexpr double tol = 1e-12;
  return {worst <= tol, fmt("%d identities, worst scaled deviation %.2e (tol %.0e)", checks, worst, tol)};
}

// ---------------------------------------------------------------------------
// A2: reverse-mode loss gradients against central differences.

PointSet random_points(Rng& rng, int n, const ScenarioConfig& cfg, double t1, std::vector<int> comps) {
  PointSet p;
  for (int i = 0; i < n; ++i) {
    p.x.push_back(rng.uniform(cfg.x_min, cfg.x_max));
    p.t.push_back(rng.uniform(0.0, t1));
  }
  p.components = std::move(comps);
  p.values.resize(static_cast<Eigen::Index>(p.components.size()), n);
  for (Eigen::Index k = 0; k < p.values.size(); ++k) p.values.data()[k] = rng.uniform(0.0, 1.0);
  return p;
}

struct GradStats {
  long considered = 0;
  long good = 0;
};

void gradient_draw(const ScenarioConfig& cfg, std::uint64_t draw, GradStats& st) {
  Rng rng(500 + draw);
  NetworkParams p = initial_params(cfg, 700 + draw);
  for (std::size_t k = 0; k < p.physical_count(); ++k) {
    p.values[static_cast<Eigen::Index>(p.network_size() + k)] *= rng.uniform(0.8, 1.2);
  }
  Dataset d;
  d.data_train = random_points(rng, 12, cfg, cfg.t_end, cfg.plan.data_components);
  d.boundary = random_points(rng, 6, cfg, 0.0, cfg.plan.boundary_components);
  d.residual_train = random_points(rng, 12, cfg, cfg.t_end, {});
  if (cfg.plan.n_conservation > 0) {
    d.conservation_times = {0.0, 0.5 * cfg.t_end, cfg.t_end};
    for (int q = 0; q < 10; ++q) d.quadrature_x.push_back(cfg.x_min + 0.1 * q * cfg.domain_length());
    d.quadrature_weight = 0.1 * cfg.domain_length();
    d.initial_population = cfg.domain_length();
  }
  const LossProblem prob = cfg.loss_problem();
  const LossInputs in = training_inputs(d);
  Eigen::VectorXd g;
  assemble_loss(prob, p, in, &g);
  const NetworkParams p0 = p;
  // Each draw checks every 5th network component at a rotating offset (so 20
  // draws cover every component four times) plus all physical parameters.
  const auto n_net = static_cast<Eigen::Index>(p.network_size());
  for (Eigen::Index k = 0; k < p.values.size(); ++k) {
    if (k < n_net && (k + static_cast<Eigen::Index>(draw)) % 5 != 0) continue;
    if (std::abs(g[k]) <= 1e-8) continue;
    const double h = 1e-4 * std::max(1.0, std::abs(p0.values[k]));
    auto at = [&](double s) {
      p.values[k] = p0.values[k] + s * h;
      return assemble_loss(prob, p, in).total;
    };
    const double fd = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * h);
    p.values[k] = p0.values[k];
    ++st.considered;
    if (std::abs(fd - g[k]) / std::abs(g[k]) < 1e-5) ++st.good;
  }
}

Outcome a2() {
  const std::vector<ScenarioConfig> models{
      find_scenario("test2b"),
      with_residual_form(find_scenario("test1-inverse"), ResidualForm::standard),
      find_scenario("test4b-inference"),
  };
  constexpr double required = 0.95;
  bool pass = true;
  std::string detail;
  for (const auto& cfg : models) {
    GradStats st;
    for (std::uint64_t draw = 0; draw < 20; ++draw) gradient_draw(cfg, draw, st);
    const double frac = static_cast<double>(st.good) / static_cast<double>(std::max(1L, st.considered));
    pass = pass && frac >= required;
    detail += fmt("%s%s/%s %.4f of %ld", detail.empty() ? "" : "; ", cfg.name.c_str(), to_string(cfg.residual), frac,
                  st.considered);
  }
  return {pass, detail + fmt(" components within 1e-5 (need %.2f)", required)};
}

// ---------------------------------------------------------------------------
// A3: population conservation of the reference solver.

Outcome a3() {
  constexpr double tol = 1e-10;
  bool pass = true;
  std::string detail;
  for (const char* name : {"test3a-inference", "test4b-inference"}) {
    const ScenarioConfig cfg = find_scenario(name);
    const Trajectory tr = generate_ground_truth(cfg);
    const double h = tr.grid.dx();
    const double p0 = tr.states.front().topRows(3).sum() * h;
    double drift = 0.0;
    for (const auto& s : tr.states) drift = std::max(drift, std::abs(s.topRows(3).sum() * h - p0));
    pass = pass && drift < tol;
    detail += fmt("%s%s drift %.2e over t in [0, %g] (%ld steps)", detail.empty() ? "" : "; ", name, drift,
                  cfg.t_end, tr.total_steps);
  }
  return {pass, detail + fmt(" (tol %.0e)", tol)};
}

// ---------------------------------------------------------------------------
// A4, A5: reference solver against the heat limit and itself.

// Cell average of 6 + A cos(3 pi x) over [xc - h/2, xc + h/2].
double cosine_cell_average(double xc, double h, double amplitude) {
  const double k = 3.0 * std::numbers::pi;
  return 6.0 + amplitude * std::cos(k * xc) * std::sin(0.5 * k * h) / (0.5 * k * h);
}

Outcome a4() {
  ScenarioConfig cfg = find_scenario("test1-inverse");
  cfg.truth.cells = 400;
  const Trajectory tr = generate_ground_truth(cfg);
  const auto& gt = std::get<GTSpec>(cfg.model);
  // Heat equation rho_t = (c^2/sigma) rho_xx: the mode decays by exp(-D k^2 t).
  const double D = gt.c * gt.c / gt.sigma.value;
  const double amplitude = 3.0 * std::exp(-D * 9.0 * std::numbers::pi * std::numbers::pi * cfg.t_end);
  const Eigen::MatrixXd& last = tr.states.back();
  const double h = tr.grid.dx();
  double num = 0.0, den = 0.0, proj = 0.0, norm = 0.0;
  for (int i = 0; i < tr.grid.cells; ++i) {
    const double xc = tr.grid.center(i);
    const double exact = cosine_cell_average(xc, h, amplitude);
    num += (last(0, i) - exact) * (last(0, i) - exact);
    den += exact * exact;
    const double basis = cosine_cell_average(xc, h, 1.0) - 6.0;
    proj += (last(0, i) - 6.0) * basis;
    norm += basis * basis;
  }
  const double err = std::sqrt(num / den);
  constexpr double tol = 1e-3;
  return {err < tol && tr.times.back() == cfg.t_end,
          fmt("relative L2 %.3e (tol %.0e); fitted amplitude %.6f vs %.6f", err, tol, proj / norm, amplitude)};
}

Eigen::MatrixXd gt_solution(double eps, int cells) {
  GTSpec spec;
  spec.eps = eps;
  spec.c = 1.0;
  spec.sigma.value = 4.0;
  const Grid1D grid{-1.0, 1.0, cells};
  const HeatMode mode{6.0, 3.0, 3.0};
  Eigen::MatrixXd u0(2, cells);
  u0.row(0) = cell_averages([&](double x) { return analytic_heat_solution(x, 0.0, 1.0, 4.0, mode); }, grid).transpose();
  u0.row(1) = cell_averages([&](double x) { return analytic_heat_flux(x, 0.0, 1.0, 4.0, mode); }, grid).transpose();
  return imex_fv_solve(spec, grid, u0, {0.0, 0.1}).states.back();
}

Outcome a5() {
  constexpr double required = 1.8;
  bool pass = true;
  std::string detail;
  for (double eps : {1.0, 1e-4}) {
    const int n[3] = {200, 400, 800};
    Eigen::MatrixXd s[3];
    for (int k = 0; k < 3; ++k) s[k] = gt_solution(eps, n[k]);
    double e[2];
    for (int k = 0; k < 2; ++k) {
      // Fine solution restricted to the coarse cells by pairwise averaging.
      double sum = 0.0;
      for (int i = 0; i < n[k]; ++i) {
        for (int r = 0; r < 2; ++r) sum += std::abs(s[k](r, i) - 0.5 * (s[k + 1](r, 2 * i) + s[k + 1](r, 2 * i + 1)));
      }
      e[k] = sum * 2.0 / n[k];
    }
    const double order = std::log2(e[0] / e[1]);
    pass = pass && order >= required;
    detail += fmt("%seps=%g: L1 %.2e, %.2e, order %.3f", detail.empty() ? "" : "; ", eps, e[0], e[1], order);
  }
  return {pass, detail + fmt(" (need %.1f)", required)};
}

// ---------------------------------------------------------------------------
// A6, A7: Test 1 inverse problem at desk scale.

Outcome a6() {
  std::vector<double> sigma;
  for (auto seed : kSeeds) {
    RunOverrides ov;
    ov.scale = 0.25;
    ov.epochs = 5000;
    ov.seed = seed;
    sigma.push_back(train_run("test1-inverse", ov).report.parameter("sigma")->estimate);
  }
  const double med = median(sigma);
  constexpr double tol = 0.05;
  return {rel_err(med, 4.0) < tol, fmt("sigma per seed %.4f %.4f %.4f, median %.4f, relative error %.3e (tol %.2f)",
                                       sigma[0], sigma[1], sigma[2], med, rel_err(med, 4.0), tol)};
}

Outcome a7() {
  std::vector<double> sigma, gap;
  for (auto seed : kSeeds) {
    RunOverrides ov;
    ov.scale = 0.25;
    ov.epochs = 5000;
    ov.seed = seed;
    ov.residual = ResidualForm::standard;
    const RunOutcome out = train_run("test1-inverse", ov);
    sigma.push_back(out.report.parameter("sigma")->estimate);
    gap.push_back(out.report.kinetic_gap_median);
  }
  const double err = rel_err(median(sigma), 4.0);
  const double g = median(gap);
  const bool wrong_sigma = err > 0.25;
  const bool collapsed = g < 1e-3;
  return {wrong_sigma || collapsed,
          fmt("sigma per seed %.4f %.4f %.4f, median relative error %.3e (%s 0.25); median |f+ - f-| %.3e (%s 1e-3)",
              sigma[0], sigma[1], sigma[2], err, wrong_sigma ? ">" : "<=", g, collapsed ? "<" : ">=")};
}

// ---------------------------------------------------------------------------
// A8, A9: source and SIR parameter inference.

Outcome a8() {
  std::vector<double> k1, k2;
  for (auto seed : kSeeds) {
    RunOverrides ov;
    ov.scale = 0.5;
    ov.seed = seed;
    const Report r = train_run("test2b", ov).report;
    k1.push_back(r.parameter("kappa1")->estimate);
    k2.push_back(r.parameter("kappa2")->estimate);
  }
  const double e1 = rel_err(median(k1), 3.0);
  const double e2 = rel_err(median(k2), 4.0);
  return {e2 < 0.02 && e1 < 0.10,
          fmt("median kappa2 %.4f (rel %.2e, tol 0.02), median kappa1 %.4f (rel %.2e, tol 0.10)", median(k2), e2,
              median(k1), e1)};
}

Outcome a9() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"test3a-inference", "test3b-inference"}) {
    std::vector<double> beta, gamma;
    for (auto seed : kSeeds) {
      RunOverrides ov;
      ov.scale = 0.5;
      ov.n_data = 20;
      ov.seed = seed;
      const Report r = train_run(name, ov).report;
      beta.push_back(r.parameter("beta")->estimate);
      gamma.push_back(r.parameter("gamma")->estimate);
    }
    const double eb = rel_err(median(beta), 12.0);
    const double eg = rel_err(median(gamma), 6.0);
    pass = pass && eb < 0.05 && eg < 0.05;
    detail += fmt("%s%s: median beta %.4f (rel %.2e), gamma %.4f (rel %.2e)", detail.empty() ? "" : "; ", name,
                  median(beta), eb, median(gamma), eg);
  }
  return {pass, detail + " (tol 0.05)"};
}

// ---------------------------------------------------------------------------
// A10: longer observation windows forecast better.

Outcome a10() {
  constexpr double t_cut = 2.5;
  std::map<std::string, double> med;
  for (const char* name : {"test3b-forecast-1.5", "test3b-forecast-2.5"}) {
    std::vector<double> err;
    for (auto seed : kSeeds) {
      RunOverrides ov;
      ov.scale = 0.5;
      ov.seed = seed;
      const RunOutcome out = train_run(name, ov);
      const ScenarioConfig cfg = resolve_scenario(name, ov);
      const Trajectory traj = generate_ground_truth(cfg);
      const FieldTable truth = truth_table(cfg, traj, 1);
      const Eigen::MatrixXd net = network_tables(cfg, out.params)[1];
      err.push_back(relative_l2(net, truth.values, truth.t, t_cut));
    }
    med[name] = median(err);
  }
  const double short_win = med["test3b-forecast-1.5"];
  const double long_win = med["test3b-forecast-2.5"];
  return {short_win > long_win,
          fmt("median relative L2 of I for t > %.1f: t_train=1.5 %.3e, t_train=2.5 %.3e", t_cut, short_win, long_win)};
}

// ---------------------------------------------------------------------------
// A11: importance sampling reproduces p = I / int I.

// Upper 0.999 quantile of chi-squared with k degrees of freedom
// (Wilson-Hilferty; relative error well below 1% for k >= 10).
double chi2_quantile_999(int k) {
  const double z = 3.090232306167813;
  const double a = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - a + z * std::sqrt(a), 3.0);
}

Outcome a11() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"test3a-inference", "test3b-inference"}) {
    const ScenarioConfig cfg = find_scenario(name);
    const Trajectory traj = generate_ground_truth(cfg);
    FieldTable I = truth_table(cfg, traj, 1);
    I.values = I.values.cwiseMax(0.0);
    constexpr std::size_t draws = 10000;
    const PointSet s = importance_sample(I, draws, stream_seed(1, SeedStream::data));

    // Bins: 20 x 10 blocks of grid nodes; blocks with fewer than 5 expected
    // draws are pooled into one.
    const Eigen::Index nt = I.values.rows(), nx = I.values.cols();
    constexpr int bx = 20, bt = 10;
    auto block = [&](Eigen::Index kt, Eigen::Index ix) {
      return static_cast<int>(kt * bt / nt) * bx + static_cast<int>(ix * bx / nx);
    };
    std::vector<double> mass(bx * bt, 0.0), count(bx * bt, 0.0);
    const double total = I.values.sum();
    for (Eigen::Index kt = 0; kt < nt; ++kt) {
      for (Eigen::Index ix = 0; ix < nx; ++ix) mass[static_cast<std::size_t>(block(kt, ix))] += I.values(kt, ix) / total;
    }
    for (std::size_t d = 0; d < s.size(); ++d) {
      const auto ix = std::lower_bound(I.x.begin(), I.x.end(), s.x[d]) - I.x.begin();
      const auto kt = std::lower_bound(I.t.begin(), I.t.end(), s.t[d]) - I.t.begin();
      count[static_cast<std::size_t>(block(kt, ix))] += 1.0;
    }
    double chi2 = 0.0, pool_e = 0.0, pool_o = 0.0;
    int bins = 0;
    for (std::size_t b = 0; b < mass.size(); ++b) {
      const double e = mass[b] * draws;
      if (e < 5.0) {
        pool_e += e;
        pool_o += count[b];
        continue;
      }
      chi2 += (count[b] - e) * (count[b] - e) / e;
      ++bins;
    }
    if (pool_e > 0.0) {
      chi2 += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
      ++bins;
    }
    const double crit = chi2_quantile_999(bins - 1);
    pass = pass && chi2 < crit;
    detail += fmt("%s%s chi2 %.1f on %d dof (0.999 quantile %.1f)", detail.empty() ? "" : "; ", name, chi2, bins - 1,
                  crit);
  }
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// A12: initial effective reproduction numbers.

// Closed form over the real line for Gaussian hot spots a_i exp(-(x - x_i)^2):
// int beta S I and int gamma I with S = 1 - I and beta = b0 + b1 sin(k x).
double rt_closed_form(const std::vector<Hotspot>& spots, double b0, double b1, double k, double gamma) {
  const double sp = std::sqrt(std::numbers::pi);
  double I1 = 0.0, bI = 0.0, bII = 0.0;
  for (const auto& a : spots) {
    I1 += a.amplitude * sp;
    bI += a.amplitude * sp * (b0 + b1 * std::sin(k * a.center) * std::exp(-k * k / 4.0));
    for (const auto& b : spots) {
      const double m = 0.5 * (a.center + b.center);
      const double w = a.amplitude * b.amplitude * std::exp(-0.5 * (a.center - b.center) * (a.center - b.center)) *
                       std::sqrt(std::numbers::pi / 2.0);
      bII += w * (b0 + b1 * std::sin(k * m) * std::exp(-k * k / 8.0));
    }
  }
  return (bI - bII) / (gamma * I1);
}

Outcome a12() {
  struct Case {
    const char* name;
    double target;
    double tol;
  };
  // Both targets are the stated values; the band is the one given for Test 4.
  const Case cases[] = {{"test3a-inference", 2.0, 0.01}, {"test4b-inference", 1.05, 0.01}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const ScenarioConfig cfg = find_scenario(c.name);
    const Trajectory traj = generate_ground_truth(cfg);
    const Eigen::MatrixXd u = traj.point_values(0);
    const auto& spec = std::get<SIRSpec>(cfg.model);
    std::vector<double> S(u.cols()), I(u.cols()), beta(u.cols()), gamma(u.cols(), spec.gamma.value);
    for (Eigen::Index i = 0; i < u.cols(); ++i) {
      S[static_cast<std::size_t>(i)] = u(0, i);
      I[static_cast<std::size_t>(i)] = u(1, i);
      beta[static_cast<std::size_t>(i)] = spec.transmission(traj.grid.center(static_cast<int>(i)));
    }
    const double rt = effective_reproduction_number(S, I, beta, gamma, traj.grid.dx()).value();
    const double b0 = spec.spatial_beta ? spec.beta0.value : spec.beta.value;
    const double b1 = spec.spatial_beta ? spec.beta1.value : 0.0;
    const double k = spec.spatial_beta ? spec.zeta.value * std::numbers::pi : 0.0;
    const double oracle = rt_closed_form(cfg.ic.hotspots, b0, b1, k, spec.gamma.value);
    const bool quad_ok = std::abs(rt - oracle) < 1e-4;
    const bool ok = std::abs(rt - c.target) <= c.tol;
    pass = pass && ok && quad_ok;
    detail += fmt("%s%s R_t(0) %.5f (closed form %.5f) vs %.2f +- %.2f%s", detail.empty() ? "" : "; ", c.name, rt,
                  oracle, c.target, c.tol, ok ? "" : " OUT OF BAND");
  }
  return {pass, detail};
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"A1", "AP residual identities", a1},
      {"A2", "loss gradients vs finite differences", a2},
      {"A3", "reference solver conserves population", a3},
      {"A4", "reference solver diffusive limit", a4},
      {"A5", "reference solver second-order convergence", a5},
      {"A6", "Test 1 inverse, AP network, desk scale", a6},
      {"A7", "Test 1 inverse, standard residual fails", a7},
      {"A8", "Test 2(b) source inference, desk scale", a8},
      {"A9", "Test 3 beta/gamma inference, desk scale", a9},
      {"A10", "Test 3.2(b) forecast improves with longer window", a10},
      {"A11", "importance sampling chi-squared", a11},
      {"A12", "initial reproduction numbers", a12},
  };
  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(all.begin(), all.end(), [&](const Criterion& c) { return w == c.id; })) {
      std::fprintf(stderr, "unknown criterion %s\n", w.c_str());
      return 2;
    }
  }
  fs::create_directories(output_root());
  std::ofstream log(fs::path(output_root()) / "results.txt", std::ios::app);
  int failed = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const std::string line = fmt("%-4s %s  %s: %s", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str());
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    log << line << '\n';
    log.flush();
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
