#include "apnn/refsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "apnn/error.hpp"

namespace apnn {

void Grid1D::validate() const {
  if (!(std::isfinite(a) && std::isfinite(b) && b > a)) throw ConfigError("grid: need b > a");
  if (cells < 4) throw ConfigError("grid: need at least 4 cells");
}

Eigen::VectorXd cell_averages(const InitialField& f, const Grid1D& grid) {
  // Three-point Gauss-Legendre on [-1/2, 1/2].
  static const double node = 0.5 * std::sqrt(3.0 / 5.0);
  const double h = grid.dx();
  Eigen::VectorXd out(grid.cells);
  for (int i = 0; i < grid.cells; ++i) {
    const double xc = grid.center(i);
    out[i] = (5.0 * f(xc - node * h) + 8.0 * f(xc) + 5.0 * f(xc + node * h)) / 18.0;
  }
  return out;
}

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

/// One relaxation pair U_t + J_x = Ru, tau J_t + D U_x + J = tau Rj, written
/// with the penalized speed mu = min(lambda^2, reference^2):
///   explicit:  U_t + J_x = Ru,  J_t + mu U_x = Rj
///   implicit:  J_t = -((D - tau mu) U_x + J) / tau
struct Pair {
  int u_row = 0;
  int j_row = 1;
  double tau = 0.0;
  double diffusion = 0.0;
  double mu = 0.0;
};

class Solver {
 public:
  Solver(const ModelSpec& spec, const Grid1D& grid, const SolverConfig& cfg)
      : spec_(spec), grid_(grid), cfg_(cfg), n_(grid.cells), dx_(grid.dx()) {
    const double ref2 = cfg.reference_speed * cfg.reference_speed;
    if (const auto* gt = std::get_if<GTSpec>(&spec)) {
      gt->validate();
      Pair p;
      p.u_row = 0;
      p.j_row = 1;
      p.tau = gt->eps * gt->eps / gt->sigma.value;
      p.diffusion = gt->diffusion();
      p.mu = std::min(gt->c * gt->c / (gt->eps * gt->eps), ref2);
      pairs_.push_back(p);
      source_.resize(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) source_[static_cast<std::size_t>(i)] = gt->kappa(grid.center(i));
    } else {
      const auto& sir = std::get<SIRSpec>(spec);
      sir.validate();
      for (int k = 0; k < 3; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        Pair p;
        p.u_row = k;
        p.j_row = k + 3;
        p.tau = sir.tau[kk];
        p.diffusion = sir.diffusion(k);
        p.mu = p.tau > 0.0 ? std::min(sir.lambda[kk] * sir.lambda[kk], ref2) : 0.0;
        pairs_.push_back(p);
      }
      const SIRCoeffs<double> c0 = sir_coeffs_fixed(sir, grid.a);
      ratio_is_ = c0.speed_ratio_is;
      ratio_ri_ = c0.speed_ratio_ri;
      gamma_ = sir.gamma.value;
      beta_.resize(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) beta_[static_cast<std::size_t>(i)] = sir.transmission(grid.center(i));
    }
  }

  int rows() const { return std::holds_alternative<GTSpec>(spec_) ? 2 : 6; }

  double stable_dt() const {
    double dt = std::numeric_limits<double>::infinity();
    for (const Pair& p : pairs_) {
      if (p.mu > 0.0) dt = std::min(dt, cfg_.cfl_hyperbolic * dx_ / std::sqrt(p.mu));
      const double d_eff = p.diffusion - p.tau * p.mu;
      if (d_eff > 0.0) dt = std::min(dt, cfg_.cfl_parabolic * dx_ * dx_ / (2.0 * d_eff));
    }
    double rate = 0.0;
    for (double k : source_) rate = std::max(rate, std::abs(k));
    for (double b : beta_) rate = std::max(rate, std::abs(b));
    rate = std::max(rate, std::abs(gamma_));
    if (rate > 0.0) dt = std::min(dt, cfg_.reaction_cfl / rate);
    return dt;
  }

  /// Explicit right-hand side: transport of both pair members plus reactions.
  void explicit_rhs(const Eigen::MatrixXd& y, Eigen::MatrixXd& out) const {
    out.setZero(y.rows(), y.cols());
    std::vector<double> su(static_cast<std::size_t>(n_)), sj(static_cast<std::size_t>(n_));
    std::vector<double> fu(static_cast<std::size_t>(n_)), fj(static_cast<std::size_t>(n_));
    for (const Pair& p : pairs_) {
      const auto u = y.row(p.u_row);
      const auto j = y.row(p.j_row);
      for (int i = 0; i < n_; ++i) {
        const int im = (i + n_ - 1) % n_;
        const int ip = (i + 1) % n_;
        su[static_cast<std::size_t>(i)] = minmod(u[i] - u[im], u[ip] - u[i]);
        sj[static_cast<std::size_t>(i)] = minmod(j[i] - j[im], j[ip] - j[i]);
      }
      const double speed = std::sqrt(p.mu);
      // Interface i+1/2 between cells i and i+1.
      for (int i = 0; i < n_; ++i) {
        const int ip = (i + 1) % n_;
        const auto si = static_cast<std::size_t>(i);
        const auto sp = static_cast<std::size_t>(ip);
        const double uL = u[i] + 0.5 * su[si];
        const double uR = u[ip] - 0.5 * su[sp];
        const double jL = j[i] + 0.5 * sj[si];
        const double jR = j[ip] - 0.5 * sj[sp];
        fu[si] = 0.5 * (jL + jR) - 0.5 * speed * (uR - uL);
        fj[si] = 0.5 * p.mu * (uL + uR) - 0.5 * speed * (jR - jL);
      }
      const double inv_dx = 1.0 / dx_;
      for (int i = 0; i < n_; ++i) {
        const auto si = static_cast<std::size_t>(i);
        const auto sm = static_cast<std::size_t>((i + n_ - 1) % n_);
        out(p.u_row, i) = -(fu[si] - fu[sm]) * inv_dx;
        out(p.j_row, i) = -(fj[si] - fj[sm]) * inv_dx;
      }
    }
    add_reactions(y, out);
  }

  void add_reactions(const Eigen::MatrixXd& y, Eigen::MatrixXd& out) const {
    if (std::holds_alternative<GTSpec>(spec_)) {
      for (int i = 0; i < n_; ++i) out(0, i) += source_[static_cast<std::size_t>(i)] * y(0, i);
      return;
    }
    for (int i = 0; i < n_; ++i) {
      const double b = beta_[static_cast<std::size_t>(i)];
      const double S = y(0, i);
      const double I = y(1, i);
      const double JS = y(3, i);
      const double JI = y(4, i);
      const double infection = b * S * I;
      const double recovery = gamma_ * I;
      out(0, i) += -infection;
      out(1, i) += infection - recovery;
      out(2, i) += recovery;
      // Flux couplings; they carry the tau factor of the scaled equations,
      // which cancels against 1/tau here.
      if (pairs_[0].tau > 0.0) out(3, i) += -b * JS * I;
      if (pairs_[1].tau > 0.0) out(4, i) += ratio_is_ * b * JS * I - gamma_ * JI;
      if (pairs_[2].tau > 0.0) out(5, i) += ratio_ri_ * gamma_ * JI;
    }
  }

  /// Solves y = y_star + h F_I(y) in place (only flux rows change).
  void implicit_solve(Eigen::MatrixXd& y, double h) const {
    const double inv_2dx = 0.5 / dx_;
    for (const Pair& p : pairs_) {
      const double d_eff = p.diffusion - p.tau * p.mu;
      for (int i = 0; i < n_; ++i) {
        const int im = (i + n_ - 1) % n_;
        const int ip = (i + 1) % n_;
        const double ux = (y(p.u_row, ip) - y(p.u_row, im)) * inv_2dx;
        if (p.tau > 0.0) {
          const double k = h / p.tau;
          y(p.j_row, i) = (y(p.j_row, i) - k * d_eff * ux) / (1.0 + k);
        } else {
          y(p.j_row, i) = -d_eff * ux;
        }
      }
    }
  }

  /// One ARS(2,2,2) step. Stiffly accurate: the new state is the last stage.
  void step(Eigen::MatrixXd& y, double dt) {
    static const double g = 1.0 - 1.0 / std::numbers::sqrt2;
    static const double d = 1.0 - 1.0 / (2.0 * g);
    explicit_rhs(y, k1_);
    y2_ = y + (dt * g) * k1_;
    ystar_ = y2_;
    implicit_solve(y2_, dt * g);
    ki2_ = (y2_ - ystar_) / (dt * g);
    explicit_rhs(y2_, k2_);
    y3_ = y + dt * (d * k1_ + (1.0 - d) * k2_) + (dt * (1.0 - g)) * ki2_;
    implicit_solve(y3_, dt * g);
    y.swap(y3_);
  }

 private:
  const ModelSpec& spec_;
  Grid1D grid_;
  SolverConfig cfg_;
  int n_;
  double dx_;
  std::vector<Pair> pairs_;
  std::vector<double> source_;
  std::vector<double> beta_;
  double gamma_ = 0.0;
  double ratio_is_ = 1.0;
  double ratio_ri_ = 1.0;
  Eigen::MatrixXd k1_, k2_, ki2_, y2_, y3_, ystar_;
};

void check_finite(const Eigen::MatrixXd& y, double t) {
  for (Eigen::Index i = 0; i < y.cols(); ++i) {
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      if (!std::isfinite(y(r, i))) {
        std::ostringstream os;
        os << "refsolver: non-finite state (component " << r << ", cell " << i << ") at t=" << t;
        throw NumericalError(os.str());
      }
    }
  }
}

}  // namespace

Trajectory imex_fv_solve(const ModelSpec& spec, const Grid1D& grid, const Eigen::MatrixXd& initial,
                         const std::vector<double>& report_times, const SolverConfig& config) {
  grid.validate();
  Solver solver(spec, grid, config);
  if (initial.rows() != solver.rows() || initial.cols() != grid.cells) {
    throw ConfigError("refsolver: initial state has the wrong shape");
  }
  if (report_times.empty() || report_times.front() != 0.0) {
    throw ConfigError("refsolver: report times must start at 0");
  }
  for (std::size_t k = 1; k < report_times.size(); ++k) {
    if (!(report_times[k] > report_times[k - 1])) {
      throw ConfigError("refsolver: report times must be strictly increasing");
    }
  }
  check_finite(initial, 0.0);

  Trajectory traj;
  traj.spec = spec;
  traj.grid = grid;
  traj.config = config;
  traj.times = report_times;
  traj.states.reserve(report_times.size());
  traj.states.push_back(initial);

  const double dt_max = solver.stable_dt();
  if (!(dt_max >= config.min_dt)) throw NumericalError("refsolver: time step underflow");
  Eigen::MatrixXd y = initial;
  for (std::size_t k = 1; k < report_times.size(); ++k) {
    const double span = report_times[k] - report_times[k - 1];
    const double steps_real = std::ceil(span / dt_max * (1.0 - 1e-12));
    const long steps = std::max(1L, static_cast<long>(steps_real));
    const double dt = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      solver.step(y, dt);
    }
    check_finite(y, report_times[k]);
    traj.total_steps += steps;
    traj.dt_history.push_back(dt);
    traj.states.push_back(y);
  }
  return traj;
}

// ---------------------------------------------------------------------------

namespace {

void lagrange4(double s, double w[4]) {
  // Nodes at -1, 0, 1, 2.
  w[0] = -s * (s - 1.0) * (s - 2.0) / 6.0;
  w[1] = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  w[2] = -(s + 1.0) * s * (s - 2.0) / 2.0;
  w[3] = (s + 1.0) * s * (s - 1.0) / 6.0;
}

}  // namespace

Eigen::MatrixXd Trajectory::point_values(std::size_t k) const {
  const Eigen::MatrixXd& avg = states.at(k);
  const Eigen::Index n = avg.cols();
  Eigen::MatrixXd out(avg.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index im = (i + n - 1) % n;
    const Eigen::Index ip = (i + 1) % n;
    out.col(i) = avg.col(i) - (avg.col(ip) - 2.0 * avg.col(i) + avg.col(im)) / 24.0;
  }
  return out;
}

double Trajectory::point_value(int comp, double x, double t) const {
  if (states.empty()) throw MisuseError("trajectory is empty");
  if (comp < 0 || comp >= components()) throw ConfigError("trajectory: component out of range");
  const double tol = 1e-12 * std::max(1.0, std::abs(times.back()));
  if (t < times.front() - tol || t > times.back() + tol) {
    throw ConfigError("trajectory: time " + std::to_string(t) + " outside the solved horizon");
  }
  const int n = grid.cells;
  const double s = (x - grid.a) / grid.dx() - 0.5;
  const double fl = std::floor(s);
  const double theta = s - fl;
  const long base = static_cast<long>(fl);
  double wx[4];
  lagrange4(theta, wx);
  auto cell = [&](long i) { return static_cast<Eigen::Index>(((i % n) + n) % n); };

  auto spatial = [&](std::size_t k) {
    const Eigen::MatrixXd& avg = states[k];
    double v = 0.0;
    for (int m = 0; m < 4; ++m) {
      const long i = base - 1 + m;
      const double c = avg(comp, cell(i));
      const double lap = avg(comp, cell(i + 1)) - 2.0 * c + avg(comp, cell(i - 1));
      v += wx[m] * (c - lap / 24.0);
    }
    return v;
  };

  const std::size_t nt = times.size();
  if (nt == 1) return spatial(0);
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  long k = static_cast<long>(it - times.begin()) - 1;
  k = std::clamp(k, 0L, static_cast<long>(nt) - 1);
  if (times[static_cast<std::size_t>(k)] == t) return spatial(static_cast<std::size_t>(k));
  const long width = std::min<long>(4, static_cast<long>(nt));
  const long start = std::clamp(k - 1, 0L, static_cast<long>(nt) - width);
  double v = 0.0;
  for (long m = 0; m < width; ++m) {
    const auto km = static_cast<std::size_t>(start + m);
    double w = 1.0;
    for (long q = 0; q < width; ++q) {
      if (q == m) continue;
      const auto kq = static_cast<std::size_t>(start + q);
      w *= (t - times[kq]) / (times[km] - times[kq]);
    }
    v += w * spatial(km);
  }
  return v;
}

// ---------------------------------------------------------------------------

double analytic_heat_solution(double x, double t, double c, double sigma, const HeatMode& mode) {
  const double k = mode.wavenumber * std::numbers::pi;
  return mode.mean + mode.amplitude * std::cos(k * x) * std::exp(-(c * c / sigma) * k * k * t);
}

double analytic_heat_flux(double x, double t, double c, double sigma, const HeatMode& mode) {
  const double k = mode.wavenumber * std::numbers::pi;
  const double d = c * c / sigma;
  return d * mode.amplitude * k * std::sin(k * x) * std::exp(-d * k * k * t);
}

double analytic_heat_cell_average(double x, double h, double t, double c, double sigma,
                                  const HeatMode& mode) {
  const double k = mode.wavenumber * std::numbers::pi;
  const double half = 0.5 * k * h;
  const double factor = half == 0.0 ? 1.0 : std::sin(half) / half;
  return mode.mean + mode.amplitude * factor * std::cos(k * x) *
                         std::exp(-(c * c / sigma) * k * k * t);
}

}  // namespace apnn
