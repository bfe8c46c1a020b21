#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "apnn/jet.hpp"

namespace apnn {

/// A physical constant; learnable ones are inferred and start at initial_guess.
struct Parameter {
  std::string name;
  double value = 0.0;
  bool learnable = false;
  double initial_guess = 0.0;
};

/// Goldstein-Taylor system in macroscopic form, optionally with the source
/// kappa(x) rho, kappa(x) = kappa0 + kappa1 sin(kappa2 pi x).
struct GTSpec {
  double eps = 1.0;
  double c = 1.0;
  Parameter sigma{"sigma", 1.0};
  bool source = false;
  Parameter kappa0{"kappa0", 0.0};
  Parameter kappa1{"kappa1", 0.0};
  Parameter kappa2{"kappa2", 0.0};

  void validate() const;
  double diffusion() const { return c * c / sigma.value; }
  double kappa(double x) const {
    return source ? kappa0.value + kappa1.value * std::sin(kappa2.value * std::numbers::pi * x) : 0.0;
  }
};

/// Hyperbolic SIR transport model. Index 0, 1, 2 = S, I, R. Relaxation times
/// and speeds are spatially uniform; D_i = lambda_i^2 tau_i.
struct SIRSpec {
  std::array<double, 3> tau{1.0, 1.0, 1.0};
  std::array<double, 3> lambda{1.0, 1.0, 1.0};
  bool spatial_beta = false;
  Parameter beta{"beta", 12.0};
  Parameter beta0{"beta0", 0.0};
  Parameter beta1{"beta1", 0.0};
  Parameter zeta{"zeta", 0.0};
  Parameter gamma{"gamma", 6.0};

  void validate() const;
  double diffusion(int i) const {
    const auto k = static_cast<std::size_t>(i);
    return lambda[k] * lambda[k] * tau[k];
  }
  double transmission(double x) const {
    return spatial_beta ? beta0.value + beta1.value * std::sin(zeta.value * std::numbers::pi * x)
                        : beta.value;
  }
};

using ModelSpec = std::variant<GTSpec, SIRSpec>;

/// Number of macroscopic state components (GT: rho, j; SIR: S, I, R, J_S, J_I, J_R).
int state_dim(const ModelSpec& spec);
std::vector<std::string> component_names(const ModelSpec& spec);
/// Every physical parameter of the model, in canonical order.
std::vector<const Parameter*> all_parameters(const ModelSpec& spec);
/// The learnable ones, in the order they are stored in NetworkParams.
std::vector<const Parameter*> learnable_parameters(const ModelSpec& spec);
Parameter* find_parameter(ModelSpec& spec, const std::string& name);

// ---------------------------------------------------------------------------
// Coefficients at one point, generic over the scalar type so that learnable
// parameters may be tape variables.

template <class T>
struct GTCoeffs {
  double eps = 1.0;
  double c = 1.0;
  T sigma{};
  T kappa{};  // kappa(x) at the point; zero without source
};

template <class T>
struct SIRCoeffs {
  std::array<double, 3> tau{};
  std::array<double, 3> diffusion{};
  double speed_ratio_is = 1.0;  // lambda_I / lambda_S
  double speed_ratio_ri = 1.0;  // lambda_R / lambda_I
  T beta{};
  T gamma{};
};

/// Resolves model parameters at `x`: learnable ones are taken in order from
/// `learnables`, fixed ones go through `make_const`.
template <class T, class MakeConst>
GTCoeffs<T> gt_coeffs(const GTSpec& spec, std::span<const T> learnables, double x,
                      MakeConst make_const) {
  using std::sin;
  std::size_t k = 0;
  auto get = [&](const Parameter& p) -> T {
    return p.learnable ? learnables[k++] : make_const(p.value);
  };
  GTCoeffs<T> c;
  c.eps = spec.eps;
  c.c = spec.c;
  c.sigma = get(spec.sigma);
  if (spec.source) {
    T k0 = get(spec.kappa0);
    T k1 = get(spec.kappa1);
    T k2 = get(spec.kappa2);
    c.kappa = k0 + k1 * sin(k2 * (std::numbers::pi * x));
  } else {
    c.kappa = make_const(0.0);
  }
  return c;
}

SIRCoeffs<double> sir_coeffs_fixed(const SIRSpec& spec, double x);

template <class T, class MakeConst>
SIRCoeffs<T> sir_coeffs(const SIRSpec& spec, std::span<const T> learnables, double x,
                        MakeConst make_const) {
  using std::sin;
  std::size_t k = 0;
  auto get = [&](const Parameter& p) -> T {
    return p.learnable ? learnables[k++] : make_const(p.value);
  };
  const SIRCoeffs<double> fixed = sir_coeffs_fixed(spec, x);
  SIRCoeffs<T> c;
  c.tau = fixed.tau;
  c.diffusion = fixed.diffusion;
  c.speed_ratio_is = fixed.speed_ratio_is;
  c.speed_ratio_ri = fixed.speed_ratio_ri;
  if (spec.spatial_beta) {
    T b0 = get(spec.beta0);
    T b1 = get(spec.beta1);
    T z = get(spec.zeta);
    c.beta = b0 + b1 * sin(z * (std::numbers::pi * x));
  } else {
    c.beta = get(spec.beta);
  }
  c.gamma = get(spec.gamma);
  return c;
}

// ---------------------------------------------------------------------------
// Residuals

/// AP residual of the macroscopic GT system:
///   R(rho) = rho_t + j_x - kappa rho
///   R(j)   = eps^2 j_t + c^2 rho_x + sigma j
/// At eps = 0 this is the residual of the diffusion limit.
template <class T>
std::array<T, 2> residual_gt_ap(const ad::BasicJet<T>& rho, const ad::BasicJet<T>& j,
                                const GTCoeffs<T>& k) {
  T r_rho = rho.d_t + j.d_x - k.kappa * rho.value;
  T r_j = (k.eps * k.eps) * j.d_t + (k.c * k.c) * rho.d_x + k.sigma * j.value;
  return {r_rho, r_j};
}

/// Residual of the kinetic (f+, f-) form scaled by eps^2:
///   R(f+-) = eps^2 f+-_t +- eps c f+-_x - sigma/2 (f-+ - f+-) - eps^2 kappa f+-
template <class T>
std::array<T, 2> residual_gt_standard(const ad::BasicJet<T>& fp, const ad::BasicJet<T>& fm,
                                      const GTCoeffs<T>& k) {
  const double e2 = k.eps * k.eps;
  const double ec = k.eps * k.c;
  T half_sigma = k.sigma * 0.5;
  T r_p = e2 * fp.d_t + ec * fp.d_x - half_sigma * (fm.value - fp.value) - e2 * (k.kappa * fp.value);
  T r_m = e2 * fm.d_t - ec * fm.d_x - half_sigma * (fp.value - fm.value) - e2 * (k.kappa * fm.value);
  return {r_p, r_m};
}

/// AP residual of the SIR transport model, flux equations premultiplied by
/// tau_i. Components: S, I, R, J_S, J_I, J_R. Coupling terms carrying a tau_i
/// factor are dropped when tau_i = 0.
template <class T>
std::array<T, 6> residual_sir_ap(const std::array<ad::BasicJet<T>, 6>& u, const SIRCoeffs<T>& k) {
  const auto& S = u[0];
  const auto& I = u[1];
  const auto& R = u[2];
  const auto& JS = u[3];
  const auto& JI = u[4];
  const auto& JR = u[5];
  T infection = k.beta * S.value * I.value;
  T recovery = k.gamma * I.value;
  std::array<T, 6> r;
  r[0] = S.d_t + JS.d_x + infection;
  r[1] = I.d_t + JI.d_x - infection + recovery;
  r[2] = R.d_t + JR.d_x - recovery;

  T rs = k.diffusion[0] * S.d_x + JS.value;
  if (k.tau[0] != 0.0) rs = rs + k.tau[0] * JS.d_t + k.tau[0] * (k.beta * JS.value * I.value);
  r[3] = rs;

  T ri = k.diffusion[1] * I.d_x + JI.value;
  if (k.tau[1] != 0.0) {
    ri = ri + k.tau[1] * JI.d_t -
         (k.tau[1] * k.speed_ratio_is) * (k.beta * JS.value * I.value) +
         k.tau[1] * (k.gamma * JI.value);
  }
  r[4] = ri;

  T rr = k.diffusion[2] * R.d_x + JR.value;
  if (k.tau[2] != 0.0) {
    rr = rr + k.tau[2] * JR.d_t - (k.tau[2] * k.speed_ratio_ri) * (k.gamma * JI.value);
  }
  r[5] = rr;
  return r;
}

// ---------------------------------------------------------------------------
// Kinetic <-> macroscopic GT variables.

struct KineticPair {
  double f_plus = 0.0;
  double f_minus = 0.0;
};

inline KineticPair to_kinetic(double rho, double j, double eps, double c) {
  return {0.5 * (rho + eps * j / c), 0.5 * (rho - eps * j / c)};
}

inline std::array<double, 2> to_macro(double f_plus, double f_minus, double eps, double c) {
  return {f_plus + f_minus, c * (f_plus - f_minus) / eps};
}

// ---------------------------------------------------------------------------
// Grid functionals on a uniform periodic grid (nodes exclude the right end).

/// Fick's law J = -D d(density)/dx with second-order periodic differences.
std::vector<double> fick_equilibrium_flux(std::span<const double> density, double diffusion,
                                          double dx);

/// Composite trapezoid over one period, which on periodic data is the
/// rectangle rule.
double periodic_trapezoid(std::span<const double> f, double dx);

/// R_t = int beta S I dx / int gamma I dx; empty when the denominator is below 1e-14.
std::optional<double> effective_reproduction_number(std::span<const double> S,
                                                    std::span<const double> I,
                                                    std::span<const double> beta,
                                                    std::span<const double> gamma, double dx);

double total_population(std::span<const double> S, std::span<const double> I,
                        std::span<const double> R, double dx);

}  // namespace apnn
