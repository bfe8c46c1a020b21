#include "apnn/physics.hpp"

#include <cmath>
#include <limits>

#include "apnn/error.hpp"

namespace apnn {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void GTSpec::validate() const {
  require(std::isfinite(eps) && eps > 0.0, "GT: eps must be positive");
  require(std::isfinite(c) && c > 0.0, "GT: c must be positive");
  require(std::isfinite(sigma.value) && sigma.value > 0.0, "GT: sigma must be positive");
  for (const Parameter* p : {&sigma, &kappa0, &kappa1, &kappa2}) {
    require(std::isfinite(p->value) && std::isfinite(p->initial_guess),
            "GT: parameter " + p->name + " is not finite");
  }
  if (!source) {
    require(!kappa0.learnable && !kappa1.learnable && !kappa2.learnable,
            "GT: kappa is learnable but the source term is disabled");
  }
}

void SIRSpec::validate() const {
  static const char* names[] = {"S", "I", "R"};
  for (std::size_t i = 0; i < 3; ++i) {
    require(finite_nonneg(tau[i]), std::string("SIR: tau_") + names[i] + " must be >= 0");
    require(finite_nonneg(lambda[i]), std::string("SIR: lambda_") + names[i] + " must be >= 0");
  }
  // lambda_I / lambda_S and lambda_R / lambda_I enter the flux coupling terms.
  require(!(tau[1] > 0.0 && lambda[0] == 0.0), "SIR: lambda_S = 0 with active S->I flux coupling");
  require(!(tau[2] > 0.0 && lambda[1] == 0.0), "SIR: lambda_I = 0 with active I->R flux coupling");
  if (spatial_beta) {
    require(!beta.learnable, "SIR: constant beta is learnable but beta is spatial");
    for (const Parameter* p : {&beta0, &beta1, &zeta}) {
      require(std::isfinite(p->value), "SIR: parameter " + p->name + " is not finite");
    }
  } else {
    require(!beta0.learnable && !beta1.learnable && !zeta.learnable,
            "SIR: spatial beta coefficients are learnable but beta is constant");
    require(finite_nonneg(beta.value), "SIR: beta must be >= 0");
  }
  require(finite_nonneg(gamma.value), "SIR: gamma must be >= 0");
}

SIRCoeffs<double> sir_coeffs_fixed(const SIRSpec& spec, double x) {
  SIRCoeffs<double> c;
  for (int i = 0; i < 3; ++i) {
    c.tau[static_cast<std::size_t>(i)] = spec.tau[static_cast<std::size_t>(i)];
    c.diffusion[static_cast<std::size_t>(i)] = spec.diffusion(i);
  }
  if (spec.tau[1] > 0.0) {
    require(spec.lambda[0] != 0.0, "SIR: lambda_S = 0 with active coupling");
    c.speed_ratio_is = spec.lambda[1] / spec.lambda[0];
  }
  if (spec.tau[2] > 0.0) {
    require(spec.lambda[1] != 0.0, "SIR: lambda_I = 0 with active coupling");
    c.speed_ratio_ri = spec.lambda[2] / spec.lambda[1];
  }
  c.beta = spec.transmission(x);
  c.gamma = spec.gamma.value;
  return c;
}

int state_dim(const ModelSpec& spec) { return std::holds_alternative<GTSpec>(spec) ? 2 : 6; }

std::vector<std::string> component_names(const ModelSpec& spec) {
  if (std::holds_alternative<GTSpec>(spec)) return {"rho", "j"};
  return {"S", "I", "R", "JS", "JI", "JR"};
}

std::vector<const Parameter*> all_parameters(const ModelSpec& spec) {
  if (const auto* gt = std::get_if<GTSpec>(&spec)) {
    std::vector<const Parameter*> out{&gt->sigma};
    if (gt->source) {
      out.push_back(&gt->kappa0);
      out.push_back(&gt->kappa1);
      out.push_back(&gt->kappa2);
    }
    return out;
  }
  const auto& sir = std::get<SIRSpec>(spec);
  std::vector<const Parameter*> out;
  if (sir.spatial_beta) {
    out = {&sir.beta0, &sir.beta1, &sir.zeta};
  } else {
    out = {&sir.beta};
  }
  out.push_back(&sir.gamma);
  return out;
}

std::vector<const Parameter*> learnable_parameters(const ModelSpec& spec) {
  std::vector<const Parameter*> out;
  for (const Parameter* p : all_parameters(spec)) {
    if (p->learnable) out.push_back(p);
  }
  return out;
}

Parameter* find_parameter(ModelSpec& spec, const std::string& name) {
  for (const Parameter* p : all_parameters(spec)) {
    if (p->name == name) return const_cast<Parameter*>(p);
  }
  return nullptr;
}

std::vector<double> fick_equilibrium_flux(std::span<const double> density, double diffusion,
                                          double dx) {
  const std::size_t n = density.size();
  if (n < 3) throw ConfigError("fick_equilibrium_flux: need at least 3 grid values");
  if (!(dx > 0.0)) throw ConfigError("fick_equilibrium_flux: dx must be positive");
  std::vector<double> flux(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double left = density[(i + n - 1) % n];
    const double right = density[(i + 1) % n];
    flux[i] = -diffusion * (right - left) / (2.0 * dx);
  }
  return flux;
}

double periodic_trapezoid(std::span<const double> f, double dx) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * dx;
}

std::optional<double> effective_reproduction_number(std::span<const double> S,
                                                    std::span<const double> I,
                                                    std::span<const double> beta,
                                                    std::span<const double> gamma, double dx) {
  const std::size_t n = S.size();
  if (I.size() != n || beta.size() != n || gamma.size() != n) {
    throw ConfigError("effective_reproduction_number: field sizes differ");
  }
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    num += beta[i] * S[i] * I[i];
    den += gamma[i] * I[i];
  }
  num *= dx;
  den *= dx;
  if (!(std::abs(den) >= 1e-14)) return std::nullopt;
  return num / den;
}

double total_population(std::span<const double> S, std::span<const double> I,
                        std::span<const double> R, double dx) {
  if (I.size() != S.size() || R.size() != S.size()) {
    throw ConfigError("total_population: field sizes differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) s += S[i] + I[i] + R[i];
  return s * dx;
}

}  // namespace apnn
