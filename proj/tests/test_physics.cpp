#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "apnn/error.hpp"
#include "apnn/physics.hpp"
#include "apnn/rng.hpp"

using namespace apnn;
using ad::Jet2;

namespace {

Jet2 random_jet(Rng& rng) { return {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}; }

const auto as_double = [](double v) { return v; };

}  // namespace

TEST_SUITE("physics") {
  TEST_CASE("GT AP residual: flux equation differs from its limit by eps^2 j_t only") {
    Rng rng(3);
    GTSpec spec;
    spec.sigma.value = 4.0;
    spec.source = true;
    spec.kappa1.value = 3.0;
    spec.kappa2.value = 4.0;
    for (double eps : {1.0, 1e-2, 1e-4}) {
      spec.eps = eps;
      const Jet2 rho = random_jet(rng);
      const Jet2 j = random_jet(rng);
      const double x = rng.uniform(-1.0, 1.0);
      auto k = gt_coeffs<double>(spec, std::span<const double>(), x, as_double);
      const auto r = residual_gt_ap(rho, j, k);
      k.eps = 0.0;
      const auto r0 = residual_gt_ap(rho, j, k);
      CHECK(r[0] == r0[0]);
      CHECK(r[1] - r0[1] == doctest::Approx(eps * eps * j.d_t).epsilon(1e-12));
      // The limit flux residual vanishes exactly on Fick's law.
      const Jet2 fick(-spec.diffusion() * rho.d_x, 0.0, 0.0);
      CHECK(std::abs(residual_gt_ap(rho, fick, k)[1]) < 1e-14);
    }
  }

  TEST_CASE("kinetic and macroscopic residuals describe the same system") {
    // eps^2 (R(f+) + R(f-)) relates to R(rho) and the difference to R(j).
    Rng rng(4);
    GTSpec spec;
    spec.eps = 0.3;
    spec.c = 1.5;
    spec.sigma.value = 2.0;
    auto k = gt_coeffs<double>(spec, std::span<const double>(), 0.0, as_double);
    const Jet2 fp = random_jet(rng);
    const Jet2 fm = random_jet(rng);
    const auto rk = residual_gt_standard(fp, fm, k);
    const Jet2 rho = fp + fm;
    const Jet2 j = (fp - fm) * (spec.c / spec.eps);
    const auto rm = residual_gt_ap(rho, j, k);
    CHECK(rk[0] + rk[1] == doctest::Approx(spec.eps * spec.eps * rm[0]).epsilon(1e-13));
    CHECK((rk[0] - rk[1]) * spec.c / spec.eps == doctest::Approx(rm[1]).epsilon(1e-13));
  }

  TEST_CASE("SIR AP residual reduces to the reaction-diffusion limit") {
    Rng rng(5);
    SIRSpec spec;
    spec.lambda = {2.0, 1.5, 3.0};
    spec.tau = {0.1, 0.2, 0.05};
    for (int trial = 0; trial < 10; ++trial) {
      std::array<Jet2, 6> u;
      for (auto& v : u) v = random_jet(rng);
      const auto k = sir_coeffs_fixed(spec, 0.0);
      auto k0 = k;
      k0.tau = {0.0, 0.0, 0.0};
      const auto r = residual_sir_ap(u, k);
      const auto r0 = residual_sir_ap(u, k0);
      for (int c = 0; c < 3; ++c) CHECK(r[static_cast<std::size_t>(c)] == r0[static_cast<std::size_t>(c)]);
      const double b = k.beta;
      const double g = k.gamma;
      CHECK(r[3] - r0[3] == doctest::Approx(0.1 * (u[3].d_t + b * u[3].value * u[1].value)).epsilon(1e-12));
      CHECK(r[4] - r0[4] == doctest::Approx(0.2 * (u[4].d_t - 0.75 * b * u[3].value * u[1].value + g * u[4].value)).epsilon(1e-12));
      CHECK(r[5] - r0[5] == doctest::Approx(0.05 * (u[5].d_t - 2.0 * g * u[4].value)).epsilon(1e-12));
    }
  }

  TEST_CASE("kinetic variables round trip") {
    const auto f = to_kinetic(6.3, -0.7, 1e-4, 1.0);
    const auto m = to_macro(f.f_plus, f.f_minus, 1e-4, 1.0);
    CHECK(m[0] == doctest::Approx(6.3).epsilon(1e-15));
    CHECK(m[1] == doctest::Approx(-0.7).epsilon(1e-9));
  }

  TEST_CASE("Fick flux of a sine is the scaled cosine") {
    const int n = 400;
    const double dx = 2.0 / n;
    std::vector<double> rho(n);
    for (int i = 0; i < n; ++i) rho[static_cast<std::size_t>(i)] = std::sin(std::numbers::pi * (-1.0 + i * dx));
    const auto j = fick_equilibrium_flux(rho, 0.5, dx);
    for (int i = 0; i < n; i += 37) {
      const double expected = -0.5 * std::numbers::pi * std::cos(std::numbers::pi * (-1.0 + i * dx));
      CHECK(j[static_cast<std::size_t>(i)] == doctest::Approx(expected).epsilon(1e-4));
    }
  }

  TEST_CASE("R_t equals beta / gamma when S is one") {
    const int n = 50;
    std::vector<double> S(n, 1.0), I(n), beta(n, 12.0), gamma(n, 6.0);
    for (int i = 0; i < n; ++i) I[static_cast<std::size_t>(i)] = 0.01 * std::exp(-(i - 20.0) * (i - 20.0) / 30.0);
    CHECK(*effective_reproduction_number(S, I, beta, gamma, 0.4) == doctest::Approx(2.0).epsilon(1e-15));
    std::vector<double> zero(n, 0.0);
    CHECK(!effective_reproduction_number(S, zero, beta, gamma, 0.4).has_value());
  }

  TEST_CASE("parameter bookkeeping") {
    SIRSpec s;
    s.spatial_beta = true;
    s.beta0 = {"beta0", 9.0, true, 5.0};
    s.beta1 = {"beta1", 2.5, true, 1.5};
    s.zeta = {"zeta", 0.55, true, 0.5};
    s.gamma = {"gamma", 8.0, false, 8.0};
    ModelSpec m = s;
    const auto learn = learnable_parameters(m);
    REQUIRE(learn.size() == 3);
    CHECK(learn[0]->name == "beta0");
    CHECK(learn[2]->name == "zeta");
    CHECK(component_names(m) == std::vector<std::string>{"S", "I", "R", "JS", "JI", "JR"});
    CHECK(find_parameter(m, "zeta")->value == 0.55);
    CHECK(find_parameter(m, "kappa0") == nullptr);
    CHECK(s.transmission(1.0) == doctest::Approx(9.0 + 2.5 * std::sin(0.55 * std::numbers::pi)));
  }

  TEST_CASE("invalid specs are rejected") {
    GTSpec g;
    g.eps = 0.0;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    g.eps = 1.0;
    g.kappa0.learnable = true;
    CHECK_THROWS_AS(g.validate(), ConfigError);
    SIRSpec s;
    s.lambda = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.lambda = {1.0, 1.0, 1.0};
    s.tau[0] = -1.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
  }
}
