#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "apnn/error.hpp"
#include "apnn/network.hpp"
#include "apnn/rng.hpp"
#include "apnn/tape.hpp"

using namespace apnn;

namespace {

NetworkArch small_arch(Activation act) {
  NetworkArch a;
  a.depth = 4;
  a.width = 7;
  a.output_dim = 3;
  a.activation = act;
  a.embedding = PeriodicEmbedding{2.0, 3.0};
  a.t_min = 0.5;
  a.t_max = 2.5;
  return a;
}

}  // namespace

TEST_SUITE("network") {
  TEST_CASE("parameter count of the default architecture") {
    NetworkArch a;
    a.embedding = PeriodicEmbedding{1.0, 2.0};
    // 3 -> 32, six 32 -> 32, 32 -> 2
    CHECK(a.weight_count() == (3 * 32 + 32) + 6 * (32 * 32 + 32) + (32 * 2 + 2));
    const NetworkParams p = init_params(a, 1, {{"sigma", 2.0}});
    CHECK(p.values.size() == static_cast<Eigen::Index>(a.weight_count() + 1));
    CHECK(p.physical(0) == 2.0);
    CHECK(p.physical_index("sigma") == 0);
    CHECK(p.physical_index("gamma") == -1);
  }

  TEST_CASE("initialization is deterministic and seed dependent") {
    const NetworkArch a = small_arch(Activation::sin);
    const NetworkParams p1 = init_params(a, 11);
    const NetworkParams p2 = init_params(a, 11);
    const NetworkParams p3 = init_params(a, 12);
    CHECK(p1.values == p2.values);
    CHECK(p1.values != p3.values);
  }

  TEST_CASE("tanh networks start with zero biases and Glorot bounds") {
    const NetworkArch a = small_arch(Activation::tanh);
    const NetworkParams p = init_params(a, 3);
    for (int l = 0; l < a.depth; ++l) {
      CHECK(p.bias(l).isZero());
      const double bound = std::sqrt(6.0 / (p.sizes[static_cast<std::size_t>(l)] + p.sizes[static_cast<std::size_t>(l + 1)]));
      CHECK(p.weight(l).cwiseAbs().maxCoeff() <= bound);
    }
  }

  TEST_CASE("periodic embedding has period L / alpha") {
    const NetworkArch a = small_arch(Activation::sin);
    const NetworkParams p = init_params(a, 5);
    const double period = 3.0 / 2.0;
    for (double x : {-1.2, 0.0, 0.77}) {
      const auto u = evaluate_point(p, a, x, 1.1);
      const auto v = evaluate_point(p, a, x + period, 1.1);
      for (int k = 0; k < a.output_dim; ++k) {
        CHECK(u[static_cast<std::size_t>(k)].value == doctest::Approx(v[static_cast<std::size_t>(k)].value).epsilon(1e-12));
        CHECK(u[static_cast<std::size_t>(k)].d_x == doctest::Approx(v[static_cast<std::size_t>(k)].d_x).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("batched forward pass agrees with the scalar reference") {
    for (Activation act : {Activation::sin, Activation::tanh}) {
      const NetworkArch a = small_arch(act);
      const NetworkParams p = init_params(a, 9);
      Rng rng(2);
      std::vector<double> xs, ts;
      for (int i = 0; i < 13; ++i) {
        xs.push_back(rng.uniform(-3.0, 3.0));
        ts.push_back(rng.uniform(0.5, 2.5));
      }
      BatchTrace tr;
      forward_batch(p, a, xs, ts, true, tr);
      const std::span<const double> theta(p.values.data(), p.network_size());
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto ref = fnn_forward<double>(theta, p.sizes, a, xs[i], ts[i]);
        for (int k = 0; k < a.output_dim; ++k) {
          const auto ii = static_cast<Eigen::Index>(i);
          CHECK(tr.value(k, ii) == doctest::Approx(ref[static_cast<std::size_t>(k)].value).epsilon(1e-13));
          CHECK(tr.d_x(k, ii) == doctest::Approx(ref[static_cast<std::size_t>(k)].d_x).epsilon(1e-12));
          CHECK(tr.d_t(k, ii) == doctest::Approx(ref[static_cast<std::size_t>(k)].d_t).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("input partials match finite differences") {
    const NetworkArch a = small_arch(Activation::sin);
    const NetworkParams p = init_params(a, 4);
    const double x = 0.3;
    const double t = 1.4;
    const double h = 1e-6;
    const auto u = evaluate_point(p, a, x, t);
    const auto xp = evaluate_point(p, a, x + h, t);
    const auto xm = evaluate_point(p, a, x - h, t);
    const auto tp = evaluate_point(p, a, x, t + h);
    const auto tm = evaluate_point(p, a, x, t - h);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(u[k].d_x == doctest::Approx((xp[k].value - xm[k].value) / (2 * h)).epsilon(1e-7));
      CHECK(u[k].d_t == doctest::Approx((tp[k].value - tm[k].value) / (2 * h)).epsilon(1e-7));
    }
  }

  TEST_CASE("batched adjoint matches the taped scalar network") {
    for (Activation act : {Activation::sin, Activation::tanh}) {
      const NetworkArch a = small_arch(act);
      const NetworkParams p = init_params(a, 21);
      const std::vector<double> xs{0.4, -1.1};
      const std::vector<double> ts{0.9, 2.2};
      // Loss = sum over points and outputs of c1 u + c2 u_x + c3 u_t.
      Rng rng(8);
      Eigen::MatrixXd adj(a.output_dim, 3 * 2);
      for (Eigen::Index k = 0; k < adj.size(); ++k) adj.data()[k] = rng.uniform(-1.0, 1.0);
      BatchTrace tr;
      forward_batch(p, a, xs, ts, true, tr);
      Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p.network_size()));
      backward_batch(p, tr, adj, g);

      ad::Tape tape;
      std::vector<ad::Var> theta;
      for (std::size_t k = 0; k < p.network_size(); ++k) theta.push_back(tape.leaf(p.values[static_cast<Eigen::Index>(k)]));
      ad::Var loss = tape.constant(0.0);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto out = fnn_forward<ad::Var>(theta, p.sizes, a, xs[i], ts[i]);
        for (int k = 0; k < a.output_dim; ++k) {
          const auto ii = static_cast<Eigen::Index>(i);
          const auto& o = out[static_cast<std::size_t>(k)];
          loss = loss + adj(k, ii) * o.value + adj(k, 2 + ii) * o.d_x + adj(k, 4 + ii) * o.d_t;
        }
      }
      const auto ref = tape.reverse_gradient(loss, theta);
      double worst = 0.0;
      for (std::size_t k = 0; k < ref.size(); ++k) {
        worst = std::max(worst, std::abs(ref[k] - g[static_cast<Eigen::Index>(k)]) / (1e-12 + std::abs(ref[k])));
      }
      CHECK(worst < 1e-9);
    }
  }

  TEST_CASE("sin activation is accurate for large pre-activations") {
    // One hidden unit with a huge weight exercises the library fallback.
    NetworkArch a;
    a.depth = 3;
    a.width = 1;
    a.output_dim = 1;
    a.activation = Activation::sin;
    NetworkParams p = init_params(a, 1);
    p.values.setZero();
    p.weight(1)(0, 0) = 1.0;
    p.weight(2)(0, 0) = 1.0;
    for (double shift : {0.3, 7.0e3, 2.0e6}) {
      p.bias(0)(0) = shift;
      const auto u = evaluate_point(p, a, 0.0, 0.0);
      CHECK(u[0].value == doctest::Approx(std::sin(shift)).epsilon(1e-13));
    }
  }

  TEST_CASE("layout mismatches are configuration errors") {
    const NetworkArch a = small_arch(Activation::sin);
    NetworkParams p = init_params(a, 1);
    NetworkArch b = a;
    b.width = 8;
    CHECK_THROWS_AS(p.check_against(b), ConfigError);
    NetworkArch bad = a;
    bad.depth = 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = a;
    bad.t_max = bad.t_min;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
  }
}
