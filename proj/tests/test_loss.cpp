#include <doctest.h>

#include <cmath>
#include <vector>

#include "apnn/error.hpp"
#include "apnn/loss.hpp"
#include "apnn/rng.hpp"
#include "apnn/training.hpp"

using namespace apnn;

namespace {

NetworkArch tiny(int out, Activation act, double length, double t_end) {
  NetworkArch a;
  a.depth = 4;
  a.width = 6;
  a.output_dim = out;
  a.activation = act;
  a.embedding = PeriodicEmbedding{1.0, length};
  a.t_max = t_end;
  return a;
}

PointSet random_points(Rng& rng, int n, double a, double b, double t1, std::vector<int> comps) {
  PointSet p;
  for (int i = 0; i < n; ++i) {
    p.x.push_back(rng.uniform(a, b));
    p.t.push_back(rng.uniform(0.0, t1));
  }
  p.components = std::move(comps);
  p.values.resize(static_cast<Eigen::Index>(p.components.size()), n);
  for (Eigen::Index k = 0; k < p.values.size(); ++k) p.values.data()[k] = rng.uniform(0.0, 1.0);
  return p;
}

struct Fixture {
  LossProblem problem;
  NetworkParams params;
  Dataset data;
};

Fixture gt_fixture(ResidualForm form) {
  Rng rng(10);
  GTSpec gt;
  gt.eps = 0.3;
  gt.sigma = {"sigma", 4.0, true, 2.0};
  gt.source = true;
  gt.kappa1 = {"kappa1", 3.0, true, 2.0};
  Fixture f;
  f.problem = {gt, tiny(2, Activation::sin, 2.0, 0.1), form, {{100.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}, 0.0}};
  f.params = init_params(f.problem.arch, 3, {{"sigma", 2.0}, {"kappa1", 2.0}});
  f.data.data_train = random_points(rng, 9, -1.0, 1.0, 0.1, {0});
  f.data.boundary = random_points(rng, 5, -1.0, 1.0, 0.0, {0, 1});
  f.data.residual_train = random_points(rng, 11, -1.0, 1.0, 0.1, {});
  return f;
}

Fixture sir_fixture() {
  Rng rng(11);
  SIRSpec s;
  s.tau = {0.2, 0.2, 0.2};
  s.lambda = {2.0, 1.5, 1.0};
  s.beta = {"beta", 12.0, true, 8.0};
  s.gamma = {"gamma", 6.0, true, 3.0};
  Fixture f;
  f.problem = {s, tiny(6, Activation::tanh, 20.0, 4.0), ResidualForm::ap,
               {{1, 100, 10, 0, 0, 0}, {1, 10, 1, 0, 0, 0}, {1, 10, 1, 1, 10, 1}, 1.0}};
  f.params = init_params(f.problem.arch, 4, {{"beta", 8.0}, {"gamma", 3.0}});
  f.data.data_train = random_points(rng, 7, 0.0, 20.0, 4.0, {0, 1, 2});
  f.data.boundary = random_points(rng, 6, 0.0, 20.0, 0.0, {0, 1, 2});
  f.data.residual_train = random_points(rng, 10, 0.0, 20.0, 4.0, {});
  f.data.conservation_times = {0.0, 1.0, 4.0};
  for (int q = 0; q < 8; ++q) f.data.quadrature_x.push_back(2.5 * q);
  f.data.quadrature_weight = 2.5;
  f.data.initial_population = 20.0;
  return f;
}

/// Worst relative deviation between the analytic gradient and a fourth-order
/// central difference over all components.
double gradient_mismatch(const Fixture& f) {
  const LossInputs in = training_inputs(f.data);
  Eigen::VectorXd g;
  assemble_loss(f.problem, f.params, in, &g);
  double worst = 0.0;
  NetworkParams p = f.params;
  for (Eigen::Index k = 0; k < p.values.size(); ++k) {
    const double h = 1e-4 * std::max(1.0, std::abs(p.values[k]));
    auto at = [&](double s) {
      p.values[k] = f.params.values[k] + s * h;
      return assemble_loss(f.problem, p, in).total;
    };
    const double fd = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * h);
    p.values[k] = f.params.values[k];
    worst = std::max(worst, std::abs(fd - g[k]) / std::max(1e-6, std::abs(g[k])));
  }
  return worst;
}

}  // namespace

TEST_SUITE("loss") {
  TEST_CASE("GT AP loss gradient matches finite differences") {
    CHECK(gradient_mismatch(gt_fixture(ResidualForm::ap)) < 1e-6);
  }

  TEST_CASE("GT kinetic loss gradient matches finite differences") {
    CHECK(gradient_mismatch(gt_fixture(ResidualForm::standard)) < 1e-6);
  }

  TEST_CASE("SIR loss gradient, conservation included, matches finite differences") {
    CHECK(gradient_mismatch(sir_fixture()) < 1e-6);
  }

  TEST_CASE("terms add up and zero weights drop terms") {
    Fixture f = sir_fixture();
    const auto br = assemble_loss(f.problem, f.params, training_inputs(f.data));
    CHECK(br.total == doctest::Approx(br.data + br.boundary + br.residual + br.conservation).epsilon(1e-15));
    CHECK(br.conservation > 0.0);
    CHECK(br.residual_terms[3] > 0.0);
    f.problem.weights.residual[3] = 0.0;
    f.problem.weights.conservation = 0.0;
    const auto b2 = assemble_loss(f.problem, f.params, training_inputs(f.data));
    CHECK(b2.residual_terms[3] == 0.0);
    CHECK(b2.conservation == 0.0);
  }

  TEST_CASE("data term is the weighted mean squared mismatch") {
    Fixture f = gt_fixture(ResidualForm::ap);
    LossInputs in;
    in.data = &f.data.data_train;
    in.residual = &f.data.residual_train;
    const auto br = assemble_loss(f.problem, f.params, in);
    const Eigen::MatrixXd out = predict_macro(f.problem, f.params, f.data.data_train.x, f.data.data_train.t);
    const double mse = (out.row(0) - f.data.data_train.values.row(0)).squaredNorm() / 9.0;
    CHECK(br.data == doctest::Approx(100.0 * mse).epsilon(1e-13));
  }

  TEST_CASE("kinetic density data compare f+ + f-") {
    Fixture f = gt_fixture(ResidualForm::standard);
    LossInputs in;
    in.data = &f.data.data_train;
    in.residual = &f.data.residual_train;
    const auto br = assemble_loss(f.problem, f.params, in);
    const Eigen::MatrixXd rho = predict_macro(f.problem, f.params, f.data.data_train.x, f.data.data_train.t);
    const double mse = (rho.row(0) - f.data.data_train.values.row(0)).squaredNorm() / 9.0;
    CHECK(br.data == doctest::Approx(100.0 * mse).epsilon(1e-12));
  }

  TEST_CASE("inconsistent problems are configuration errors") {
    Fixture f = gt_fixture(ResidualForm::ap);
    LossInputs in = training_inputs(f.data);
    PointSet empty;
    in.residual = &empty;
    CHECK_THROWS_AS(assemble_loss(f.problem, f.params, in), ConfigError);
    in = training_inputs(f.data);
    NetworkParams p = f.params;
    std::swap(p.physical_names[0], p.physical_names[1]);
    CHECK_THROWS_AS(assemble_loss(f.problem, p, in), ConfigError);
    CHECK_THROWS_AS(assemble_loss_sir(f.problem, f.params, in), ConfigError);
    LossWeights w = f.problem.weights;
    w.residual = {0.0, 0.0};
    CHECK_THROWS_AS(w.validate(2), ConfigError);
  }
}

TEST_SUITE("training") {
  TEST_CASE("first Adam step moves every coordinate by the learning rate") {
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    Eigen::VectorXd x(3);
    x << 1.0, -2.0, 0.5;
    Eigen::VectorXd g(3);
    g << 3.0, -1e-3, 40.0;
    AdamState st;
    adam_step(x, g, st, cfg);
    CHECK(x[0] == doctest::Approx(0.99).epsilon(1e-9));
    CHECK(x[1] == doctest::Approx(-1.99).epsilon(1e-6));
    CHECK(x[2] == doctest::Approx(0.49).epsilon(1e-9));
    g[1] = std::nan("");
    CHECK_THROWS_AS(adam_step(x, g, st, cfg), NumericalError);
  }

  TEST_CASE("Adam minimizes a quadratic") {
    TrainConfig cfg;
    cfg.learning_rate = 0.05;
    Eigen::VectorXd x = Eigen::VectorXd::Constant(4, 3.0);
    const Eigen::VectorXd target = Eigen::VectorXd::LinSpaced(4, -1.0, 1.0);
    AdamState st;
    for (int k = 0; k < 2000; ++k) adam_step(x, 2.0 * (x - target), st, cfg);
    CHECK((x - target).norm() < 1e-3);
  }

  TEST_CASE("training lowers the loss and logs every term") {
    Fixture f = gt_fixture(ResidualForm::ap);
    f.data.residual_validation = f.data.residual_train.subset({0, 1, 2});
    TrainConfig cfg;
    cfg.learning_rate = 1e-2;
    cfg.epochs = 60;
    const auto res = train(f.problem, f.data, f.params, cfg);
    const auto& h = res.history;
    CHECK(h.epochs_run == 60);
    CHECK(h.size() == 60);
    CHECK(h.total.back() < h.total.front());
    CHECK(h.term_names.size() == 4 + 3 * 2);
    CHECK(h.physical_names == std::vector<std::string>{"sigma", "kappa1"});
    CHECK(h.best_epoch >= 0);
    CHECK(h.validation[static_cast<std::size_t>(h.best_epoch)] == h.best_validation);
  }

  TEST_CASE("early stopping ends a run whose validation loss stops improving") {
    Fixture f = gt_fixture(ResidualForm::ap);
    f.data.residual_validation = f.data.residual_train.subset({0, 1});
    TrainConfig cfg;
    cfg.learning_rate = 0.5;  // far too large: validation loss stalls
    cfg.epochs = 2000;
    cfg.patience = 20;
    try {
      const auto res = train(f.problem, f.data, f.params, cfg);
      CHECK(res.history.stop_reason == "early_stopping");
      CHECK(res.history.epochs_run < 2000);
    } catch (const TrainingDiverged& e) {
      CHECK(e.partial().history.epochs_run > 0);
    }
  }

  TEST_CASE("training is deterministic") {
    Fixture f = gt_fixture(ResidualForm::ap);
    TrainConfig cfg;
    cfg.epochs = 10;
    const auto a = train(f.problem, f.data, f.params, cfg);
    const auto b = train(f.problem, f.data, f.params, cfg);
    CHECK(a.params.values == b.params.values);
  }
}
