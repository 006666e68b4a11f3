#include <cmath>
#include <cstring>

#include "doctest.h"
#include "signopt/objectives.hpp"
#include "signopt/oracle.hpp"
#include "signopt/projection.hpp"
#include "support/helpers.hpp"

using namespace signopt;
using namespace testsupport;

TEST_CASE("primal objective at w = 0") {
  Rng rng(3);
  const int d = 3, n = 8;
  const DataMatrix bd = random_binary_data(rng, d, n);
  const Eigen::VectorXd w0 = Eigen::VectorXd::Zero(d);

  // hinge: (1/n) sum max(0,1) = 1 for any lambda (regularizer vanishes)
  CHECK(primal_objective(w0, bd, LossSpec::hinge(bd), 0.7) ==
        doctest::Approx(1.0));

  const DataMatrix rd = random_real_data(rng, d, n);
  CHECK(primal_objective(w0, rd, LossSpec::square_error(rd), 0.7) ==
        doctest::Approx(rd.labels().squaredNorm() / (2.0 * n)));

  // every Table-1 family: P(0) <= r_loss
  std::vector<LossSpec> losses = {
      LossSpec::hinge(bd), LossSpec::smoothed_hinge(bd, 0.3),
      LossSpec::logistic(bd), LossSpec::square_error(rd),
      LossSpec::absolute_error(rd)};
  std::vector<const DataMatrix*> datasets = {&bd, &bd, &bd, &rd, &rd};
  for (std::size_t j = 0; j < losses.size(); ++j) {
    CHECK(primal_objective(w0, *datasets[j], losses[j], 0.7) <=
          losses[j].r_loss() + 1e-12);
  }
}

TEST_CASE("hand-evaluated single-example objective") {
  Eigen::MatrixXd X(1, 1);
  X << 2.0;
  Eigen::VectorXd y(1);
  y << 1.0;
  const DataMatrix data(X, y, LabelKind::binary);
  Eigen::VectorXd w(1);
  w << 1.0;
  // 0.5*0.5*1 + max(0, 1-2) = 0.25
  CHECK(primal_objective(w, data, LossSpec::hinge(data), 0.5) ==
        doctest::Approx(0.25));
}

TEST_CASE("dimension mismatch is a structured error") {
  Rng rng(5);
  const DataMatrix data = random_binary_data(rng, 4, 6);
  const LossSpec loss = LossSpec::hinge(data);
  const Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_WITH_AS(primal_objective(w, data, loss, 1.0),
                       "dimension mismatch: model d=3 vs data d=4",
                       DimensionError);
}

TEST_CASE("objective evaluation is deterministic") {
  Rng rng(7);
  const DataMatrix data = random_binary_data(rng, 5, 20);
  const LossSpec loss = LossSpec::logistic(data);
  Eigen::VectorXd w(5);
  for (int h = 0; h < 5; ++h) w(h) = rng.normal();
  const double a = primal_objective(w, data, loss, 0.3);
  const double b = primal_objective(w, data, loss, 0.3);
  CHECK(std::memcmp(&a, &b, sizeof(double)) == 0);
}

TEST_CASE("dual objective at alpha = 0 is 0 for the hinge") {
  Rng rng(11);
  const DataMatrix data = random_binary_data(rng, 3, 7);
  const LossSpec loss = LossSpec::hinge(data);
  const SignPattern pattern = random_pattern(rng, 3);
  CHECK(dual_objective(Eigen::VectorXd::Zero(7), data, loss, 0.4, pattern) ==
        0.0);
}

TEST_CASE("dual objective reports domain violations as -infinity") {
  Rng rng(13);
  const DataMatrix data = random_binary_data(rng, 3, 5);
  const LossSpec loss = LossSpec::hinge(data);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(5);
  alpha(2) = -1.5 * data.y(2);  // y*alpha outside [0, 1]
  const double v =
      dual_objective(alpha, data, loss, 0.4, SignPattern::zeros(3));
  CHECK(std::isinf(v));
  CHECK(v < 0);
}

TEST_CASE("weak duality on random small instances, every binary family") {
  Rng rng(17);
  for (int rep = 0; rep < 60; ++rep) {
    const int d = 1 + static_cast<int>(rng.uniform_index(6));
    const int n = 2 + static_cast<int>(rng.uniform_index(9));
    const DataMatrix bd = random_binary_data(rng, d, n);
    const DataMatrix rd = random_real_data(rng, d, n);
    const SignPattern pattern = random_pattern(rng, d);
    const double lambda = 0.2 + rng.uniform01();

    const auto check_one = [&](const DataMatrix& data, const LossSpec& loss,
                               const Eigen::VectorXd& alpha) {
      const double dv = dual_objective(alpha, data, loss, lambda, pattern);
      Eigen::VectorXd w = data.features() * alpha / (lambda * n);
      sign_correct_in_place(w, pattern);
      const double pv = primal_objective(w, data, loss, lambda);
      CHECK(dv <= pv + 1e-10);
    };

    Eigen::VectorXd ab(n), ar(n), aa(n);
    for (int i = 0; i < n; ++i) {
      ab(i) = rng.uniform01() * bd.y(i);  // y*alpha in [0,1]
      ar(i) = 2.0 * rng.normal();
      aa(i) = 2.0 * rng.uniform01() - 1.0;  // |alpha| <= 1
    }
    check_one(bd, LossSpec::hinge(bd), ab);
    check_one(bd, LossSpec::smoothed_hinge(bd, 0.4), ab);
    check_one(bd, LossSpec::logistic(bd), ab);
    check_one(rd, LossSpec::square_error(rd), ar);
    check_one(rd, LossSpec::absolute_error(rd), aa);
  }
}

TEST_CASE("optimal dual recovered from the reference solver closes the gap") {
  Rng rng(23);
  const int d = 5, n = 8;
  const DataMatrix data = random_real_data(rng, d, n);
  const LossSpec loss = LossSpec::square_error(data);
  const SignPattern pattern = random_pattern(rng, d);
  const double lambda = 0.5;

  ReferenceOptions opts;
  opts.tol = 1e-14;
  opts.max_steps = 400000;
  const PrimalModel star = reference_solve(data, loss, lambda, pattern, opts);
  const double p = primal_objective(star, data, loss, lambda);

  // alpha*_i = -phi_i'(<w*, x_i>)
  Eigen::VectorXd alpha(n);
  for (int i = 0; i < n; ++i) {
    alpha(i) = -loss.subgradient(i, star.w.dot(data.x(i)));
  }
  const double dv = dual_objective(alpha, data, loss, lambda, pattern);
  CHECK(p - dv >= -1e-10);
  CHECK(p - dv <= 1e-6);
}

TEST_CASE("multiclass primal objective dimension checks") {
  Rng rng(29);
  const DataMatrix md = random_multiclass_data(rng, 3, 6, 3);
  const LossSpec loss = LossSpec::softmax(md);
  CHECK(primal_objective(Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 3)), md,
                         loss, 1.0) == doctest::Approx(std::log(3.0)));
  CHECK_THROWS_AS(primal_objective(Eigen::MatrixXd(Eigen::MatrixXd::Zero(3, 2)),
                                   md, loss, 1.0),
                  DimensionError);
}
