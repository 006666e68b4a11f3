#include <sstream>

#include "doctest.h"
#include "signopt/dataio.hpp"
#include "signopt/metrics.hpp"
#include "signopt/objectives.hpp"
#include "signopt/oracle.hpp"
#include "support/helpers.hpp"

using namespace signopt;
using namespace testsupport;

TEST_CASE("svmlight grammar basics") {
  std::istringstream in("+1 1:0.5 3:2.0\n-1\n");
  const DataMatrix data = parse_svmlight(in);
  CHECK(data.d() == 3);
  CHECK(data.n() == 2);
  CHECK(data.y(0) == 1.0);
  CHECK(data.y(1) == -1.0);
  CHECK(data.features()(0, 0) == 0.5);
  CHECK(data.features()(1, 0) == 0.0);
  CHECK(data.features()(2, 0) == 2.0);
  CHECK(data.x(1).norm() == 0.0);
}

TEST_CASE("svmlight comments and blank lines") {
  std::istringstream in(
      "# a comment line\n"
      "\n"
      "+1 2:1.25   # trailing comment\n");
  const DataMatrix data = parse_svmlight(in);
  CHECK(data.n() == 1);
  CHECK(data.d() == 2);
  CHECK(data.features()(1, 0) == 1.25);
}

TEST_CASE("svmlight malformed input carries the line number") {
  {
    std::istringstream in("+1 1:0.5\n-1 2:x\n");
    CHECK_THROWS_AS(parse_svmlight(in), ParseError);
  }
  {
    std::istringstream in("+1 3:1 2:1\n");
    try {
      parse_svmlight(in);
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(std::string(e.what()).find("strictly increasing") !=
            std::string::npos);
    }
  }
  {
    std::istringstream in("+1 0:1\n");
    CHECK_THROWS_AS(parse_svmlight(in), ParseError);
  }
  {
    std::istringstream in("abc 1:1\n");
    CHECK_THROWS_AS(parse_svmlight(in), ParseError);
  }
}

TEST_CASE("svmlight round-trip is exact") {
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const int d = 1 + static_cast<int>(rng.uniform_index(6));
    const int n = 1 + static_cast<int>(rng.uniform_index(10));
    Eigen::MatrixXd X(d, n);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      y(i) = rng.normal();
      for (int h = 0; h < d; ++h) {
        X(h, i) = rng.uniform_index(3) == 0 ? 0.0 : rng.normal();
      }
    }
    X(d - 1, n - 1) = 1.0;  // pin the dimension
    const DataMatrix data(X, y, LabelKind::real);
    std::ostringstream out;
    write_svmlight(out, data);
    std::istringstream in(out.str());
    const DataMatrix back = parse_svmlight(in);
    REQUIRE(back.d() == d);
    REQUIRE(back.n() == n);
    CHECK((back.features() - X).norm() == 0.0);
    CHECK((back.labels() - y).norm() == 0.0);
  }
}

TEST_CASE("split_variable pH-style construction") {
  Eigen::MatrixXd X(2, 3);
  X << 7.0, 8.5, 5.0,   // the split feature
       1.0, 2.0, 3.0;
  Eigen::VectorXd y(3);
  y << 1, -1, 1;
  const DataMatrix data(X, y, LabelKind::binary);
  const VariableSplit split = split_variable(data, 0, 7.0);
  CHECK(split.data.d() == 3);
  CHECK(split.plus_index == 0);
  CHECK(split.minus_index == 1);
  // x = 7 -> both zero
  CHECK(split.data.features()(0, 0) == 0.0);
  CHECK(split.data.features()(1, 0) == 0.0);
  // x = 8.5 -> (1.5, 0)
  CHECK(split.data.features()(0, 1) == 1.5);
  CHECK(split.data.features()(1, 1) == 0.0);
  // x = 5 -> (0, 2)
  CHECK(split.data.features()(0, 2) == 0.0);
  CHECK(split.data.features()(1, 2) == 2.0);
  // untouched feature shifted up
  CHECK(split.old_to_new[1] == 2);
  CHECK(split.data.features()(2, 2) == 3.0);

  // reconstruction: x = theta + plus - minus
  for (int i = 0; i < 3; ++i) {
    CHECK(X(0, i) == doctest::Approx(7.0 + split.data.features()(0, i) -
                                     split.data.features()(1, i)));
  }
}

TEST_CASE("synthetic generator properties") {
  const int d = 6, n = 300;
  Rng prng(5);
  const SignPattern pattern = random_pattern(prng, d, false);

  const DataMatrix a = synth_classification(42, n, d, pattern, 0.0);
  const DataMatrix b = synth_classification(42, n, d, pattern, 0.0);
  CHECK((a.features() - b.features()).norm() == 0.0);
  CHECK((a.labels() - b.labels()).norm() == 0.0);

  const DataMatrix c = synth_classification(43, n, d, pattern, 0.0);
  CHECK((a.features() - c.features()).norm() > 0.0);

  // ground truth respects the pattern with margin 0.5 and replays by seed
  const Eigen::VectorXd w_star = synth_ground_truth(42, d, pattern);
  for (int h = 0; h < d; ++h) {
    if (pattern[h] > 0) CHECK(w_star(h) >= 0.5);
    if (pattern[h] < 0) CHECK(w_star(h) <= -0.5);
  }

  // noiseless data is separated by an oracle-trained model
  const LossSpec loss = LossSpec::hinge(a);
  const PrimalModel model =
      reference_solve(a, loss, 0.01, SignPattern::zeros(d), 1e-6);
  const Eigen::VectorXd scores = a.features().transpose() * model.w;
  CHECK(roc_auc(scores, a.labels()) >= 0.99);
}

TEST_CASE("train/test split is a seeded permutation prefix") {
  Rng rng(7);
  const DataMatrix data = random_binary_data(rng, 3, 20);
  const TrainTestSplit split = split_train_test(data, 5, 99);
  CHECK(split.train.n() == 5);
  CHECK(split.test.n() == 15);
  const TrainTestSplit again = split_train_test(data, 5, 99);
  CHECK((split.train.features() - again.train.features()).norm() == 0.0);

  // every example appears exactly once across the two parts
  Eigen::VectorXd all_norms(20);
  for (int i = 0; i < 5; ++i) all_norms(i) = split.train.x(i).squaredNorm();
  for (int i = 0; i < 15; ++i)
    all_norms(5 + i) = split.test.x(i).squaredNorm();
  std::sort(all_norms.data(), all_norms.data() + 20);
  Eigen::VectorXd orig(20);
  for (int i = 0; i < 20; ++i) orig(i) = data.x(i).squaredNorm();
  std::sort(orig.data(), orig.data() + 20);
  CHECK((all_norms - orig).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("trace CSV format") {
  ConvergenceTrace trace;
  TraceRow r1;
  r1.epoch = 1.0;
  r1.primal = 0.5;
  r1.dual = 0.25;
  r1.gap = 0.25;
  r1.wall_ms = 12.0;
  trace.add(r1);
  TraceRow r2;
  r2.epoch = 2.0;
  r2.primal = 0.375;
  r2.wall_ms = 25.0;
  trace.add(r2);
  std::ostringstream out;
  write_trace_csv(out, trace);
  const std::string text = out.str();
  CHECK(text.rfind("epoch,primal,dual,gap,wall_ms\n", 0) == 0);
  CHECK(text.find("\n2,0.375,,,25\n") != std::string::npos);
}

TEST_CASE("dense CSV reader") {
  std::istringstream in("1.5, 2, 3\n# comment\n4,5e-1,-6\n");
  const Eigen::MatrixXd M = read_dense_csv(in);
  REQUIRE(M.rows() == 2);
  REQUIRE(M.cols() == 3);
  CHECK(M(0, 0) == 1.5);
  CHECK(M(1, 1) == 0.5);
  CHECK(M(1, 2) == -6.0);
  std::istringstream bad("1,2\n3\n");
  CHECK_THROWS_AS(read_dense_csv(bad), ParseError);
}

TEST_CASE("sign spec parsing") {
  const SignPattern p = parse_sign_spec("pos=1,3-4;neg=6", 6);
  CHECK(p[0] == 1);
  CHECK(p[1] == 0);
  CHECK(p[2] == 1);
  CHECK(p[3] == 1);
  CHECK(p[4] == 0);
  CHECK(p[5] == -1);
  CHECK(parse_sign_spec("none", 4).all_zero());
  CHECK_THROWS_AS(parse_sign_spec("pos=7", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_sign_spec("pos=2;neg=2", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_sign_spec("foo=1", 6), std::invalid_argument);

  std::ostringstream out;
  write_sign_file(out, p);
  std::istringstream in(out.str());
  const SignPattern q = read_sign_file(in, 6);
  CHECK((q.c() - p.c()).lpNorm<Eigen::Infinity>() == 0);

  std::istringstream wrong("1\n0\n");
  CHECK_THROWS_AS(read_sign_file(wrong, 3), ParseError);
}

TEST_CASE("cached radius equals the true maximum column norm") {
  Rng rng(91);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 1 + static_cast<int>(rng.uniform_index(8));
    const int n = 1 + static_cast<int>(rng.uniform_index(30));
    const DataMatrix data = random_real_data(rng, d, n);
    double true_max = 0.0;
    for (int i = 0; i < n; ++i) {
      true_max = std::max(true_max, std::sqrt(data.x(i).squaredNorm()));
    }
    CHECK(std::abs(data.radius() - true_max) <=
          1e-12 * std::max(1.0, true_max));
  }
}

TEST_CASE("trace rows must have strictly increasing epochs") {
  ConvergenceTrace trace;
  TraceRow r;
  r.epoch = 1.0;
  trace.add(r);
  CHECK_THROWS_AS(trace.add(r), std::logic_error);
  r.epoch = 0.5;
  CHECK_THROWS_AS(trace.add(r), std::logic_error);
  r.epoch = 2.0;
  trace.add(r);
  CHECK(trace.rows().size() == 2);
}
