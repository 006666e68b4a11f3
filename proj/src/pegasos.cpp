#include "signopt/pegasos.hpp"

#include <chrono>
#include <cmath>

#include "signopt/objectives.hpp"
#include "signopt/projection.hpp"
#include "signopt/rng.hpp"

namespace signopt {

namespace {

void check_inputs(const DataMatrix& data, const LossSpec& loss,
                  double lambda) {
  if (loss.n() != data.n()) {
    throw DimensionError("loss n", loss.n(), "data n", data.n());
  }
  if (lambda <= 0.0) {
    throw std::invalid_argument("pegasos: lambda must be positive");
  }
}

void step_in_place(Eigen::VectorXd& w, Eigen::VectorXd& grad, std::int64_t t,
                   const std::vector<int>& batch, const DataMatrix& data,
                   const LossSpec& loss, double lambda,
                   const SignPattern& pattern, double r_loss) {
  grad.setZero();
  for (const int i : batch) {
    const double g = loss.subgradient(i, w.dot(data.x(i)));
    if (g != 0.0) grad += g * data.x(i);
  }
  const double td = static_cast<double>(t);
  const double kd = static_cast<double>(batch.size());
  w = ((td - 1.0) / td) * w - (1.0 / (lambda * td * kd)) * grad;
  project_ball_cap_sign_in_place(w, pattern, lambda, r_loss);
}

void step_mc_in_place(Eigen::MatrixXd& W, Eigen::MatrixXd& grad,
                      std::int64_t t, const std::vector<int>& batch,
                      const DataMatrix& data, const LossSpec& loss,
                      double lambda, const SignPattern& flat_pattern,
                      double r_loss) {
  grad.setZero();
  for (const int i : batch) {
    const Eigen::VectorXd s = W.transpose() * data.x(i);
    const Eigen::VectorXd g = loss.subgradient(i, s);
    grad += data.x(i) * g.transpose();
  }
  const double td = static_cast<double>(t);
  const double kd = static_cast<double>(batch.size());
  W = ((td - 1.0) / td) * W - (1.0 / (lambda * td * kd)) * grad;
  Eigen::Map<Eigen::VectorXd> flat(W.data(), W.size());
  project_ball_cap_sign_in_place(flat, flat_pattern, lambda, r_loss);
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

Eigen::VectorXd pegasos_step(const Eigen::VectorXd& w_t, std::int64_t t,
                             const std::vector<int>& batch,
                             const DataMatrix& data, const LossSpec& loss,
                             double lambda, const SignPattern& pattern) {
  check_inputs(data, loss, lambda);
  if (w_t.size() != data.d()) {
    throw DimensionError("w", w_t.size(), "data d", data.d());
  }
  if (t < 1) throw std::invalid_argument("pegasos_step: t must be >= 1");
  if (batch.empty()) throw std::invalid_argument("pegasos_step: empty batch");
  Eigen::VectorXd w = w_t;
  Eigen::VectorXd grad(data.d());
  step_in_place(w, grad, t, batch, data, loss, lambda, pattern, loss.r_loss());
  return w;
}

PegasosRun train_pegasos(const DataMatrix& data, const LossSpec& loss,
                         const TrainConfig& config, const SignPattern& pattern,
                         const IterateObserver& observer) {
  check_inputs(data, loss, config.lambda);
  config.validate(data.n());
  if (pattern.size() != data.d()) {
    throw DimensionError("pattern", pattern.size(), "data d", data.d());
  }
  if (loss.multiclass()) {
    throw std::invalid_argument("train_pegasos: multiclass loss given; use train_pegasos_multiclass");
  }

  const int n = data.n();
  const int k = config.minibatch_k;
  const double r_loss = loss.r_loss();
  const auto start = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(data.d());
  Eigen::VectorXd sum_w = Eigen::VectorXd::Zero(data.d());
  Eigen::VectorXd grad(data.d());
  ConvergenceTrace trace;
  double next_mark = config.trace_every;
  std::int64_t last_traced = 0;

  for (std::int64_t t = 1; t <= config.iters; ++t) {
    const std::vector<int> batch = rng.sample_without_replacement(n, k);
    sum_w += w;
    step_in_place(w, grad, t, batch, data, loss, config.lambda, pattern,
                  r_loss);
    if (observer) observer(t, w);

    if (config.trace_every > 0) {
      const double epoch =
          static_cast<double>(t) * k / static_cast<double>(n);
      if ((epoch >= next_mark - 1e-12 || t == config.iters) &&
          t != last_traced) {
        TraceRow row;
        row.epoch = epoch;
        row.primal = primal_objective(w, data, loss, config.lambda);
        row.primal_avg = primal_objective(
            Eigen::VectorXd(sum_w / static_cast<double>(t)), data, loss,
            config.lambda);
        row.wall_ms = elapsed_ms(start);
        trace.add(std::move(row));
        last_traced = t;
        next_mark =
            (std::floor(epoch / config.trace_every) + 1.0) * config.trace_every;
      }
    }
  }

  Eigen::VectorXd avg = sum_w / static_cast<double>(config.iters);
  return PegasosRun{PrimalModel(std::move(avg), pattern),
                    PrimalModel(std::move(w), pattern), std::move(trace)};
}

Eigen::MatrixXd pegasos_step_multiclass(const Eigen::MatrixXd& W_t,
                                        std::int64_t t,
                                        const std::vector<int>& batch,
                                        const DataMatrix& data,
                                        const LossSpec& loss, double lambda,
                                        const SignPatternMatrix& pattern) {
  check_inputs(data, loss, lambda);
  if (W_t.rows() != data.d() || W_t.cols() != loss.num_classes()) {
    throw DimensionError("W entries", W_t.size(), "expected entries",
                         static_cast<long>(data.d()) * loss.num_classes());
  }
  if (t < 1) throw std::invalid_argument("pegasos_step: t must be >= 1");
  if (batch.empty()) throw std::invalid_argument("pegasos_step: empty batch");
  Eigen::MatrixXd W = W_t;
  Eigen::MatrixXd grad(W.rows(), W.cols());
  step_mc_in_place(W, grad, t, batch, data, loss, lambda, pattern.flattened(),
                   loss.r_loss());
  return W;
}

PegasosRunMc train_pegasos_multiclass(const DataMatrix& data,
                                      const LossSpec& loss,
                                      const TrainConfig& config,
                                      const SignPatternMatrix& pattern,
                                      const IterateObserverMc& observer) {
  check_inputs(data, loss, config.lambda);
  config.validate(data.n());
  if (!loss.multiclass()) {
    throw std::invalid_argument("train_pegasos_multiclass: scalar loss given");
  }
  const int m = loss.num_classes();
  if (pattern.d() != data.d() || pattern.m() != m) {
    throw DimensionError("pattern entries",
                         static_cast<long>(pattern.d()) * pattern.m(),
                         "model entries", static_cast<long>(data.d()) * m);
  }

  const int n = data.n();
  const int k = config.minibatch_k;
  const double r_loss = loss.r_loss();
  const SignPattern flat = pattern.flattened();
  const auto start = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(data.d(), m);
  Eigen::MatrixXd sum_W = Eigen::MatrixXd::Zero(data.d(), m);
  Eigen::MatrixXd grad(data.d(), m);
  ConvergenceTrace trace;
  double next_mark = config.trace_every;
  std::int64_t last_traced = 0;

  for (std::int64_t t = 1; t <= config.iters; ++t) {
    const std::vector<int> batch = rng.sample_without_replacement(n, k);
    sum_W += W;
    step_mc_in_place(W, grad, t, batch, data, loss, config.lambda, flat,
                     r_loss);
    if (observer) observer(t, W);

    if (config.trace_every > 0) {
      const double epoch =
          static_cast<double>(t) * k / static_cast<double>(n);
      if ((epoch >= next_mark - 1e-12 || t == config.iters) &&
          t != last_traced) {
        TraceRow row;
        row.epoch = epoch;
        row.primal = primal_objective(W, data, loss, config.lambda);
        row.primal_avg = primal_objective(
            Eigen::MatrixXd(sum_W / static_cast<double>(t)), data, loss,
            config.lambda);
        row.wall_ms = elapsed_ms(start);
        trace.add(std::move(row));
        last_traced = t;
        next_mark =
            (std::floor(epoch / config.trace_every) + 1.0) * config.trace_every;
      }
    }
  }

  Eigen::MatrixXd avg = sum_W / static_cast<double>(config.iters);
  return PegasosRunMc{PrimalModelMatrix(std::move(avg), pattern),
                      PrimalModelMatrix(std::move(W), pattern),
                      std::move(trace)};
}

}  // namespace signopt
