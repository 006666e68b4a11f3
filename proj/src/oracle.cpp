#include "signopt/oracle.hpp"

#include <cmath>
#include <limits>

#include "signopt/objectives.hpp"
#include "signopt/projection.hpp"

namespace signopt {

namespace {

struct FirstOrderProblem {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<void(Eigen::VectorXd&)> project;
  int dim;
  double lambda;
  bool smooth;
  double grad_lipschitz;  // only meaningful when smooth
};

// Largest singular value squared of X, by power iteration on X X^T.
double sigma_max_sq(const Eigen::MatrixXd& X) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(X.rows()).normalized();
  double s = 0.0;
  for (int it = 0; it < 80; ++it) {
    Eigen::VectorXd u = X.transpose() * v;
    Eigen::VectorXd w = X * u;
    s = w.norm();
    if (s == 0.0) return 0.0;
    v = w / s;
  }
  return s;
}

Eigen::VectorXd run_first_order(const FirstOrderProblem& prob,
                                const ReferenceOptions& opts) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(prob.dim);
  prob.project(w);
  Eigen::VectorXd best_w = w;
  double best = prob.value(w);
  double window_best_prev = std::numeric_limits<double>::infinity();

  if (!prob.smooth) {
    for (std::int64_t t = 1; t <= opts.max_steps; ++t) {
      w -= prob.gradient(w) / (prob.lambda * static_cast<double>(t));
      prob.project(w);
      const double f = prob.value(w);
      if (f < best) {
        best = f;
        best_w = w;
      }
      if (t % opts.window == 0) {
        if (window_best_prev - best < opts.tol) return best_w;
        window_best_prev = best;
      }
    }
  } else {
    const double step = 1.0 / prob.grad_lipschitz;
    Eigen::VectorXd y = w;
    Eigen::VectorXd w_prev = w;
    double tk = 1.0;
    double f_prev = best;
    for (std::int64_t t = 1; t <= opts.max_steps; ++t) {
      w = y - step * prob.gradient(y);
      prob.project(w);
      const double f = prob.value(w);
      if (f < best) {
        best = f;
        best_w = w;
      }
      if (f > f_prev) {
        // adaptive restart: drop momentum, reseed from the previous point
        y = w_prev;
        tk = 1.0;
        w = w_prev;
      } else {
        const double tk_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        y = w + ((tk - 1.0) / tk_next) * (w - w_prev);
        tk = tk_next;
        w_prev = w;
        f_prev = f;
      }
      if (t % opts.window == 0) {
        if (window_best_prev - best < opts.tol) return best_w;
        window_best_prev = best;
      }
    }
  }
  throw ConvergenceError("reference_solve: step budget exhausted", best);
}

}  // namespace

PrimalModel reference_solve(const DataMatrix& data, const LossSpec& loss,
                            double lambda, const SignPattern& pattern,
                            const ReferenceOptions& opts) {
  if (pattern.size() != data.d()) {
    throw DimensionError("pattern", pattern.size(), "data d", data.d());
  }
  const int n = data.n();
  FirstOrderProblem prob;
  prob.dim = data.d();
  prob.lambda = lambda;
  prob.smooth = loss.is_smooth();
  prob.value = [&](const Eigen::VectorXd& w) {
    return primal_objective(w, data, loss, lambda);
  };
  prob.gradient = [&, n](const Eigen::VectorXd& w) {
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g(i) = loss.subgradient(i, w.dot(data.x(i)));
    return Eigen::VectorXd(lambda * w + data.features() * g / n);
  };
  const double r = loss.r_loss();
  prob.project = [&, lambda, r](Eigen::VectorXd& w) {
    project_ball_cap_sign_in_place(w, pattern, lambda, r);
  };
  if (prob.smooth) {
    prob.grad_lipschitz =
        1.5 * (lambda + sigma_max_sq(data.features()) /
                            (n * loss.smooth_gamma()));
  }
  Eigen::VectorXd w = run_first_order(prob, opts);
  return PrimalModel(std::move(w), pattern);
}

PrimalModel reference_solve(const DataMatrix& data, const LossSpec& loss,
                            double lambda, const SignPattern& pattern,
                            double tol) {
  ReferenceOptions opts;
  opts.tol = tol;
  return reference_solve(data, loss, lambda, pattern, opts);
}

PrimalModelMatrix reference_solve_multiclass(const DataMatrix& data,
                                             const LossSpec& loss,
                                             double lambda,
                                             const SignPatternMatrix& pattern,
                                             const ReferenceOptions& opts) {
  const int d = data.d(), n = data.n(), m = loss.num_classes();
  if (pattern.d() != d || pattern.m() != m) {
    throw DimensionError("pattern entries", pattern.d() * pattern.m(),
                         "model entries", d * m);
  }
  const SignPattern flat = pattern.flattened();
  FirstOrderProblem prob;
  prob.dim = d * m;
  prob.lambda = lambda;
  prob.smooth = loss.is_smooth();
  prob.value = [&](const Eigen::VectorXd& wv) {
    Eigen::Map<const Eigen::MatrixXd> W(wv.data(), d, m);
    return primal_objective(Eigen::MatrixXd(W), data, loss, lambda);
  };
  prob.gradient = [&, d, n, m, lambda](const Eigen::VectorXd& wv) {
    Eigen::Map<const Eigen::MatrixXd> W(wv.data(), d, m);
    Eigen::MatrixXd G = lambda * W;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXd s = W.transpose() * data.x(i);
      G += data.x(i) * loss.subgradient(i, s).transpose() / n;
    }
    return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(G.data(), G.size()));
  };
  const double r = loss.r_loss();
  prob.project = [&, lambda, r](Eigen::VectorXd& w) {
    project_ball_cap_sign_in_place(w, flat, lambda, r);
  };
  if (prob.smooth) {
    prob.grad_lipschitz =
        1.5 * (lambda + sigma_max_sq(data.features()) /
                            (n * loss.smooth_gamma()));
  }
  Eigen::VectorXd w = run_first_order(prob, opts);
  Eigen::MatrixXd W = Eigen::Map<Eigen::MatrixXd>(w.data(), d, m);
  return PrimalModelMatrix(std::move(W), pattern);
}

PrimalModelMatrix reference_solve_multiclass(const DataMatrix& data,
                                             const LossSpec& loss,
                                             double lambda,
                                             const SignPatternMatrix& pattern,
                                             double tol) {
  ReferenceOptions opts;
  opts.tol = tol;
  return reference_solve_multiclass(data, loss, lambda, pattern, opts);
}

double grid_argmax_1d(const std::function<double(double)>& f, double lo,
                      double hi, double step) {
  if (!(lo < hi) || !(step > 0.0)) {
    throw std::invalid_argument("grid_argmax_1d: need lo < hi and step > 0");
  }
  double best_x = lo;
  double best_f = f(lo);
  for (double x = lo + step; x <= hi + step / 2; x += step) {
    const double v = f(std::min(x, hi));
    if (v > best_f) {
      best_f = v;
      best_x = std::min(x, hi);
    }
  }
  double a = std::max(lo, best_x - step);
  double b = std::min(hi, best_x + step);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  const double refined = 0.5 * (a + b);
  return f(refined) > best_f ? refined : best_x;
}

}  // namespace signopt
