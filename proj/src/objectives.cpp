#include "signopt/objectives.hpp"

#include <cmath>
#include <limits>

#include "signopt/projection.hpp"

namespace signopt {

double primal_objective(const Eigen::VectorXd& w, const DataMatrix& data,
                        const LossSpec& loss, double lambda) {
  if (w.size() != data.d()) {
    throw DimensionError("model d", w.size(), "data d", data.d());
  }
  if (loss.n() != data.n()) {
    throw DimensionError("loss n", loss.n(), "data n", data.n());
  }
  double sum = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    sum += loss.value(i, w.dot(data.x(i)));
  }
  return 0.5 * lambda * w.squaredNorm() + sum / data.n();
}

double primal_objective(const PrimalModel& model, const DataMatrix& data,
                        const LossSpec& loss, double lambda) {
  return primal_objective(model.w, data, loss, lambda);
}

double primal_objective(const Eigen::MatrixXd& W, const DataMatrix& data,
                        const LossSpec& loss, double lambda) {
  if (W.rows() != data.d()) {
    throw DimensionError("model d", W.rows(), "data d", data.d());
  }
  if (W.cols() != loss.num_classes()) {
    throw DimensionError("model m", W.cols(), "loss m", loss.num_classes());
  }
  double sum = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    sum += loss.value(i, Eigen::VectorXd(W.transpose() * data.x(i)));
  }
  return 0.5 * lambda * W.squaredNorm() + sum / data.n();
}

double primal_objective(const PrimalModelMatrix& model, const DataMatrix& data,
                        const LossSpec& loss, double lambda) {
  return primal_objective(model.W, data, loss, lambda);
}

double dual_objective(const Eigen::VectorXd& alpha, const DataMatrix& data,
                      const LossSpec& loss, double lambda,
                      const SignPattern& pattern) {
  if (alpha.size() != data.n()) {
    throw DimensionError("alpha n", alpha.size(), "data n", data.n());
  }
  double conj_sum = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    const double c = loss.conjugate(i, -alpha(i));
    if (std::isinf(c)) return -std::numeric_limits<double>::infinity();
    conj_sum += c;
  }
  Eigen::VectorXd v = data.features() * alpha / (lambda * data.n());
  sign_correct_in_place(v, pattern);
  return -0.5 * lambda * v.squaredNorm() - conj_sum / data.n();
}

double dual_objective(const DualState& state, const DataMatrix& data,
                      const LossSpec& loss, double lambda,
                      const SignPattern& pattern) {
  return dual_objective(state.alpha, data, loss, lambda, pattern);
}

}  // namespace signopt
