#include "signopt/types.hpp"

#include <cmath>

namespace signopt {

DataMatrix::DataMatrix(Eigen::MatrixXd features)
    : features_(std::move(features)) {
  init();
}

DataMatrix::DataMatrix(Eigen::MatrixXd features, Eigen::VectorXd labels,
                       LabelKind kind)
    : features_(std::move(features)), labels_(std::move(labels)), kind_(kind) {
  if (kind_ == LabelKind::none) {
    throw std::invalid_argument("DataMatrix: labels given with kind 'none'");
  }
  if (labels_.size() != features_.cols()) {
    throw DimensionError("labels", labels_.size(), "examples",
                         features_.cols());
  }
  if (kind_ == LabelKind::binary) {
    for (Eigen::Index i = 0; i < labels_.size(); ++i) {
      if (labels_(i) != 1.0 && labels_(i) != -1.0) {
        throw std::invalid_argument("DataMatrix: binary label at example " +
                                    std::to_string(i) + " is " +
                                    std::to_string(labels_(i)) +
                                    ", expected +1 or -1");
      }
    }
  } else if (kind_ == LabelKind::multiclass) {
    int m = 0;
    for (Eigen::Index i = 0; i < labels_.size(); ++i) {
      const double v = labels_(i);
      if (v < 1.0 || v != std::floor(v)) {
        throw std::invalid_argument(
            "DataMatrix: multiclass label at example " + std::to_string(i) +
            " is " + std::to_string(v) + ", expected an integer >= 1");
      }
      m = std::max(m, static_cast<int>(v));
    }
    if (m < 2) {
      throw std::invalid_argument("DataMatrix: multiclass data needs >= 2 classes");
    }
    num_classes_ = m;
  }
  init();
}

void DataMatrix::init() {
  if (features_.rows() < 1 || features_.cols() < 1) {
    throw std::invalid_argument("DataMatrix: need d >= 1 and n >= 1, got d=" +
                                std::to_string(features_.rows()) + " n=" +
                                std::to_string(features_.cols()));
  }
  col_sqnorms_ = features_.colwise().squaredNorm();
  radius_ = std::sqrt(col_sqnorms_.maxCoeff());
}

const Eigen::VectorXd& DataMatrix::labels() const {
  if (kind_ == LabelKind::none) {
    throw std::logic_error("DataMatrix: no labels present");
  }
  return labels_;
}

int DataMatrix::class_of(int i) const {
  if (kind_ != LabelKind::multiclass) {
    throw std::logic_error("DataMatrix: labels are not class indices");
  }
  return static_cast<int>(labels_(i)) - 1;
}

int DataMatrix::num_classes() const {
  if (kind_ != LabelKind::multiclass) {
    throw std::logic_error("DataMatrix: labels are not class indices");
  }
  return num_classes_;
}

SignPattern::SignPattern(Eigen::VectorXi c) : c_(std::move(c)) {
  for (Eigen::Index h = 0; h < c_.size(); ++h) {
    if (c_(h) < -1 || c_(h) > 1) {
      throw std::invalid_argument("SignPattern: entry " + std::to_string(h) +
                                  " is " + std::to_string(c_(h)) +
                                  ", expected -1, 0 or +1");
    }
  }
}

bool SignPattern::is_feasible(const Eigen::VectorXd& w) const {
  if (w.size() != c_.size()) {
    throw DimensionError("w", w.size(), "pattern", c_.size());
  }
  for (Eigen::Index h = 0; h < c_.size(); ++h) {
    if (c_(h) > 0 && w(h) < 0.0) return false;
    if (c_(h) < 0 && w(h) > 0.0) return false;
  }
  return true;
}

SignPatternMatrix::SignPatternMatrix(Eigen::MatrixXi C) : C_(std::move(C)) {
  for (Eigen::Index j = 0; j < C_.size(); ++j) {
    const int v = C_.data()[j];
    if (v < -1 || v > 1) {
      throw std::invalid_argument("SignPatternMatrix: entry " +
                                  std::to_string(j) + " is " +
                                  std::to_string(v) + ", expected -1, 0 or +1");
    }
  }
}

SignPattern SignPatternMatrix::flattened() const {
  Eigen::VectorXi c = Eigen::Map<const Eigen::VectorXi>(C_.data(), C_.size());
  return SignPattern(std::move(c));
}

bool SignPatternMatrix::is_feasible(const Eigen::MatrixXd& W) const {
  if (W.rows() != C_.rows() || W.cols() != C_.cols()) {
    throw DimensionError("W entries", W.size(), "pattern entries", C_.size());
  }
  Eigen::Map<const Eigen::VectorXd> w(W.data(), W.size());
  return flattened().is_feasible(w);
}

PrimalModel::PrimalModel(Eigen::VectorXd w_in, SignPattern pattern_in)
    : w(std::move(w_in)), pattern(std::move(pattern_in)) {
  if (w.size() != pattern.size()) {
    throw DimensionError("w", w.size(), "pattern", pattern.size());
  }
  if (!pattern.is_feasible(w)) {
    throw std::invalid_argument("PrimalModel: w violates its sign pattern");
  }
}

PrimalModelMatrix::PrimalModelMatrix(Eigen::MatrixXd W_in,
                                     SignPatternMatrix pattern_in)
    : W(std::move(W_in)), pattern(std::move(pattern_in)) {
  if (!pattern.is_feasible(W)) {
    throw std::invalid_argument("PrimalModelMatrix: W violates its sign pattern");
  }
}

DualState DualState::zeros(int d, int n) {
  DualState s;
  s.alpha = Eigen::VectorXd::Zero(n);
  s.w_bar = Eigen::VectorXd::Zero(d);
  s.w = Eigen::VectorXd::Zero(d);
  return s;
}

double DualState::bookkeeping_error(const DataMatrix& data,
                                    double lambda) const {
  const Eigen::VectorXd exact =
      data.features() * alpha / (lambda * data.n());
  const double scale = std::max(1.0, w_bar.norm());
  return (w_bar - exact).norm() / scale;
}

DualStateMatrix DualStateMatrix::zeros(int d, int n, int m) {
  DualStateMatrix s;
  s.A = Eigen::MatrixXd::Zero(m, n);
  s.W_bar = Eigen::MatrixXd::Zero(d, m);
  s.W = Eigen::MatrixXd::Zero(d, m);
  return s;
}

double DualStateMatrix::bookkeeping_error(const DataMatrix& data,
                                          double lambda) const {
  const Eigen::MatrixXd exact =
      data.features() * A.transpose() / (lambda * data.n());
  const double scale = std::max(1.0, W_bar.norm());
  return (W_bar - exact).norm() / scale;
}

void TrainConfig::validate(int n) const {
  if (lambda <= 0.0) {
    throw std::invalid_argument("TrainConfig: lambda must be positive");
  }
  if (iters < 1) {
    throw std::invalid_argument("TrainConfig: iters must be >= 1");
  }
  if (minibatch_k < 1 || minibatch_k > n) {
    throw std::invalid_argument("TrainConfig: need 1 <= minibatch_k <= n");
  }
  if (t0 >= 0 && t0 >= iters) {
    throw std::invalid_argument("TrainConfig: need 0 <= t0 < iters");
  }
}

std::int64_t TrainConfig::resolved_t0(int n) const {
  if (t0 >= 0) return t0;
  return std::min<std::int64_t>(std::max<std::int64_t>(n, iters / 2),
                                iters - 1);
}

void ConvergenceTrace::add(TraceRow row) {
  if (!rows_.empty() && row.epoch <= rows_.back().epoch) {
    throw std::logic_error("ConvergenceTrace: epochs must strictly increase");
  }
  rows_.push_back(std::move(row));
}

}  // namespace signopt
