#include "signopt/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace signopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd binary_labels_of(const DataMatrix& data,
                                 const std::string& name) {
  if (!data.has_labels()) {
    throw std::invalid_argument(name + " loss: dataset has no labels");
  }
  const Eigen::VectorXd& y = data.labels();
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 1.0 && y(i) != -1.0) {
      throw std::invalid_argument(name + " loss requires labels in {+1,-1}; example " +
                                  std::to_string(i) + " has label " +
                                  std::to_string(y(i)));
    }
  }
  return y;
}

Eigen::VectorXd real_labels_of(const DataMatrix& data,
                               const std::string& name) {
  if (!data.has_labels()) {
    throw std::invalid_argument(name + " loss: dataset has no labels");
  }
  if (data.label_kind() == LabelKind::multiclass) {
    throw std::invalid_argument(name + " loss requires real labels, got class indices");
  }
  return data.labels();
}

Eigen::VectorXd class_labels_of(const DataMatrix& data,
                                const std::string& name) {
  if (!data.has_labels() || data.label_kind() != LabelKind::multiclass) {
    throw std::invalid_argument(name + " loss requires class-index labels");
  }
  return data.labels();
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

std::string loss_family_name(LossFamily family) {
  switch (family) {
    case LossFamily::hinge: return "hinge";
    case LossFamily::smoothed_hinge: return "smoothed_hinge";
    case LossFamily::logistic: return "logistic";
    case LossFamily::square_error: return "square";
    case LossFamily::absolute_error: return "absolute";
    case LossFamily::softmax_mc: return "softmax";
    case LossFamily::max_hinge_mc: return "max_hinge";
    case LossFamily::topk_hinge_mc: return "topk_hinge";
  }
  return "?";
}

LossSpec::LossSpec(LossFamily family, Eigen::VectorXd y, double gamma, int k,
                   int m)
    : family_(family), y_(std::move(y)), gamma_(gamma), k_(k), m_(m) {
  const int n = static_cast<int>(y_.size());
  switch (family_) {
    case LossFamily::hinge: r_loss_ = 1.0; break;
    case LossFamily::smoothed_hinge: r_loss_ = 1.0 - gamma_ / 2.0; break;
    case LossFamily::logistic: r_loss_ = std::log(2.0); break;
    case LossFamily::square_error: r_loss_ = y_.squaredNorm() / (2.0 * n); break;
    case LossFamily::absolute_error: r_loss_ = y_.lpNorm<1>() / n; break;
    case LossFamily::softmax_mc: r_loss_ = std::log(static_cast<double>(m_)); break;
    case LossFamily::max_hinge_mc: r_loss_ = 1.0; break;
    case LossFamily::topk_hinge_mc:
      r_loss_ = k_ < m_ ? 1.0 : (m_ - 1.0) / m_;
      break;
  }
}

LossSpec LossSpec::hinge(const DataMatrix& data) {
  return LossSpec(LossFamily::hinge, binary_labels_of(data, "hinge"), 0.0, 1, 0);
}

LossSpec LossSpec::smoothed_hinge(const DataMatrix& data, double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw std::invalid_argument("smoothed hinge: need 0 <= gamma <= 1");
  }
  return LossSpec(LossFamily::smoothed_hinge,
                  binary_labels_of(data, "smoothed hinge"), gamma, 1, 0);
}

LossSpec LossSpec::logistic(const DataMatrix& data) {
  return LossSpec(LossFamily::logistic, binary_labels_of(data, "logistic"),
                  4.0, 1, 0);
}

LossSpec LossSpec::square_error(const DataMatrix& data) {
  return LossSpec(LossFamily::square_error, real_labels_of(data, "square"),
                  1.0, 1, 0);
}

LossSpec LossSpec::absolute_error(const DataMatrix& data) {
  return LossSpec(LossFamily::absolute_error, real_labels_of(data, "absolute"),
                  0.0, 1, 0);
}

LossSpec LossSpec::softmax(const DataMatrix& data) {
  return LossSpec(LossFamily::softmax_mc, class_labels_of(data, "softmax"),
                  1.0, 1, data.num_classes());
}

LossSpec LossSpec::max_hinge(const DataMatrix& data) {
  return LossSpec(LossFamily::max_hinge_mc,
                  class_labels_of(data, "max-hinge"), 0.0, 1,
                  data.num_classes());
}

LossSpec LossSpec::topk_hinge(const DataMatrix& data, int k) {
  const int m = data.num_classes();
  if (k < 1 || k > m) {
    throw std::invalid_argument("top-k hinge: need 1 <= k <= m");
  }
  return LossSpec(LossFamily::topk_hinge_mc,
                  class_labels_of(data, "top-k hinge"), 0.0, k, m);
}

bool LossSpec::multiclass() const {
  return family_ == LossFamily::softmax_mc ||
         family_ == LossFamily::max_hinge_mc ||
         family_ == LossFamily::topk_hinge_mc;
}

int LossSpec::num_classes() const {
  if (!multiclass()) throw std::logic_error("num_classes: not a multiclass loss");
  return m_;
}

Smoothness LossSpec::smoothness() const {
  switch (family_) {
    case LossFamily::hinge:
      return {Smoothness::Kind::lipschitz, 1.0};
    case LossFamily::smoothed_hinge:
      if (gamma_ == 0.0) return {Smoothness::Kind::lipschitz, 1.0};
      return {Smoothness::Kind::smooth, 1.0 / gamma_};
    case LossFamily::logistic:
      return {Smoothness::Kind::smooth, 0.25};
    case LossFamily::square_error:
      return {Smoothness::Kind::smooth, 1.0};
    case LossFamily::absolute_error:
      return {Smoothness::Kind::lipschitz, 1.0};
    case LossFamily::softmax_mc:
      return {Smoothness::Kind::smooth, 1.0};
    case LossFamily::max_hinge_mc:
    case LossFamily::topk_hinge_mc:
      return {Smoothness::Kind::lipschitz, std::sqrt(2.0)};
  }
  return {Smoothness::Kind::lipschitz, 0.0};
}

double LossSpec::smooth_gamma() const {
  const Smoothness s = smoothness();
  if (s.kind != Smoothness::Kind::smooth) {
    throw std::logic_error(loss_family_name(family_) + " is not smooth");
  }
  return 1.0 / s.value;
}

double LossSpec::lipschitz() const {
  const Smoothness s = smoothness();
  if (s.kind != Smoothness::Kind::lipschitz) {
    throw std::logic_error(loss_family_name(family_) +
                           " is smooth; no Lipschitz constant tabulated");
  }
  return s.value;
}

void LossSpec::require_scalar(int i) const {
  if (multiclass()) {
    throw std::invalid_argument(loss_family_name(family_) +
                                ": scalar form called on a multiclass loss");
  }
  if (i < 0 || i >= n()) {
    throw std::out_of_range("loss: example index " + std::to_string(i));
  }
}

void LossSpec::require_vector(int i, Eigen::Index len) const {
  if (!multiclass()) {
    throw std::invalid_argument(loss_family_name(family_) +
                                ": vector form called on a scalar loss");
  }
  if (i < 0 || i >= n()) {
    throw std::out_of_range("loss: example index " + std::to_string(i));
  }
  if (len != m_) {
    throw DimensionError("score vector", len, "classes", m_);
  }
}

double LossSpec::value(int i, double s) const {
  require_scalar(i);
  const double y = y_(i);
  switch (family_) {
    case LossFamily::hinge:
      return std::max(0.0, 1.0 - y * s);
    case LossFamily::smoothed_hinge: {
      const double t = y * s;
      if (t >= 1.0) return 0.0;
      if (t <= 1.0 - gamma_) return 1.0 - t - 0.5 * gamma_;
      const double r = 1.0 - t;
      return r * r / (2.0 * gamma_);
    }
    case LossFamily::logistic: {
      // log(1 + exp(-ys)) without overflow for very negative ys.
      const double t = -y * s;
      return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
    }
    case LossFamily::square_error: {
      const double r = s - y;
      return 0.5 * r * r;
    }
    case LossFamily::absolute_error:
      return std::abs(s - y);
    default:
      return 0.0;  // unreachable
  }
}

double LossSpec::subgradient(int i, double s) const {
  require_scalar(i);
  const double y = y_(i);
  switch (family_) {
    case LossFamily::hinge:
      // at y*s == 1 the canonical choice is 0
      return y * s < 1.0 ? -y : 0.0;
    case LossFamily::smoothed_hinge: {
      const double t = y * s;
      if (t >= 1.0) return 0.0;
      if (t <= 1.0 - gamma_) return -y;
      return -y * (1.0 - t) / gamma_;
    }
    case LossFamily::logistic:
      return -y / (1.0 + std::exp(y * s));
    case LossFamily::square_error:
      return s - y;
    case LossFamily::absolute_error:
      // at s == y the canonical choice is 0
      if (s > y) return 1.0;
      if (s < y) return -1.0;
      return 0.0;
    default:
      return 0.0;  // unreachable
  }
}

double LossSpec::conjugate(int i, double u) const {
  require_scalar(i);
  const double y = y_(i);
  switch (family_) {
    case LossFamily::hinge: {
      const double b = y * u;
      if (b < -1.0 || b > 0.0) return kInf;
      return b;
    }
    case LossFamily::smoothed_hinge: {
      const double b = y * u;
      if (b < -1.0 || b > 0.0) return kInf;
      return b + 0.5 * gamma_ * b * b;
    }
    case LossFamily::logistic: {
      const double b = -y * u;  // in [0, 1] on the domain
      if (b < 0.0 || b > 1.0) return kInf;
      return xlogx(b) + xlogx(1.0 - b);
    }
    case LossFamily::square_error:
      return 0.5 * u * u + u * y;
    case LossFamily::absolute_error:
      if (std::abs(u) > 1.0) return kInf;
      return u * y;
    default:
      return kInf;  // unreachable
  }
}

Eigen::VectorXd LossSpec::margin_costs(int i, const Eigen::VectorXd& s) const {
  const int yi = class_label(i);
  Eigen::VectorXd a = s.array() - s(yi) + 1.0;
  a(yi) -= 1.0;
  return a;
}

double LossSpec::value(int i, const Eigen::VectorXd& s) const {
  require_vector(i, s.size());
  switch (family_) {
    case LossFamily::softmax_mc: {
      const int yi = class_label(i);
      const double mx = s.maxCoeff();
      const double lse = std::log((s.array() - mx).exp().sum()) + mx;
      return lse - s(yi);
    }
    case LossFamily::max_hinge_mc:
      return margin_costs(i, s).maxCoeff();
    case LossFamily::topk_hinge_mc: {
      Eigen::VectorXd a = margin_costs(i, s);
      std::vector<double> v(a.data(), a.data() + a.size());
      std::partial_sort(v.begin(), v.begin() + k_, v.end(),
                        std::greater<double>());
      const double mean =
          std::accumulate(v.begin(), v.begin() + k_, 0.0) / k_;
      return std::max(0.0, mean);
    }
    default:
      return 0.0;  // unreachable
  }
}

Eigen::VectorXd LossSpec::subgradient(int i, const Eigen::VectorXd& s) const {
  require_vector(i, s.size());
  const int yi = class_label(i);
  switch (family_) {
    case LossFamily::softmax_mc: {
      const double mx = s.maxCoeff();
      Eigen::VectorXd p = (s.array() - mx).exp();
      p /= p.sum();
      p(yi) -= 1.0;
      return p;
    }
    case LossFamily::max_hinge_mc: {
      const Eigen::VectorXd a = margin_costs(i, s);
      // ties resolve to the smallest-index maximizer
      int best = 0;
      for (int j = 1; j < m_; ++j) {
        if (a(j) > a(best)) best = j;
      }
      Eigen::VectorXd g = Eigen::VectorXd::Zero(m_);
      g(best) += 1.0;
      g(yi) -= 1.0;
      return g;
    }
    case LossFamily::topk_hinge_mc: {
      const Eigen::VectorXd a = margin_costs(i, s);
      std::vector<int> order(m_);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int p, int q) { return a(p) > a(q); });
      double mean = 0.0;
      for (int j = 0; j < k_; ++j) mean += a(order[j]);
      mean /= k_;
      Eigen::VectorXd g = Eigen::VectorXd::Zero(m_);
      if (mean <= 0.0) return g;  // clamped region; 0 at the kink
      for (int j = 0; j < k_; ++j) {
        g(order[j]) += 1.0 / k_;
        g(yi) -= 1.0 / k_;
      }
      return g;
    }
    default:
      return Eigen::VectorXd::Zero(m_);  // unreachable
  }
}

double LossSpec::conjugate(int i, const Eigen::VectorXd& u) const {
  require_vector(i, u.size());
  if (m_ > 3) {
    throw std::logic_error("multiclass conjugate: numeric sup supports m <= 3");
  }
  // Two-level grid sup of <u,s> - phi(s). Growth onto the box boundary is
  // reported as +infinity (u outside the conjugate's effective domain).
  const double B = 24.0;
  Eigen::VectorXd s(m_), best_s = Eigen::VectorXd::Zero(m_);
  double best = -kInf;
  const auto eval = [&](const Eigen::VectorXd& pt) {
    const double f = u.dot(pt) - value(i, pt);
    if (f > best) {
      best = f;
      best_s = pt;
    }
  };
  const auto sweep = [&](const Eigen::VectorXd& center, double half,
                         double step) {
    const int cells = static_cast<int>(std::round(2.0 * half / step));
    Eigen::VectorXi ix = Eigen::VectorXi::Zero(m_);
    while (true) {
      for (int j = 0; j < m_; ++j) s(j) = center(j) - half + ix(j) * step;
      eval(s);
      int j = 0;
      while (j < m_ && ++ix(j) > cells) ix(j++) = 0;
      if (j == m_) break;
    }
  };
  sweep(Eigen::VectorXd::Zero(m_), B, 1.0);
  if ((best_s.array().abs() >= B - 0.5).any()) return kInf;
  sweep(best_s, 1.0, 0.05);
  sweep(best_s, 0.06, 0.004);
  return best;
}

}  // namespace signopt
