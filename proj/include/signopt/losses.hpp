#pragma once

#include <Eigen/Dense>
#include <string>

#include "signopt/types.hpp"

namespace signopt {

enum class LossFamily {
  hinge,
  smoothed_hinge,
  logistic,
  square_error,
  absolute_error,
  softmax_mc,
  max_hinge_mc,
  topk_hinge_mc,
};

std::string loss_family_name(LossFamily family);

struct Smoothness {
  enum class Kind { lipschitz, smooth };
  Kind kind;
  double value;  // L for Lipschitz families, 1/gamma for smooth families
};

// One loss family bound to a dataset's labels: per-example value phi_i(s),
// a canonical subgradient, the convex conjugate phi_i*(u), the smoothness or
// Lipschitz constant, and the Assumption-style bound r_loss on (1/n) Phi(0).
//
// Conjugates, with b := y*u for the classification families:
//   hinge          phi*(u) = y*u             on y*u in [-1, 0]
//   smoothed hinge phi*(u) = y*u + (g/2)(y*u)^2  on y*u in [-1, 0]
//   logistic       phi*(u) = (-b)log(-b) + (1+b)log(1+b)  on y*u in [-1, 0]
//   square         phi*(u) = u^2/2 + u*y     everywhere
//   absolute       phi*(u) = u*y             on |u| <= 1
// Out-of-domain arguments yield +infinity. Multiclass conjugates are exposed
// only through a numeric sup of test-grade accuracy; the SDCA inner step
// carries its own exact conjugate-domain machinery.
class LossSpec {
 public:
  static LossSpec hinge(const DataMatrix& data);
  static LossSpec smoothed_hinge(const DataMatrix& data, double gamma);
  static LossSpec logistic(const DataMatrix& data);
  static LossSpec square_error(const DataMatrix& data);
  static LossSpec absolute_error(const DataMatrix& data);
  static LossSpec softmax(const DataMatrix& data);
  static LossSpec max_hinge(const DataMatrix& data);
  static LossSpec topk_hinge(const DataMatrix& data, int k);

  LossFamily family() const { return family_; }
  bool multiclass() const;
  int num_classes() const;
  int topk() const { return k_; }
  double gamma() const { return gamma_; }
  int n() const { return static_cast<int>(y_.size()); }
  double label(int i) const { return y_(i); }
  int class_label(int i) const { return static_cast<int>(y_(i)) - 1; }

  Smoothness smoothness() const;
  bool is_smooth() const { return smoothness().kind == Smoothness::Kind::smooth; }
  // gamma such that the loss is (1/gamma)-smooth; throws for Lipschitz families.
  double smooth_gamma() const;
  double lipschitz() const;
  double r_loss() const { return r_loss_; }

  // Binary / regression families (scalar score).
  double value(int i, double s) const;
  double subgradient(int i, double s) const;
  double conjugate(int i, double u) const;

  // Multiclass families (score vector of length m).
  double value(int i, const Eigen::VectorXd& s) const;
  Eigen::VectorXd subgradient(int i, const Eigen::VectorXd& s) const;
  // Numeric sup over a refined grid; supports m <= 3, test use only.
  double conjugate(int i, const Eigen::VectorXd& u) const;

 private:
  LossSpec(LossFamily family, Eigen::VectorXd y, double gamma, int k, int m);
  void require_scalar(int i) const;
  void require_vector(int i, Eigen::Index len) const;
  // Margin-cost vector a_j = s_j - s_{y_i} + [j != y_i] shared by the
  // max-hinge and top-k losses.
  Eigen::VectorXd margin_costs(int i, const Eigen::VectorXd& s) const;

  LossFamily family_;
  Eigen::VectorXd y_;
  double gamma_ = 0.0;
  int k_ = 1;
  int m_ = 0;
  double r_loss_ = 0.0;
};

}  // namespace signopt
