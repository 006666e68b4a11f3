#include "signopt/projection.hpp"

#include <cmath>

namespace signopt {

void sign_correct_in_place(Eigen::Ref<Eigen::VectorXd> z,
                           const SignPattern& pattern) {
  if (z.size() != pattern.size()) {
    throw DimensionError("z", z.size(), "pattern", pattern.size());
  }
  const Eigen::VectorXi& c = pattern.c();
  for (Eigen::Index h = 0; h < z.size(); ++h) {
    if (c(h) > 0) {
      if (z(h) < 0.0) z(h) = 0.0;
    } else if (c(h) < 0) {
      if (z(h) > 0.0) z(h) = 0.0;
    }
  }
}

Eigen::VectorXd sign_correct(const Eigen::VectorXd& z,
                             const SignPattern& pattern) {
  Eigen::VectorXd w = z;
  sign_correct_in_place(w, pattern);
  return w;
}

Eigen::MatrixXd sign_correct(const Eigen::MatrixXd& Z,
                             const SignPatternMatrix& pattern) {
  Eigen::MatrixXd W = Z;
  Eigen::Map<Eigen::VectorXd> flat(W.data(), W.size());
  sign_correct_in_place(flat, pattern.flattened());
  return W;
}

void project_ball_cap_sign_in_place(Eigen::Ref<Eigen::VectorXd> z,
                                    const SignPattern& pattern, double lambda,
                                    double r_loss) {
  if (lambda <= 0.0 || r_loss <= 0.0) {
    throw std::invalid_argument("project_ball_cap_sign: need lambda > 0 and r_loss > 0");
  }
  sign_correct_in_place(z, pattern);
  const double radius = std::sqrt(r_loss / lambda);
  const double nrm = z.norm();
  if (nrm > radius) {
    z *= radius / nrm;
  }
}

Eigen::VectorXd project_ball_cap_sign(const Eigen::VectorXd& z,
                                      const SignPattern& pattern,
                                      double lambda, double r_loss) {
  Eigen::VectorXd w = z;
  project_ball_cap_sign_in_place(w, pattern, lambda, r_loss);
  return w;
}

Eigen::MatrixXd project_ball_cap_sign(const Eigen::MatrixXd& Z,
                                      const SignPatternMatrix& pattern,
                                      double lambda, double r_loss) {
  Eigen::MatrixXd W = Z;
  Eigen::Map<Eigen::VectorXd> flat(W.data(), W.size());
  project_ball_cap_sign_in_place(flat, pattern.flattened(), lambda, r_loss);
  return W;
}

}  // namespace signopt
