#pragma once

#include <Eigen/Dense>

#include "signopt/types.hpp"

namespace signopt {

// Euclidean projection onto S = {w : c ⊙ w >= 0}:
//   w_h = max(0, z_h) for c_h = +1, min(0, z_h) for c_h = -1, z_h otherwise.
// Free coordinates pass through untouched (bit-for-bit).
void sign_correct_in_place(Eigen::Ref<Eigen::VectorXd> z,
                           const SignPattern& pattern);
Eigen::VectorXd sign_correct(const Eigen::VectorXd& z,
                             const SignPattern& pattern);
Eigen::MatrixXd sign_correct(const Eigen::MatrixXd& Z,
                             const SignPatternMatrix& pattern);

// Euclidean projection onto B ∩ S where B is the sqrt(r_loss/lambda)-ball:
//   min(1, sqrt(r_loss/lambda) / ||Π_S(z)||) · Π_S(z),
// with the convention that a zero Π_S(z) is returned unscaled. Points already
// inside the ball are not rescaled (no stray multiply by 1).
void project_ball_cap_sign_in_place(Eigen::Ref<Eigen::VectorXd> z,
                                    const SignPattern& pattern, double lambda,
                                    double r_loss);
Eigen::VectorXd project_ball_cap_sign(const Eigen::VectorXd& z,
                                      const SignPattern& pattern,
                                      double lambda, double r_loss);
// Matrix form: same formulas elementwise with C and the Frobenius norm,
// realized as the vector path over the column-major flattening.
Eigen::MatrixXd project_ball_cap_sign(const Eigen::MatrixXd& Z,
                                      const SignPatternMatrix& pattern,
                                      double lambda, double r_loss);

}  // namespace signopt
