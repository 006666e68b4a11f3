#pragma once

#include <Eigen/Dense>

#include "signopt/losses.hpp"
#include "signopt/types.hpp"

namespace signopt {

// P(w) = (λ/2)||w||² + (1/n) Σ_i φ_i(<w, x_i>). The loss sum runs in
// ascending example order with no reassociation, so the value is a pure
// function of (w, data, loss, lambda).
double primal_objective(const Eigen::VectorXd& w, const DataMatrix& data,
                        const LossSpec& loss, double lambda);
double primal_objective(const PrimalModel& model, const DataMatrix& data,
                        const LossSpec& loss, double lambda);

// Multiclass: P(W) = (λ/2)||W||_F² + (1/n) Σ_i φ_i(W^T x_i).
double primal_objective(const Eigen::MatrixXd& W, const DataMatrix& data,
                        const LossSpec& loss, double lambda);
double primal_objective(const PrimalModelMatrix& model, const DataMatrix& data,
                        const LossSpec& loss, double lambda);

// D(α) = -(λ/2)||Π_S(Xα/(λn))||² - (1/n) Σ_i φ_i*(-α_i), computed from α
// alone (the state's incremental w_bar is not trusted here). Returns
// -infinity when some -α_i falls outside the conjugate's domain.
double dual_objective(const Eigen::VectorXd& alpha, const DataMatrix& data,
                      const LossSpec& loss, double lambda,
                      const SignPattern& pattern);
double dual_objective(const DualState& state, const DataMatrix& data,
                      const LossSpec& loss, double lambda,
                      const SignPattern& pattern);

}  // namespace signopt
