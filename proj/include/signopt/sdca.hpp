#pragma once

#include <Eigen/Dense>

#include "signopt/losses.hpp"
#include "signopt/types.hpp"

namespace signopt {

// Which maximizer step 4 uses. automatic picks the closed form for
// hinge / smoothed hinge / square / absolute and the lower-bound update for
// logistic. The lower-bound path requires a smooth loss (for the hinge it is
// rejected); the closed-form path requires one of the four families above.
enum class SdcaUpdate { automatic, closed_form, lower_bound };

SdcaUpdate resolve_sdca_update(SdcaUpdate requested, const LossSpec& loss);

struct SdcaRun {
  PrimalModel averaged_model;  // (1/(T-T0)) Σ_{t=T0+1..T} w^{(t-1)}
  DualState final_state;
  ConvergenceTrace trace;  // primal, dual and duality gap per epoch stride
};

// D_t(Δα; w) = -(λ/2)||w + (Δα/λn) x_i||² - (1/n) φ_i*(-α_i - Δα), evaluated
// at the projected iterate state.w. Returns -infinity outside the conjugate
// domain.
double sdca_local_objective(double delta, int i, const DualState& state,
                            const DataMatrix& data, const LossSpec& loss,
                            double lambda);

// Exact argmax of D_t for the families with an analytic coordinate
// maximizer. A zero column x_i reduces the step to the pure conjugate
// maximizer Δα = y_i - α_i.
double delta_alpha_closed_form(int i, const DualState& state,
                               const DataMatrix& data, const LossSpec& loss,
                               double lambda);

// Lower-bound update for (1/γ)-smooth losses:
//   Δα = s·q,  q = -φ_i'(z) - α_i,  z = <w^{(t-1)}, x_i>,
//   s = Clip_[0, 1/s_lb](1/2 + (zα_i + φ_i*(-α_i) + φ_i(z))/(γq²)) · s_lb,
//   s_lb = λnγ / (λnγ + R²).
// Returns 0 when q = 0.
double delta_alpha_lower_bound(int i, const DualState& state,
                               const DataMatrix& data, const LossSpec& loss,
                               double lambda, double gamma);

SdcaRun train_sdca(const DataMatrix& data, const LossSpec& loss,
                   const TrainConfig& config, const SignPattern& pattern,
                   SdcaUpdate update = SdcaUpdate::automatic,
                   const IterateObserver& observer = {});

// ---- multiclass ----

struct SdcaMcOptions {
  int inner_max_iters = 200;
  double inner_tol = 1e-10;
};

struct SdcaRunMc {
  PrimalModelMatrix averaged_model;
  DualStateMatrix final_state;
  ConvergenceTrace trace;  // primal only; the multiclass conjugate is not
                           // exposed in closed form
};

// Multiclass local dual objective
//   D_t(Δα; W) = -(λ/2)||W + (1/λn) x_i Δα^T||_F² - (1/n) φ_i*(-α_i - Δα)
// with the exact conjugate of the bound loss (-infinity outside its domain).
double sdca_local_objective_multiclass(const Eigen::VectorXd& delta, int i,
                                       const DualStateMatrix& state,
                                       const DataMatrix& data,
                                       const LossSpec& loss, double lambda);

// argmax over Δα of the m-dimensional concave D_t. For max-hinge and top-k
// the conjugate is linear on its domain, so the maximizer is a single
// Euclidean projection (onto the simplex, resp. the top-k polytope); for
// softmax the entropy KKT system is solved by nested bisection. Throws
// ConvergenceError carrying the residual if the tolerance is not met within
// inner_max_iters iterations.
Eigen::VectorXd delta_alpha_multiclass(int i, const DualStateMatrix& state,
                                       const DataMatrix& data,
                                       const LossSpec& loss, double lambda,
                                       const SdcaMcOptions& opts = {});

SdcaRunMc train_sdca_multiclass(const DataMatrix& data, const LossSpec& loss,
                                const TrainConfig& config,
                                const SignPatternMatrix& pattern,
                                const SdcaMcOptions& opts = {},
                                const IterateObserverMc& observer = {});

}  // namespace signopt
