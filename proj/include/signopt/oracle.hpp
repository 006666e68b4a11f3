#pragma once

#include <Eigen/Dense>
#include <functional>

#include "signopt/losses.hpp"
#include "signopt/types.hpp"

namespace signopt {

// Test-side reference solvers. These share only core types and the projection
// formulas with the production solvers; none of the pegasos/sdca update
// machinery is reused.

struct ReferenceOptions {
  double tol = 1e-9;            // windowed best-objective improvement
  std::int64_t max_steps = 200000;
  int window = 100;
};

// argmin_{w in B ∩ S} P(w) by first-order iteration with the projection after
// every step. Lipschitz losses use subgradient steps 1/(λt); smooth losses
// use a constant 1/L step with momentum and adaptive restart (the 1/(λt)
// schedule needs ~L/λ steps to stabilize, which is hopeless at λ ~ 1/n).
// Stops when the windowed best objective improves by less than tol; throws
// ConvergenceError with the last objective when the step budget runs out.
PrimalModel reference_solve(const DataMatrix& data, const LossSpec& loss,
                            double lambda, const SignPattern& pattern,
                            double tol);
PrimalModel reference_solve(const DataMatrix& data, const LossSpec& loss,
                            double lambda, const SignPattern& pattern,
                            const ReferenceOptions& opts);

PrimalModelMatrix reference_solve_multiclass(const DataMatrix& data,
                                             const LossSpec& loss,
                                             double lambda,
                                             const SignPatternMatrix& pattern,
                                             double tol);
PrimalModelMatrix reference_solve_multiclass(const DataMatrix& data,
                                             const LossSpec& loss,
                                             double lambda,
                                             const SignPatternMatrix& pattern,
                                             const ReferenceOptions& opts);

// Grid maximizer refined by one ternary-search pass; within `step` of the
// true argmax for concave f. A constant f returns lo (first grid maximizer
// wins; the refinement is kept only if it strictly improves).
double grid_argmax_1d(const std::function<double(double)>& f, double lo,
                      double hi, double step);

}  // namespace signopt
