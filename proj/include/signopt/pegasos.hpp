#pragma once

#include <Eigen/Dense>
#include <vector>

#include "signopt/losses.hpp"
#include "signopt/types.hpp"

namespace signopt {

struct PegasosRun {
  PrimalModel averaged_model;  // (1/T) Σ_{t=1..T} w_t, includes w_1 = 0
  PrimalModel final_iterate;   // w_{T+1}
  ConvergenceTrace trace;
};

struct PegasosRunMc {
  PrimalModelMatrix averaged_model;
  PrimalModelMatrix final_iterate;
  ConvergenceTrace trace;
};

// One SC-Pegasos iterate:
//   w_{t+1/3} = ((t-1)/t) w_t - 1/(kλt) Σ_{i in batch} x_i φ_i'(<x_i, w_t>)
//   w_{t+2/3} = Π_S(w_{t+1/3})
//   w_{t+1}   = min(1, sqrt(r_loss/λ)/||w_{t+2/3}||) w_{t+2/3}
// The 1/k factor comes from the mini-batch objective P_t; the gradient is
// evaluated at the current iterate.
Eigen::VectorXd pegasos_step(const Eigen::VectorXd& w_t, std::int64_t t,
                             const std::vector<int>& batch,
                             const DataMatrix& data, const LossSpec& loss,
                             double lambda, const SignPattern& pattern);

// Runs T steps from w_1 = 0 with uniform size-k batches (sampled without
// replacement within a batch; k = n consumes no randomness and iterates the
// full gradient). Returns the iterate average, the final iterate, and a
// trace with the objective of both the current and the averaged-so-far
// iterate every trace_every epochs.
PegasosRun train_pegasos(const DataMatrix& data, const LossSpec& loss,
                         const TrainConfig& config, const SignPattern& pattern,
                         const IterateObserver& observer = {});

// Multiclass variant: scores Z = W^T x, per-class gradient outer products,
// elementwise sign correction with C, Frobenius-ball projection of radius
// sqrt(r_loss/λ).
Eigen::MatrixXd pegasos_step_multiclass(const Eigen::MatrixXd& W_t,
                                        std::int64_t t,
                                        const std::vector<int>& batch,
                                        const DataMatrix& data,
                                        const LossSpec& loss, double lambda,
                                        const SignPatternMatrix& pattern);

PegasosRunMc train_pegasos_multiclass(const DataMatrix& data,
                                      const LossSpec& loss,
                                      const TrainConfig& config,
                                      const SignPatternMatrix& pattern,
                                      const IterateObserverMc& observer = {});

}  // namespace signopt
