#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "signopt/losses.hpp"
#include "signopt/types.hpp"

namespace signopt {

// Convergence benchmark: SC-SDCA and SC-Pegasos (one run per mini-batch
// size) on one dataset, with the primal objective gap measured against a
// long-run reference. Each series' trace carries gap = P(current iterate) -
// P(w_star) per epoch.
struct BenchConfig {
  double lambda = 0.0;  // <= 0 means 1/n
  int epochs = 100;
  std::uint64_t seed = 0;
  std::vector<int> pegasos_batches = {10, 100};
  int trace_every = 1;
  double ref_tol = 1e-10;
  std::int64_t ref_max_steps = 2000000;
};

struct BenchSeries {
  std::string name;
  ConvergenceTrace trace;
  double final_gap = 0.0;
};

struct BenchResult {
  double p_star = 0.0;
  double lambda = 0.0;
  std::vector<BenchSeries> series;
};

BenchResult bench_convergence(const DataMatrix& data, const LossSpec& loss,
                              const SignPattern& pattern,
                              const BenchConfig& config);

// Paired small-train / large-test protocol on sign-structured synthetic
// data: per trial, fresh train/test draws from one fixed ground truth, one
// sign-constrained and one unconstrained model (hinge SDCA), metric deltas
// on the test split. Trials fan out across threads, one RNG stream per
// trial derived from seed + trial index; results are reduced in trial order.
struct PairedTrialsConfig {
  int trials = 200;
  int n_train = 10;
  int n_test = 500;
  int d = 12;
  double noise = 1.0;
  double lambda = 0.1;
  std::int64_t iters = 2000;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct PairedTrialsResult {
  int trials = 0;
  double mean_roc_constrained = 0.0;
  double mean_roc_unconstrained = 0.0;
  double mean_roc_delta = 0.0;
  double mean_prbep_delta = 0.0;
  double frac_roc_improved = 0.0;
  double frac_prbep_improved = 0.0;
};

PairedTrialsResult paired_sign_trials(const PairedTrialsConfig& config);

}  // namespace signopt
