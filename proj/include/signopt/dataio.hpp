#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "signopt/rng.hpp"
#include "signopt/types.hpp"

namespace signopt {

// SVM-light / LIBSVM text format. Grammar per line:
//   label [index:value]*      with strictly increasing 1-based indices;
// anything after '#' is a comment; lines empty after comment removal are
// skipped. Features are stored dense even when the file is sparse (memory is
// n*d*8 bytes); d = max feature index seen (>= 1). Labels are parsed as
// reals and validated downstream by the loss binding.
DataMatrix parse_svmlight(std::istream& in);
DataMatrix parse_svmlight_file(const std::string& path);

// Writes with %.17g so that write-then-parse round-trips exactly.
// Zero entries are omitted.
void write_svmlight(std::ostream& out, const DataMatrix& data);
void write_svmlight_file(const std::string& path, const DataMatrix& data);

// Replaces feature h with the pair max(0, x_h - threshold), max(0, threshold
// - x_h) at positions h and h+1; features above h shift up by one.
struct VariableSplit {
  DataMatrix data;
  int plus_index;             // new index of max(0, x_h - threshold)
  int minus_index;            // new index of max(0, threshold - x_h)
  std::vector<int> old_to_new;  // old feature index -> new index (split
                                // feature maps to plus_index)
};
VariableSplit split_variable(const DataMatrix& data, int feature,
                             double threshold);

struct SynthOptions {
  double noise = 0.0;   // label noise scale: y = sign(<w*,x> + noise * eps)
  double margin = 0.0;  // resample x until |<w*,x>| >= margin (pre-scaling)
  int levels = 0;       // 0: x ~ N(0,I); L>=2: x_j uniform over L values
                        // equally spaced in [-0.5, 0.5]
  double feature_scale = 1.0;  // applied to x after the margin test
};

// Ground truth used by the synthetic generator: coordinates constrained by
// the pattern get sign c_h and magnitude >= 0.5, free coordinates are
// standard normal. Drawing it consumes a fixed prefix of the stream, so
// synth_ground_truth(seed) reproduces the w* used by synth_classification
// with the same seed.
Eigen::VectorXd synth_ground_truth(Rng& rng, int d, const SignPattern& pattern);
Eigen::VectorXd synth_ground_truth(std::uint64_t seed, int d,
                                   const SignPattern& pattern);

// Linearly separable-up-to-noise binary data from a fixed ground truth.
DataMatrix synth_from_ground_truth(Rng& rng, const Eigen::VectorXd& w_star,
                                   int n, const SynthOptions& opts);

// y_i = sign(<w*, x_i> + noise * eps_i), x_i ~ N(0, I), deterministic in seed.
DataMatrix synth_classification(std::uint64_t seed, int n, int d,
                                const SignPattern& pattern, double noise);
DataMatrix synth_classification(std::uint64_t seed, int n, int d,
                                const SignPattern& pattern,
                                const SynthOptions& opts);

// Seeded Fisher-Yates permutation, then prefix split.
struct TrainTestSplit {
  DataMatrix train;
  DataMatrix test;
};
TrainTestSplit split_train_test(const DataMatrix& data, int n_train,
                                std::uint64_t seed);

// CSV with header "epoch,primal,dual,gap,wall_ms"; absent optionals are
// empty fields.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

// Generic dense matrix reader: comma-separated reals, one row per line,
// equal arity; '#' comments allowed.
Eigen::MatrixXd read_dense_csv(std::istream& in);

// Sign pattern sources. The inline syntax is "pos=1,3-6;neg=2" with 1-based
// coordinate indices or ranges; "none" (or "") means unconstrained. The file
// form is one entry of {-1,0,+1} per line.
SignPattern parse_sign_spec(const std::string& spec, int d);
SignPattern read_sign_file(std::istream& in, int d);
void write_sign_file(std::ostream& out, const SignPattern& pattern);

}  // namespace signopt
