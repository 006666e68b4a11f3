#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace signopt {

// Thrown when two objects that must agree on a dimension do not. The message
// names both dimensions.
class DimensionError : public std::invalid_argument {
 public:
  DimensionError(const std::string& what_a, long a, const std::string& what_b,
                 long b)
      : std::invalid_argument("dimension mismatch: " + what_a + "=" +
                              std::to_string(a) + " vs " + what_b + "=" +
                              std::to_string(b)) {}
};

// Thrown by parsers; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(long line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Thrown when an iterative routine exhausts its budget; carries the residual
// (or last objective value) at the point of failure.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double residual)
      : std::runtime_error(msg + " (residual " + std::to_string(residual) +
                           ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

enum class LabelKind { none, binary, real, multiclass };

// A dataset: d x n feature matrix stored column-major so that each example
// x_i is a contiguous column, plus optional labels. The maximum column norm
// is cached at construction.
class DataMatrix {
 public:
  explicit DataMatrix(Eigen::MatrixXd features);
  DataMatrix(Eigen::MatrixXd features, Eigen::VectorXd labels, LabelKind kind);

  int d() const { return static_cast<int>(features_.rows()); }
  int n() const { return static_cast<int>(features_.cols()); }
  const Eigen::MatrixXd& features() const { return features_; }
  Eigen::MatrixXd::ConstColXpr x(int i) const { return features_.col(i); }

  LabelKind label_kind() const { return kind_; }
  bool has_labels() const { return kind_ != LabelKind::none; }
  const Eigen::VectorXd& labels() const;
  double y(int i) const { return labels()(i); }
  // 0-based class index for multiclass labels (stored 1-based).
  int class_of(int i) const;
  int num_classes() const;

  // max_i ||x_i||, cached eagerly.
  double radius() const { return radius_; }
  double col_sqnorm(int i) const { return col_sqnorms_(i); }

 private:
  void init();

  Eigen::MatrixXd features_;
  Eigen::VectorXd labels_;
  LabelKind kind_ = LabelKind::none;
  int num_classes_ = 0;
  double radius_ = 0.0;
  Eigen::VectorXd col_sqnorms_;
};

// Per-coordinate sign constraints c in {-1,0,+1}^d. c_h=+1 forces w_h >= 0,
// c_h=-1 forces w_h <= 0, c_h=0 leaves w_h free.
class SignPattern {
 public:
  explicit SignPattern(Eigen::VectorXi c);
  static SignPattern zeros(int d) { return SignPattern(Eigen::VectorXi::Zero(d)); }

  int size() const { return static_cast<int>(c_.size()); }
  int operator[](int h) const { return c_(h); }
  const Eigen::VectorXi& c() const { return c_; }
  bool all_zero() const { return (c_.array() == 0).all(); }

  // c ⊙ w >= 0, checked exactly (no tolerance).
  bool is_feasible(const Eigen::VectorXd& w) const;

 private:
  Eigen::VectorXi c_;
};

// d x m sign constraints for multiclass weight matrices. The projection code
// operates on the column-major flattening, so the flattened view is the
// canonical form.
class SignPatternMatrix {
 public:
  explicit SignPatternMatrix(Eigen::MatrixXi C);
  static SignPatternMatrix zeros(int d, int m) {
    return SignPatternMatrix(Eigen::MatrixXi::Zero(d, m));
  }

  int d() const { return static_cast<int>(C_.rows()); }
  int m() const { return static_cast<int>(C_.cols()); }
  const Eigen::MatrixXi& C() const { return C_; }
  SignPattern flattened() const;
  bool is_feasible(const Eigen::MatrixXd& W) const;

 private:
  Eigen::MatrixXi C_;
};

// A weight vector together with the sign pattern it satisfies. Feasibility is
// validated at construction: models are only built from solver output or
// explicit user data, both of which must already be feasible.
struct PrimalModel {
  PrimalModel(Eigen::VectorXd w_in, SignPattern pattern_in);

  Eigen::VectorXd w;
  SignPattern pattern;
};

struct PrimalModelMatrix {
  PrimalModelMatrix(Eigen::MatrixXd W_in, SignPatternMatrix pattern_in);

  Eigen::MatrixXd W;
  SignPatternMatrix pattern;
};

// SDCA state: dual vector alpha, the pre-projection primal accumulator
// w_bar = (1/λn) X α (maintained incrementally), and the projected iterate
// w = Π_S(w_bar).
struct DualState {
  static DualState zeros(int d, int n);

  // ||w_bar - (1/λn) X alpha|| / max(1, ||w_bar||), recomputed from scratch.
  double bookkeeping_error(const DataMatrix& data, double lambda) const;

  Eigen::VectorXd alpha;
  Eigen::VectorXd w_bar;
  Eigen::VectorXd w;
};

struct DualStateMatrix {
  static DualStateMatrix zeros(int d, int n, int m);

  double bookkeeping_error(const DataMatrix& data, double lambda) const;

  Eigen::MatrixXd A;      // m x n, column i is the dual vector of example i
  Eigen::MatrixXd W_bar;  // d x m
  Eigen::MatrixXd W;      // d x m
};

struct TrainConfig {
  double lambda = 1.0;
  std::int64_t iters = 1000;       // T
  std::int64_t t0 = -1;            // SDCA burn-in; -1 = min(max(n, T/2), T-1)
  int minibatch_k = 1;             // Pegasos only
  std::uint64_t seed = 0;
  int trace_every = 1;             // epoch stride for trace rows; <=0 disables

  void validate(int n) const;
  std::int64_t resolved_t0(int n) const;
};

struct TraceRow {
  double epoch = 0.0;
  double primal = 0.0;
  std::optional<double> dual;
  std::optional<double> gap;
  double wall_ms = 0.0;
  // Pegasos also records the objective of the averaged-so-far iterate; this
  // extra column is not part of the CSV surface.
  std::optional<double> primal_avg;
};

// Called by the solvers after every accepted iterate; used by tests to
// check per-step invariants (exact feasibility, ball bounds, bitwise
// reductions).
using IterateObserver =
    std::function<void(std::int64_t t, const Eigen::VectorXd& w)>;
using IterateObserverMc =
    std::function<void(std::int64_t t, const Eigen::MatrixXd& W)>;

// Diagnostic rows with strictly increasing epochs.
class ConvergenceTrace {
 public:
  void add(TraceRow row);
  const std::vector<TraceRow>& rows() const { return rows_; }
  bool empty() const { return rows_.empty(); }
  const TraceRow& back() const { return rows_.back(); }

 private:
  std::vector<TraceRow> rows_;
};

}  // namespace signopt
