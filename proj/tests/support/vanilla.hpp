#pragma once

// Independently coded vanilla Pegasos and SDCA (no sign-correction step),
// used as the bitwise reference for the all-zero-pattern reductions. They
// reuse only core types and the seeded Rng; none of the solver code.

#include <Eigen/Dense>
#include <cmath>
#include <cstring>
#include <vector>

#include "signopt/losses.hpp"
#include "signopt/rng.hpp"
#include "signopt/types.hpp"

namespace testsupport {

using namespace signopt;

// Mini-batch Pegasos: gradient step with the 1/(λt) schedule, then the
// sqrt(r_loss/λ)-ball projection (r_loss = 1 reproduces the classic solver).
inline std::vector<Eigen::VectorXd> vanilla_pegasos_iterates(
    const DataMatrix& data, const LossSpec& loss, double lambda,
    std::int64_t iters, int k, std::uint64_t seed) {
  const int n = data.n();
  Rng rng(seed);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(data.d());
  Eigen::VectorXd grad(data.d());
  const double radius = std::sqrt(loss.r_loss() / lambda);
  std::vector<Eigen::VectorXd> iterates;
  iterates.reserve(iters);
  for (std::int64_t t = 1; t <= iters; ++t) {
    const std::vector<int> batch = rng.sample_without_replacement(n, k);
    grad.setZero();
    for (const int i : batch) {
      const double g = loss.subgradient(i, w.dot(data.x(i)));
      if (g != 0.0) grad += g * data.x(i);
    }
    const double td = static_cast<double>(t);
    const double kd = static_cast<double>(batch.size());
    w = ((td - 1.0) / td) * w - (1.0 / (lambda * td * kd)) * grad;
    const double nrm = w.norm();
    if (nrm > radius) w *= radius / nrm;
    iterates.push_back(w);
  }
  return iterates;
}

// Plain SDCA with exact coordinate maximization for the hinge and square
// losses; the primal iterate is w = (1/λn) X α maintained incrementally.
inline std::vector<Eigen::VectorXd> vanilla_sdca_iterates(
    const DataMatrix& data, const LossSpec& loss, double lambda,
    std::int64_t iters, std::uint64_t seed) {
  const int n = data.n();
  Rng rng(seed);
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(data.d());
  const double ln = lambda * static_cast<double>(n);
  std::vector<Eigen::VectorXd> iterates;
  iterates.reserve(iters);
  for (std::int64_t t = 1; t <= iters; ++t) {
    const int i = static_cast<int>(rng.uniform_index(n));
    const double sq = data.col_sqnorm(i);
    const double y = loss.label(i);
    double delta;
    if (sq == 0.0) {
      delta = y - alpha(i);
    } else {
      const double z = w.dot(data.x(i));
      if (loss.family() == LossFamily::hinge) {
        const double b = std::max(
            0.0, std::min(1.0, y * alpha(i) + (1.0 - y * z) * ln / sq));
        delta = y * b - alpha(i);
      } else {
        delta = (y - z - alpha(i)) / (1.0 + sq / ln);
      }
    }
    if (delta != 0.0) {
      alpha(i) += delta;
      w += (delta / (lambda * n)) * data.x(i);
    }
    iterates.push_back(w);
  }
  return iterates;
}

// Unconstrained multiclass Pegasos (scores, per-class gradients, Frobenius
// ball), matching Algorithm-3 mechanics without the sign step.
inline std::vector<Eigen::MatrixXd> vanilla_pegasos_mc_iterates(
    const DataMatrix& data, const LossSpec& loss, double lambda,
    std::int64_t iters, int k, std::uint64_t seed) {
  const int n = data.n();
  const int m = loss.num_classes();
  Rng rng(seed);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(data.d(), m);
  Eigen::MatrixXd grad(data.d(), m);
  const double radius = std::sqrt(loss.r_loss() / lambda);
  std::vector<Eigen::MatrixXd> iterates;
  iterates.reserve(iters);
  for (std::int64_t t = 1; t <= iters; ++t) {
    const std::vector<int> batch = rng.sample_without_replacement(n, k);
    grad.setZero();
    for (const int i : batch) {
      const Eigen::VectorXd s = W.transpose() * data.x(i);
      const Eigen::VectorXd g = loss.subgradient(i, s);
      grad += data.x(i) * g.transpose();
    }
    const double td = static_cast<double>(t);
    const double kd = static_cast<double>(batch.size());
    W = ((td - 1.0) / td) * W - (1.0 / (lambda * td * kd)) * grad;
    const double nrm = W.norm();
    if (nrm > radius) W *= radius / nrm;
    iterates.push_back(W);
  }
  return iterates;
}

inline bool bitwise_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

inline bool bitwise_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(double) * a.size()) == 0;
}

}  // namespace testsupport
