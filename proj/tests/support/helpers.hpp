#pragma once

#include <Eigen/Dense>
#include <functional>

#include "signopt/dataio.hpp"
#include "signopt/losses.hpp"
#include "signopt/rng.hpp"
#include "signopt/types.hpp"

namespace testsupport {

using namespace signopt;

inline SignPattern random_pattern(Rng& rng, int d, bool allow_zero = true) {
  Eigen::VectorXi c(d);
  for (int h = 0; h < d; ++h) {
    const int v = static_cast<int>(rng.uniform_index(allow_zero ? 3 : 2));
    c(h) = allow_zero ? v - 1 : (v == 0 ? -1 : 1);
  }
  return SignPattern(c);
}

// Gaussian features; if unit_radius, columns are scaled so that R <= 1.
inline Eigen::MatrixXd random_features(Rng& rng, int d, int n,
                                       bool unit_radius = false) {
  Eigen::MatrixXd X(d, n);
  for (int i = 0; i < n; ++i) {
    for (int h = 0; h < d; ++h) X(h, i) = rng.normal();
    if (unit_radius) {
      const double nrm = X.col(i).norm();
      if (nrm > 1.0) X.col(i) /= nrm;
    }
  }
  return X;
}

inline DataMatrix random_binary_data(Rng& rng, int d, int n,
                                     bool unit_radius = false) {
  Eigen::MatrixXd X = random_features(rng, d, n, unit_radius);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.uniform_index(2) == 0 ? -1.0 : 1.0;
  return DataMatrix(std::move(X), std::move(y), LabelKind::binary);
}

inline DataMatrix random_real_data(Rng& rng, int d, int n,
                                   bool unit_radius = false) {
  Eigen::MatrixXd X = random_features(rng, d, n, unit_radius);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) y(i) = rng.normal();
  return DataMatrix(std::move(X), std::move(y), LabelKind::real);
}

inline DataMatrix random_multiclass_data(Rng& rng, int d, int n, int m,
                                         bool unit_radius = false) {
  Eigen::MatrixXd X = random_features(rng, d, n, unit_radius);
  Eigen::VectorXd y(n);
  // every class appears at least once so num_classes() == m
  for (int i = 0; i < n; ++i) {
    y(i) = i < m ? i + 1 : static_cast<double>(rng.uniform_index(m)) + 1.0;
  }
  return DataMatrix(std::move(X), std::move(y), LabelKind::multiclass);
}

inline double central_diff(const std::function<double(double)>& f, double s,
                           double h = 1e-6) {
  return (f(s + h) - f(s - h)) / (2.0 * h);
}

}  // namespace testsupport
