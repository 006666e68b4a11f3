#pragma once

#include <Eigen/Dense>

namespace signopt {

// Mann-Whitney AUC: probability that a uniformly random positive outscores a
// uniformly random negative, ties counted 1/2. Requires at least one example
// of each class.
double roc_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

// Precision-recall break-even point: precision (= recall) when exactly n+
// top-scoring examples are predicted positive, n+ being the number of true
// positives. Ties are broken by stable input order. Requires >= 1 positive.
double prbep(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

}  // namespace signopt
