#include "signopt/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "signopt/types.hpp"

namespace signopt {

namespace {

void check_binary(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels,
                  const char* who) {
  if (scores.size() != labels.size()) {
    throw DimensionError("scores", scores.size(), "labels", labels.size());
  }
  if (scores.size() == 0) {
    throw std::invalid_argument(std::string(who) + ": empty input");
  }
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels(i) != 1.0 && labels(i) != -1.0) {
      throw std::invalid_argument(std::string(who) +
                                  ": labels must be +1 or -1");
    }
  }
}

}  // namespace

double roc_auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
  check_binary(scores, labels, "roc_auc");
  const Eigen::Index n = scores.size();
  long n_pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) n_pos += labels(i) > 0;
  const long n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("roc_auc: need both classes present");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return scores(a) < scores(b); });

  // Rank-sum with average ranks over tied groups.
  double pos_rank_sum = 0.0;
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && scores(order[j + 1]) == scores(order[i])) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (Eigen::Index t = i; t <= j; ++t) {
      if (labels(order[t]) > 0) pos_rank_sum += avg_rank;
    }
    i = j + 1;
  }
  const double u = pos_rank_sum - 0.5 * static_cast<double>(n_pos) *
                                      static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

double prbep(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
  check_binary(scores, labels, "prbep");
  const Eigen::Index n = scores.size();
  long n_pos = 0;
  for (Eigen::Index i = 0; i < n; ++i) n_pos += labels(i) > 0;
  if (n_pos == 0) {
    throw std::invalid_argument("prbep: need at least one positive");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores(a) > scores(b); });

  long tp = 0;
  for (long t = 0; t < n_pos; ++t) {
    if (labels(order[t]) > 0) ++tp;
  }
  return static_cast<double>(tp) / static_cast<double>(n_pos);
}

}  // namespace signopt
