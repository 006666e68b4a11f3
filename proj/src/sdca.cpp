#include "signopt/sdca.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "signopt/objectives.hpp"
#include "signopt/projection.hpp"
#include "signopt/rng.hpp"

namespace signopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clip(double x, double lo, double hi) {
  return std::max(lo, std::min(hi, x));
}

bool closed_form_family(LossFamily f) {
  return f == LossFamily::hinge || f == LossFamily::smoothed_hinge ||
         f == LossFamily::square_error || f == LossFamily::absolute_error;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

SdcaUpdate resolve_sdca_update(SdcaUpdate requested, const LossSpec& loss) {
  if (loss.multiclass()) {
    throw std::invalid_argument("resolve_sdca_update: binary/regression losses only");
  }
  switch (requested) {
    case SdcaUpdate::automatic:
      return closed_form_family(loss.family()) ? SdcaUpdate::closed_form
                                               : SdcaUpdate::lower_bound;
    case SdcaUpdate::closed_form:
      if (!closed_form_family(loss.family())) {
        throw std::invalid_argument("sdca: no closed-form coordinate maximizer for " +
                                    loss_family_name(loss.family()));
      }
      return requested;
    case SdcaUpdate::lower_bound:
      if (!loss.is_smooth()) {
        throw std::invalid_argument(
            "sdca: the lower-bound update needs a smooth loss; " +
            loss_family_name(loss.family()) + " must use the closed form");
      }
      return requested;
  }
  return requested;
}

double sdca_local_objective(double delta, int i, const DualState& state,
                            const DataMatrix& data, const LossSpec& loss,
                            double lambda) {
  const double conj = loss.conjugate(i, -state.alpha(i) - delta);
  if (std::isinf(conj)) return -kInf;
  const Eigen::VectorXd v =
      state.w + (delta / (lambda * data.n())) * data.x(i);
  return -0.5 * lambda * v.squaredNorm() - conj / data.n();
}

double delta_alpha_closed_form(int i, const DualState& state,
                               const DataMatrix& data, const LossSpec& loss,
                               double lambda) {
  const double alpha = state.alpha(i);
  const double sq = data.col_sqnorm(i);
  const double y = loss.label(i);
  if (sq == 0.0) {
    // pure conjugate maximization; for all four families the argmax of
    // -phi*(-beta) is beta = y
    return y - alpha;
  }
  const double z = state.w.dot(data.x(i));
  const double ln = lambda * data.n();
  switch (loss.family()) {
    case LossFamily::hinge: {
      const double b = clip(y * alpha + (1.0 - y * z) * ln / sq, 0.0, 1.0);
      return y * b - alpha;
    }
    case LossFamily::smoothed_hinge: {
      const double g = loss.gamma();
      const double du = (y - z - g * alpha) * ln / (sq + g * ln);
      const double b = clip(y * (alpha + du), 0.0, 1.0);
      return y * b - alpha;
    }
    case LossFamily::square_error:
      return (y - z - alpha) / (1.0 + sq / ln);
    case LossFamily::absolute_error: {
      const double b = clip(alpha + (y - z) * ln / sq, -1.0, 1.0);
      return b - alpha;
    }
    default:
      throw std::invalid_argument("delta_alpha_closed_form: no closed form for " +
                                  loss_family_name(loss.family()));
  }
}

double delta_alpha_lower_bound(int i, const DualState& state,
                               const DataMatrix& data, const LossSpec& loss,
                               double lambda, double gamma) {
  if (gamma <= 0.0) {
    throw std::invalid_argument("delta_alpha_lower_bound: gamma must be positive");
  }
  const double alpha = state.alpha(i);
  const double z = state.w.dot(data.x(i));
  const double q = -loss.subgradient(i, z) - alpha;
  if (q == 0.0) return 0.0;
  const double R = data.radius();
  const double ln_gamma = lambda * data.n() * gamma;
  const double s_lb = ln_gamma / (ln_gamma + R * R);
  const double num = z * alpha + loss.conjugate(i, -alpha) + loss.value(i, z);
  const double s = clip(0.5 + num / (gamma * q * q), 0.0, 1.0 / s_lb) * s_lb;
  return s * q;
}

SdcaRun train_sdca(const DataMatrix& data, const LossSpec& loss,
                   const TrainConfig& config, const SignPattern& pattern,
                   SdcaUpdate update, const IterateObserver& observer) {
  config.validate(data.n());
  if (loss.n() != data.n()) {
    throw DimensionError("loss n", loss.n(), "data n", data.n());
  }
  if (pattern.size() != data.d()) {
    throw DimensionError("pattern", pattern.size(), "data d", data.d());
  }
  if (loss.multiclass()) {
    throw std::invalid_argument("train_sdca: multiclass loss given; use train_sdca_multiclass");
  }
  const SdcaUpdate rule = resolve_sdca_update(update, loss);
  const double gamma = rule == SdcaUpdate::lower_bound ? loss.smooth_gamma() : 0.0;
  // the lower-bound path keeps the classification dual coordinate inside the
  // conjugate domain y*alpha in [0,1]; drift is pure rounding
  const bool clamp_dual = rule == SdcaUpdate::lower_bound &&
                          loss.family() != LossFamily::square_error;

  const int n = data.n();
  const double lambda = config.lambda;
  const std::int64_t T = config.iters;
  const std::int64_t T0 = config.resolved_t0(n);
  const auto start = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  DualState state = DualState::zeros(data.d(), n);
  Eigen::VectorXd sum_w = Eigen::VectorXd::Zero(data.d());
  ConvergenceTrace trace;
  double next_mark = config.trace_every;
  std::int64_t last_traced = 0;

  for (std::int64_t t = 1; t <= T; ++t) {
    const int i = static_cast<int>(rng.uniform_index(n));
    if (t > T0) sum_w += state.w;

    const double delta =
        rule == SdcaUpdate::closed_form
            ? delta_alpha_closed_form(i, state, data, loss, lambda)
            : delta_alpha_lower_bound(i, state, data, loss, lambda, gamma);
    if (delta != 0.0) {
      state.alpha(i) += delta;
      if (clamp_dual) {
        const double y = loss.label(i);
        state.alpha(i) = y * clip(y * state.alpha(i), 0.0, 1.0);
      }
      state.w_bar += (delta / (lambda * n)) * data.x(i);
      state.w = state.w_bar;
      sign_correct_in_place(state.w, pattern);
    }
    if (observer) observer(t, state.w);

    if (config.trace_every > 0) {
      const double epoch = static_cast<double>(t) / n;
      if ((epoch >= next_mark - 1e-12 || t == T) && t != last_traced) {
        TraceRow row;
        row.epoch = epoch;
        row.primal = primal_objective(state.w, data, loss, lambda);
        row.dual = dual_objective(state.alpha, data, loss, lambda, pattern);
        row.gap = row.primal - *row.dual;
        row.wall_ms = elapsed_ms(start);
        trace.add(std::move(row));
        last_traced = t;
        next_mark =
            (std::floor(epoch / config.trace_every) + 1.0) * config.trace_every;
      }
    }
  }

  Eigen::VectorXd avg = sum_w / static_cast<double>(T - T0);
  return SdcaRun{PrimalModel(std::move(avg), pattern), std::move(state),
                 std::move(trace)};
}

// ---- multiclass ----

namespace {

// Conjugate-domain checks use a small absolute slack for the affine
// constraints; grid tests hit the boundary head-on.
constexpr double kDomEps = 1e-9;

// phi*(v) for the multiclass families, +infinity outside the domain.
// softmax / max-hinge: p := v + e_y must lie on the simplex; the values are
// Σ p log p and p_y - 1. top-k: v must be the image of some λ in the top-k
// polytope {0 <= λ_j <= σ/k, σ = Σλ <= 1} under λ -> λ - σ e_y; the value is
// -Σ_{j≠y} v_j.
double mc_conjugate_exact(const LossSpec& loss, int i,
                          const Eigen::VectorXd& v) {
  const int m = loss.num_classes();
  const int y = loss.class_label(i);
  if (loss.family() == LossFamily::softmax_mc ||
      loss.family() == LossFamily::max_hinge_mc) {
    Eigen::VectorXd p = v;
    p(y) += 1.0;
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      if (p(j) < -kDomEps) return kInf;
      sum += p(j);
    }
    if (std::abs(sum - 1.0) > kDomEps) return kInf;
    if (loss.family() == LossFamily::max_hinge_mc) return p(y) - 1.0;
    double ent = 0.0;
    for (int j = 0; j < m; ++j) {
      if (p(j) > 0.0) ent += p(j) * std::log(p(j));
    }
    return ent;
  }
  // top-k
  const int k = loss.topk();
  double sp = 0.0, mx = 0.0;
  for (int j = 0; j < m; ++j) {
    if (j == y) continue;
    if (v(j) < -kDomEps) return kInf;
    sp += std::max(0.0, v(j));
    mx = std::max(mx, v(j));
  }
  if (std::abs(v(y) + sp) > kDomEps) return kInf;
  const double lo = std::max(0.0, k * mx - sp);
  const double hi =
      std::min(k > 1 ? sp / (k - 1) : kInf, 1.0 - sp);
  if (lo > hi + kDomEps) return kInf;
  return -sp;
}

// min ||p - z||² over {0 <= p_j <= cap, Σ p = total}, bisection on the shift.
Eigen::VectorXd project_capped_simplex(const Eigen::VectorXd& z, double total,
                                       double cap) {
  const int m = static_cast<int>(z.size());
  double lo = z.minCoeff() - cap, hi = z.maxCoeff();
  for (int it = 0; it < 200; ++it) {
    const double nu = 0.5 * (lo + hi);
    double sum = 0.0;
    for (int j = 0; j < m; ++j) sum += clip(z(j) - nu, 0.0, cap);
    (sum > total ? lo : hi) = nu;
  }
  const double nu = 0.5 * (lo + hi);
  Eigen::VectorXd p(m);
  for (int j = 0; j < m; ++j) p(j) = clip(z(j) - nu, 0.0, cap);
  // land exactly on the mass constraint for the domain checks downstream
  double err = total - p.sum();
  for (int j = 0; j < m && err != 0.0; ++j) {
    const double pj = clip(p(j) + err, 0.0, cap);
    err -= pj - p(j);
    p(j) = pj;
  }
  return p;
}

// Projection onto the image of the top-k polytope (see mc_conjugate_exact):
// for a fixed off-y mass s the slice is a capped simplex, and the squared
// distance is convex in s, so a ternary search over s does the rest.
Eigen::VectorXd project_topk_domain(const Eigen::VectorXd& zeta, int k, int y) {
  const int m = static_cast<int>(zeta.size());
  Eigen::VectorXd zoff(m - 1);
  for (int j = 0, c = 0; j < m; ++j) {
    if (j != y) zoff(c++) = zeta(j);
  }
  const auto cap_of = [&](double s) {
    return k > 1 ? std::min(1.0 / k, s / (k - 1)) : s;
  };
  const auto dist2 = [&](double s) {
    const Eigen::VectorXd p = project_capped_simplex(zoff, s, cap_of(s));
    const double dy = -s - zeta(y);
    return (p - zoff).squaredNorm() + dy * dy;
  };
  double a = 0.0, b = std::min(1.0, (m - 1.0) / k);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (dist2(m1) < dist2(m2)) {
      b = m2;
    } else {
      a = m1;
    }
  }
  const double s = 0.5 * (a + b);
  const Eigen::VectorXd p = project_capped_simplex(zoff, s, cap_of(s));
  Eigen::VectorXd v(m);
  for (int j = 0, c = 0; j < m; ++j) {
    if (j != y) v(j) = p(c++);
  }
  v(y) = -s;
  return v;
}

struct McInnerResult {
  Eigen::VectorXd delta;
  double residual = 0.0;
  int iters = 0;
  bool converged = true;
};

// Entropy KKT system for the softmax inner problem:
//   max_p -(c/2)||p - xi||² - Σ p log p  s.t. p in the simplex.
// Stationarity: c p_j + log p_j = c xi_j - 1 - nu; each coordinate is a
// monotone scalar solve, the multiplier nu is found by bisection on Σp = 1.
McInnerResult softmax_inner(const Eigen::VectorXd& xi, double c,
                            const SdcaMcOptions& opts) {
  const int m = static_cast<int>(xi.size());
  const auto p_of = [&](double tau) {
    // solve c e^x + x = tau for x = log p (monotone in x); bracketed Newton
    double lo = -746.0;
    double hi = std::min(710.0, std::max(0.0, tau));
    double x = clip(std::min(tau, 0.0), lo, hi);
    for (int it = 0; it < 100; ++it) {
      const double e = c * std::exp(x);
      const double f = e + x - tau;
      if (f > 0.0) {
        hi = x;
      } else {
        lo = x;
      }
      if (std::abs(f) < 1e-14 * std::max(1.0, std::abs(tau))) break;
      double xn = std::isfinite(f) ? x - f / (e + 1.0) : 0.5 * (lo + hi);
      if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
      if (xn == x) break;
      x = xn;
    }
    return std::exp(x);
  };
  const auto mass = [&](double nu, Eigen::VectorXd& p) {
    double sum = 0.0;
    for (int j = 0; j < m; ++j) {
      p(j) = p_of(c * xi(j) - 1.0 - nu);
      sum += p(j);
    }
    return sum;
  };

  Eigen::VectorXd p(m);
  double lo = -1.0, hi = 1.0;
  for (int it = 0; it < 100 && mass(lo, p) < 1.0; ++it) lo = lo * 2.0 - 1.0;
  for (int it = 0; it < 100 && mass(hi, p) > 1.0; ++it) hi = hi * 2.0 + 1.0;
  McInnerResult res;
  double sum = 0.0;
  int it = 0;
  for (; it < opts.inner_max_iters; ++it) {
    const double nu = 0.5 * (lo + hi);
    sum = mass(nu, p);
    if (std::abs(sum - 1.0) <= opts.inner_tol) break;
    (sum > 1.0 ? lo : hi) = nu;
  }
  res.iters = it + 1;
  res.residual = std::abs(sum - 1.0);
  res.converged = res.residual <= opts.inner_tol;
  p /= p.sum();  // land exactly on the simplex
  res.delta = std::move(p);
  return res;
}

McInnerResult mc_inner_solve(int i, const DualStateMatrix& state,
                             const DataMatrix& data, const LossSpec& loss,
                             double lambda, const SdcaMcOptions& opts) {
  const int m = loss.num_classes();
  const int y = loss.class_label(i);
  const Eigen::VectorXd alpha = state.A.col(i);
  const Eigen::VectorXd g = state.W.transpose() * data.x(i);
  // isotropic curvature of the n-scaled local objective; a zero column
  // degrades to the conjugate-only maximizer through a vanishing quadratic
  const double c_q =
      std::max(data.col_sqnorm(i), 1e-12) / (lambda * data.n());

  McInnerResult res;
  switch (loss.family()) {
    case LossFamily::softmax_mc: {
      const Eigen::VectorXd xi =
          Eigen::VectorXd(Eigen::VectorXd::Unit(m, y) - alpha + g / c_q);
      res = softmax_inner(xi, c_q, opts);
      const Eigen::VectorXd p = res.delta;
      res.delta = Eigen::VectorXd::Unit(m, y) - alpha - p;
      return res;
    }
    case LossFamily::max_hinge_mc: {
      // argmax = projection of the unconstrained maximizer onto the simplex
      const Eigen::VectorXd target = Eigen::VectorXd(
          Eigen::VectorXd::Unit(m, y) - alpha + (g - Eigen::VectorXd::Unit(m, y)) / c_q);
      const Eigen::VectorXd p = project_capped_simplex(target, 1.0, 1.0);
      res.delta = Eigen::VectorXd::Unit(m, y) - alpha - p;
      res.iters = 1;
      return res;
    }
    case LossFamily::topk_hinge_mc: {
      const Eigen::VectorXd zeta = Eigen::VectorXd(
          -alpha + (g - Eigen::VectorXd::Unit(m, y)) / c_q);
      const Eigen::VectorXd v = project_topk_domain(zeta, loss.topk(), y);
      res.delta = -alpha - v;
      res.iters = 1;
      return res;
    }
    default:
      throw std::invalid_argument("sdca multiclass: not a multiclass loss");
  }
}

}  // namespace

double sdca_local_objective_multiclass(const Eigen::VectorXd& delta, int i,
                                       const DualStateMatrix& state,
                                       const DataMatrix& data,
                                       const LossSpec& loss, double lambda) {
  if (delta.size() != loss.num_classes()) {
    throw DimensionError("delta", delta.size(), "classes", loss.num_classes());
  }
  const Eigen::VectorXd v = -state.A.col(i) - delta;
  const double conj = mc_conjugate_exact(loss, i, v);
  if (std::isinf(conj)) return -kInf;
  const Eigen::MatrixXd M =
      state.W + data.x(i) * delta.transpose() / (lambda * data.n());
  return -0.5 * lambda * M.squaredNorm() - conj / data.n();
}

Eigen::VectorXd delta_alpha_multiclass(int i, const DualStateMatrix& state,
                                       const DataMatrix& data,
                                       const LossSpec& loss, double lambda,
                                       const SdcaMcOptions& opts) {
  McInnerResult res = mc_inner_solve(i, state, data, loss, lambda, opts);
  if (!res.converged) {
    throw ConvergenceError("sdca multiclass inner solver did not converge in " +
                               std::to_string(opts.inner_max_iters) +
                               " iterations",
                           res.residual);
  }
  return std::move(res.delta);
}

SdcaRunMc train_sdca_multiclass(const DataMatrix& data, const LossSpec& loss,
                                const TrainConfig& config,
                                const SignPatternMatrix& pattern,
                                const SdcaMcOptions& opts,
                                const IterateObserverMc& observer) {
  config.validate(data.n());
  if (!loss.multiclass()) {
    throw std::invalid_argument("train_sdca_multiclass: scalar loss given");
  }
  const int m = loss.num_classes();
  if (pattern.d() != data.d() || pattern.m() != m) {
    throw DimensionError("pattern entries",
                         static_cast<long>(pattern.d()) * pattern.m(),
                         "model entries", static_cast<long>(data.d()) * m);
  }

  const int n = data.n();
  const double lambda = config.lambda;
  const std::int64_t T = config.iters;
  const std::int64_t T0 = config.resolved_t0(n);
  const SignPattern flat = pattern.flattened();
  const auto start = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  DualStateMatrix state = DualStateMatrix::zeros(data.d(), n, m);
  Eigen::MatrixXd sum_W = Eigen::MatrixXd::Zero(data.d(), m);
  ConvergenceTrace trace;
  double next_mark = config.trace_every;
  std::int64_t last_traced = 0;

  for (std::int64_t t = 1; t <= T; ++t) {
    const int i = static_cast<int>(rng.uniform_index(n));
    if (t > T0) sum_W += state.W;

    Eigen::VectorXd delta =
        delta_alpha_multiclass(i, state, data, loss, lambda, opts);
    if (!delta.isZero(0.0)) {
      state.A.col(i) += delta;
      state.W_bar += data.x(i) * delta.transpose() / (lambda * n);
      state.W = state.W_bar;
      Eigen::Map<Eigen::VectorXd> fw(state.W.data(), state.W.size());
      sign_correct_in_place(fw, flat);
    }
    if (observer) observer(t, state.W);

    if (config.trace_every > 0) {
      const double epoch = static_cast<double>(t) / n;
      if ((epoch >= next_mark - 1e-12 || t == T) && t != last_traced) {
        TraceRow row;
        row.epoch = epoch;
        row.primal = primal_objective(state.W, data, loss, lambda);
        row.wall_ms = elapsed_ms(start);
        trace.add(std::move(row));
        last_traced = t;
        next_mark =
            (std::floor(epoch / config.trace_every) + 1.0) * config.trace_every;
      }
    }
  }

  Eigen::MatrixXd avg = sum_W / static_cast<double>(T - T0);
  return SdcaRunMc{PrimalModelMatrix(std::move(avg), pattern),
                   std::move(state), std::move(trace)};
}

}  // namespace signopt
