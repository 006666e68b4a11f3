#include "signopt/experiments.hpp"

#include <atomic>
#include <mutex>
#include <thread>

#include "signopt/dataio.hpp"
#include "signopt/metrics.hpp"
#include "signopt/objectives.hpp"
#include "signopt/oracle.hpp"
#include "signopt/pegasos.hpp"
#include "signopt/rng.hpp"
#include "signopt/sdca.hpp"

namespace signopt {

BenchResult bench_convergence(const DataMatrix& data, const LossSpec& loss,
                              const SignPattern& pattern,
                              const BenchConfig& config) {
  const int n = data.n();
  BenchResult out;
  out.lambda = config.lambda > 0.0 ? config.lambda : 1.0 / n;

  ReferenceOptions ref;
  ref.tol = config.ref_tol;
  ref.max_steps = config.ref_max_steps;
  const PrimalModel star =
      reference_solve(data, loss, out.lambda, pattern, ref);
  out.p_star = primal_objective(star, data, loss, out.lambda);

  const auto rebase = [&](ConvergenceTrace trace, std::string name) {
    BenchSeries s;
    s.name = std::move(name);
    for (TraceRow row : trace.rows()) {
      row.gap = row.primal - out.p_star;
      s.trace.add(std::move(row));
    }
    s.final_gap = s.trace.rows().empty() ? 0.0 : *s.trace.back().gap;
    return s;
  };

  {
    TrainConfig tc;
    tc.lambda = out.lambda;
    tc.iters = static_cast<std::int64_t>(config.epochs) * n;
    tc.seed = config.seed;
    tc.trace_every = config.trace_every;
    SdcaRun run = train_sdca(data, loss, tc, pattern);
    out.series.push_back(rebase(std::move(run.trace), "sc-sdca"));
  }
  for (const int k : config.pegasos_batches) {
    TrainConfig tc;
    tc.lambda = out.lambda;
    tc.minibatch_k = k;
    tc.iters = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(config.epochs) * n / k);
    tc.seed = config.seed;
    tc.trace_every = config.trace_every;
    PegasosRun run = train_pegasos(data, loss, tc, pattern);
    out.series.push_back(
        rebase(std::move(run.trace), "sc-pega-k" + std::to_string(k)));
  }
  return out;
}

namespace {

struct TrialOutcome {
  double roc_sc = 0.0, roc_un = 0.0;
  double prbep_sc = 0.0, prbep_un = 0.0;
};

}  // namespace

PairedTrialsResult paired_sign_trials(const PairedTrialsConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("paired_sign_trials: trials must be >= 1");
  }
  // fixed ground truth and a fully constrained pattern drawn once
  Rng master(config.seed);
  Eigen::VectorXi c(config.d);
  for (int h = 0; h < config.d; ++h) {
    c(h) = master.uniform_index(2) == 0 ? -1 : 1;
  }
  const SignPattern pattern(c);
  const SignPattern unconstrained = SignPattern::zeros(config.d);
  const Eigen::VectorXd w_star =
      synth_ground_truth(master, config.d, pattern);

  std::vector<TrialOutcome> outcomes(config.trials);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  const auto worker = [&]() {
    try {
      SynthOptions synth;
      synth.noise = config.noise;
      for (;;) {
        const int trial = next.fetch_add(1);
        if (trial >= config.trials) return;
        Rng rng(config.seed + 1 + static_cast<std::uint64_t>(trial));
        const DataMatrix train =
            synth_from_ground_truth(rng, w_star, config.n_train, synth);
        const DataMatrix test =
            synth_from_ground_truth(rng, w_star, config.n_test, synth);
        const LossSpec loss = LossSpec::hinge(train);
        TrainConfig tc;
        tc.lambda = config.lambda;
        tc.iters = config.iters;
        tc.seed = rng.next_u64();
        tc.trace_every = 0;
        const SdcaRun sc = train_sdca(train, loss, tc, pattern);
        const SdcaRun un = train_sdca(train, loss, tc, unconstrained);
        const Eigen::VectorXd scores_sc =
            test.features().transpose() * sc.averaged_model.w;
        const Eigen::VectorXd scores_un =
            test.features().transpose() * un.averaged_model.w;
        TrialOutcome& o = outcomes[trial];
        o.roc_sc = roc_auc(scores_sc, test.labels());
        o.roc_un = roc_auc(scores_un, test.labels());
        o.prbep_sc = prbep(scores_sc, test.labels());
        o.prbep_un = prbep(scores_un, test.labels());
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(config.trials);  // drain remaining work
    }
  };

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, config.trials));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  PairedTrialsResult res;
  res.trials = config.trials;
  for (const TrialOutcome& o : outcomes) {
    res.mean_roc_constrained += o.roc_sc;
    res.mean_roc_unconstrained += o.roc_un;
    res.mean_roc_delta += o.roc_sc - o.roc_un;
    res.mean_prbep_delta += o.prbep_sc - o.prbep_un;
    res.frac_roc_improved += o.roc_sc > o.roc_un ? 1.0 : 0.0;
    res.frac_prbep_improved += o.prbep_sc > o.prbep_un ? 1.0 : 0.0;
  }
  const double inv = 1.0 / config.trials;
  res.mean_roc_constrained *= inv;
  res.mean_roc_unconstrained *= inv;
  res.mean_roc_delta *= inv;
  res.mean_prbep_delta *= inv;
  res.frac_roc_improved *= inv;
  res.frac_prbep_improved *= inv;
  return res;
}

}  // namespace signopt
