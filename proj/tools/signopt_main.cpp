// Command-line front end: train sign-constrained linear models, evaluate
// metrics, run convergence benchmarks, and generate synthetic datasets.

#include <cstdio>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "signopt/dataio.hpp"
#include "signopt/experiments.hpp"
#include "signopt/losses.hpp"
#include "signopt/metrics.hpp"
#include "signopt/model_io.hpp"
#include "signopt/objectives.hpp"
#include "signopt/pegasos.hpp"
#include "signopt/sdca.hpp"

using namespace signopt;

namespace {

LossSpec make_loss(const std::string& name, const DataMatrix& data,
                   double gamma) {
  if (name == "hinge") return LossSpec::hinge(data);
  if (name == "smoothed_hinge") return LossSpec::smoothed_hinge(data, gamma);
  if (name == "logistic") return LossSpec::logistic(data);
  if (name == "square") return LossSpec::square_error(data);
  if (name == "absolute") return LossSpec::absolute_error(data);
  throw CLI::ValidationError("--loss", "unknown loss '" + name + "'");
}

// "none", inline "pos=...;neg=...", or a path to a file with d sign lines
SignPattern load_signs(const std::string& spec, int d) {
  if (spec.empty() || spec == "none" ||
      spec.find('=') != std::string::npos) {
    return parse_sign_spec(spec, d);
  }
  std::ifstream in(spec);
  if (!in) {
    throw std::invalid_argument("signs: cannot open file '" + spec + "'");
  }
  return read_sign_file(in, d);
}

DataMatrix as_binary(const DataMatrix& data) {
  return DataMatrix(data.features(), data.labels(), LabelKind::binary);
}

int cmd_train(const std::string& data_path, const std::string& loss_name,
              double gamma, double lambda, const std::string& algo,
              const std::string& signs, std::int64_t iters, std::int64_t t0,
              int batch, const std::string& sdca_update, std::uint64_t seed,
              const std::string& out_path, const std::string& trace_path) {
  const DataMatrix data = parse_svmlight_file(data_path);
  const LossSpec loss = make_loss(loss_name, data, gamma);
  const SignPattern pattern = load_signs(signs, data.d());

  TrainConfig config;
  config.lambda = lambda;
  config.iters = iters;
  config.t0 = t0;
  config.minibatch_k = batch;
  config.seed = seed;
  config.trace_every = trace_path.empty() ? 0 : 1;

  PrimalModel model(Eigen::VectorXd::Zero(data.d()), pattern);
  ConvergenceTrace trace;
  if (algo == "sc-pega") {
    PegasosRun run = train_pegasos(data, loss, config, pattern);
    model = std::move(run.averaged_model);
    trace = std::move(run.trace);
  } else if (algo == "sc-sdca") {
    SdcaUpdate rule = SdcaUpdate::automatic;
    if (sdca_update == "closed") rule = SdcaUpdate::closed_form;
    if (sdca_update == "lb") rule = SdcaUpdate::lower_bound;
    resolve_sdca_update(rule, loss);  // reject infeasible combos up front
    SdcaRun run = train_sdca(data, loss, config, pattern, rule);
    model = std::move(run.averaged_model);
    trace = std::move(run.trace);
  } else {
    throw CLI::ValidationError("--algo", "unknown algorithm '" + algo + "'");
  }

  write_model_file(out_path, StoredModel(model, lambda, loss_name, seed));
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    write_trace_csv(out, trace);
  }
  std::printf("primal_objective %.17g\n",
              primal_objective(model, data, loss, lambda));
  return 0;
}

int cmd_eval_model(const std::string& model_path, const std::string& data_path,
                   const std::string& metrics) {
  const StoredModel stored = read_model_file(model_path);
  const DataMatrix raw = parse_svmlight_file(data_path);
  if (raw.d() != stored.model.w.size()) {
    throw DimensionError("model d", stored.model.w.size(), "data d", raw.d());
  }
  const DataMatrix data = as_binary(raw);  // metrics need +-1 labels
  const Eigen::VectorXd scores =
      data.features().transpose() * stored.model.w;
  std::istringstream ss(metrics);
  std::string metric;
  while (std::getline(ss, metric, ',')) {
    if (metric == "roc") {
      std::printf("roc %.6f\n", roc_auc(scores, data.labels()));
    } else if (metric == "prbep") {
      std::printf("prbep %.6f\n", prbep(scores, data.labels()));
    } else {
      throw std::invalid_argument("unknown metric '" + metric + "'");
    }
  }
  return 0;
}

int cmd_eval_trials(int trials, int n_train, int n_test, int d, double noise,
                    double lambda, std::int64_t iters, std::uint64_t seed,
                    int threads) {
  PairedTrialsConfig config;
  config.trials = trials;
  config.n_train = n_train;
  config.n_test = n_test;
  config.d = d;
  config.noise = noise;
  config.lambda = lambda;
  config.iters = iters;
  config.seed = seed;
  config.threads = threads;
  const PairedTrialsResult res = paired_sign_trials(config);
  std::printf("trials %d\n", res.trials);
  std::printf("mean_roc_constrained %.6f\n", res.mean_roc_constrained);
  std::printf("mean_roc_unconstrained %.6f\n", res.mean_roc_unconstrained);
  std::printf("mean_roc_delta %.6f\n", res.mean_roc_delta);
  std::printf("mean_prbep_delta %.6f\n", res.mean_prbep_delta);
  std::printf("frac_roc_improved %.4f\n", res.frac_roc_improved);
  std::printf("frac_prbep_improved %.4f\n", res.frac_prbep_improved);
  return 0;
}

int cmd_bench(const std::string& data_path, const std::string& signs,
              const std::string& loss_name, double gamma, double lambda,
              int epochs, std::uint64_t seed, const std::string& out_prefix,
              const std::vector<int>& batches) {
  const DataMatrix raw = parse_svmlight_file(data_path);
  const DataMatrix data = as_binary(raw);
  const LossSpec loss = make_loss(loss_name, data, gamma);
  const SignPattern pattern = load_signs(signs, data.d());

  BenchConfig config;
  config.lambda = lambda;
  config.epochs = epochs;
  config.seed = seed;
  if (!batches.empty()) config.pegasos_batches = batches;
  const BenchResult result = bench_convergence(data, loss, pattern, config);

  std::printf("lambda %.17g\n", result.lambda);
  std::printf("p_star %.17g\n", result.p_star);
  for (const BenchSeries& s : result.series) {
    const std::string path = out_prefix + s.name + ".csv";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "'");
    write_trace_csv(out, s.trace);
    std::printf("series %s final_gap %.10g file %s\n", s.name.c_str(),
                s.final_gap, path.c_str());
  }
  return 0;
}

int cmd_synth(const std::string& out_path, int n, int d, std::uint64_t seed,
              double noise, double margin, int levels, double feature_scale,
              const std::string& signs, const std::string& signs_out) {
  const SignPattern pattern = load_signs(signs, d);
  SynthOptions opts;
  opts.noise = noise;
  opts.margin = margin;
  opts.levels = levels;
  opts.feature_scale = feature_scale;
  const DataMatrix data = synth_classification(seed, n, d, pattern, opts);
  write_svmlight_file(out_path, data);
  if (!signs_out.empty()) {
    std::ofstream out(signs_out);
    if (!out) throw std::runtime_error("cannot open '" + signs_out + "'");
    write_sign_file(out, pattern);
  }
  std::printf("wrote %d examples, d=%d, to %s\n", n, d, out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sign-constrained regularized loss minimization"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train a model");
  std::string data_path, loss_name = "hinge", algo = "sc-sdca", signs = "none";
  std::string out_path, trace_path, sdca_update = "auto";
  double gamma = 0.01, lambda = 0.1;
  std::int64_t iters = 10000, t0 = -1;
  int batch = 1;
  std::uint64_t seed = 0;
  train->add_option("--data", data_path)->required();
  train->add_option("--loss", loss_name,
                    "hinge|smoothed_hinge|logistic|square|absolute");
  train->add_option("--gamma", gamma, "smoothed hinge width");
  train->add_option("--lambda", lambda)->required();
  train->add_option("--algo", algo, "sc-pega|sc-sdca");
  train->add_option("--signs", signs, "none | pos=..;neg=.. | sign file");
  train->add_option("--iters", iters);
  train->add_option("--t0", t0, "SDCA averaging burn-in (default auto)");
  train->add_option("--batch", batch, "Pegasos mini-batch size");
  train->add_option("--sdca-update", sdca_update, "auto|closed|lb");
  train->add_option("--seed", seed);
  train->add_option("--out", out_path)->required();
  train->add_option("--trace", trace_path, "write a CSV trace here");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a model or run paired trials");
  std::string model_path, eval_data, metrics = "roc,prbep";
  int trials = 0, n_train = 10, n_test = 500, d = 12, threads = 0;
  double noise = 1.0, trial_lambda = 0.1;
  std::int64_t trial_iters = 2000;
  std::uint64_t eval_seed = 0;
  eval->add_option("--model", model_path);
  eval->add_option("--data", eval_data);
  eval->add_option("--metrics", metrics, "comma list of roc,prbep");
  eval->add_option("--trials", trials, "paired-trials mode: number of trials");
  eval->add_option("--n-train", n_train);
  eval->add_option("--n-test", n_test);
  eval->add_option("--d", d);
  eval->add_option("--noise", noise);
  eval->add_option("--lambda", trial_lambda);
  eval->add_option("--iters", trial_iters);
  eval->add_option("--seed", eval_seed);
  eval->add_option("--threads", threads);

  // bench-convergence
  auto* bench = app.add_subcommand("bench-convergence",
                                   "objective-gap traces for all solvers");
  std::string bench_data, bench_signs = "none", bench_loss = "smoothed_hinge";
  std::string out_prefix = "bench-";
  double bench_gamma = 0.01, bench_lambda = 0.0;
  int epochs = 100;
  std::uint64_t bench_seed = 0;
  std::vector<int> batches;
  bench->add_option("--data", bench_data)->required();
  bench->add_option("--signs", bench_signs);
  bench->add_option("--loss", bench_loss);
  bench->add_option("--gamma", bench_gamma);
  bench->add_option("--lambda", bench_lambda, "default 1/n");
  bench->add_option("--epochs", epochs);
  bench->add_option("--seed", bench_seed);
  bench->add_option("--out-prefix", out_prefix);
  bench->add_option("--batches", batches, "Pegasos mini-batch sizes");

  // synth
  auto* synth = app.add_subcommand("synth", "generate synthetic data");
  std::string synth_out, synth_signs = "none", signs_out;
  int synth_n = 100, synth_d = 10, levels = 0;
  double synth_noise = 0.0, margin = 0.0, feature_scale = 1.0;
  std::uint64_t synth_seed = 0;
  synth->add_option("--out", synth_out)->required();
  synth->add_option("--n", synth_n)->required();
  synth->add_option("--d", synth_d)->required();
  synth->add_option("--seed", synth_seed);
  synth->add_option("--noise", synth_noise);
  synth->add_option("--margin", margin, "resample below this |score|");
  synth->add_option("--levels", levels, "0 gaussian, else discrete levels");
  synth->add_option("--feature-scale", feature_scale, "multiply features");
  synth->add_option("--signs", synth_signs);
  synth->add_option("--signs-out", signs_out, "also write the sign file");

  try {
    app.parse(argc, argv);
    if (train->parsed()) {
      return cmd_train(data_path, loss_name, gamma, lambda, algo, signs, iters,
                       t0, batch, sdca_update, seed, out_path, trace_path);
    }
    if (eval->parsed()) {
      if (trials > 0) {
        return cmd_eval_trials(trials, n_train, n_test, d, noise, trial_lambda,
                               trial_iters, eval_seed, threads);
      }
      if (model_path.empty() || eval_data.empty()) {
        throw CLI::ValidationError(
            "eval", "need --model and --data (or --trials N)");
      }
      return cmd_eval_model(model_path, eval_data, metrics);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_data, bench_signs, bench_loss, bench_gamma,
                       bench_lambda, epochs, bench_seed, out_prefix, batches);
    }
    if (synth->parsed()) {
      return cmd_synth(synth_out, synth_n, synth_d, synth_seed, synth_noise,
                       margin, levels, feature_scale, synth_signs, signs_out);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
