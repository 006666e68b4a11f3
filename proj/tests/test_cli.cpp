// Drives the installed CLI binary end to end through std::system.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "signopt/dataio.hpp"
#include "signopt/metrics.hpp"
#include "signopt/model_io.hpp"

using namespace signopt;
namespace fs = std::filesystem;

namespace {

const std::string kCli = SIGNOPT_CLI_PATH;

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("signopt_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

int run(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = kCli + " " + args;
  if (!stdout_file.empty()) {
    cmd += " > " + stdout_file;
  } else {
    cmd += " > /dev/null";
  }
  cmd += " 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data_file() {
  static std::string path = [] {
    const fs::path p = work_dir() / "data.svm";
    const int rc = run("synth --out " + p.string() +
                       " --n 80 --d 6 --seed 11 --noise 0.3 --signs 'pos=1-3;neg=4-6'");
    REQUIRE(rc == 0);
    return p.string();
  }();
  return path;
}

}  // namespace

TEST_CASE("synth writes a parseable dataset") {
  const DataMatrix data = parse_svmlight_file(data_file());
  CHECK(data.n() == 80);
  CHECK(data.d() == 6);
  for (int i = 0; i < data.n(); ++i) {
    CHECK((data.y(i) == 1.0 || data.y(i) == -1.0));
  }
}

TEST_CASE("training is deterministic: same flags and seed, same bytes") {
  const fs::path m1 = work_dir() / "m1.model";
  const fs::path m2 = work_dir() / "m2.model";
  const std::string flags =
      " --loss smoothed_hinge --gamma 0.1 --lambda 0.05 --algo sc-sdca"
      " --signs 'pos=1-3;neg=4-6' --iters 2000 --seed 42 --data " + data_file();
  CHECK(run("train" + flags + " --out " + m1.string()) == 0);
  CHECK(run("train" + flags + " --out " + m2.string()) == 0);
  CHECK(slurp(m1) == slurp(m2));

  const StoredModel stored = read_model_file(m1.string());
  CHECK(stored.lambda == 0.05);
  CHECK(stored.loss_name == "smoothed_hinge");
  CHECK(stored.seed == 42);
  CHECK(stored.model.pattern[0] == 1);
  CHECK(stored.model.pattern[5] == -1);
}

TEST_CASE("--signs none equals the unconstrained baseline") {
  const fs::path m1 = work_dir() / "none1.model";
  const fs::path m2 = work_dir() / "none2.model";
  const std::string base =
      " --loss hinge --lambda 0.1 --algo sc-pega --batch 4 --iters 1500"
      " --seed 7 --data " + data_file();
  CHECK(run("train" + base + " --signs none --out " + m1.string()) == 0);
  // an all-zero sign file is the same constraint set
  const fs::path sf = work_dir() / "zeros.signs";
  {
    std::ofstream out(sf);
    for (int h = 0; h < 6; ++h) out << "0\n";
  }
  CHECK(run("train" + base + " --signs " + sf.string() + " --out " +
            m2.string()) == 0);
  const StoredModel a = read_model_file(m1.string());
  const StoredModel b = read_model_file(m2.string());
  CHECK((a.model.w - b.model.w).norm() == 0.0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("train --data " + data_file() +
            " --loss nosuch --lambda 0.1 --out /tmp/x.model") == 2);
  CHECK(run("train --data " + data_file() +
            " --loss hinge --lambda 0.1 --algo sc-what --out /tmp/x.model") ==
        2);
  // the lower-bound update path rejects the (non-smooth) hinge
  CHECK(run("train --data " + data_file() +
            " --loss hinge --lambda 0.1 --algo sc-sdca --sdca-update lb"
            " --out /tmp/x.model") == 2);
  CHECK(run("eval") == 2);
  CHECK(run("nosuchcommand") == 2);
  CHECK(run("train --data /no/such/file.svm --loss hinge --lambda 0.1 --out "
            "/tmp/x.model") == 1);
}

TEST_CASE("eval matches the metrics module on a shared fixture") {
  const fs::path model_path = work_dir() / "eval.model";
  CHECK(run("train --data " + data_file() +
            " --loss hinge --lambda 0.1 --algo sc-sdca --iters 3000 --seed 3"
            " --signs 'pos=1-3;neg=4-6' --out " + model_path.string()) == 0);
  const fs::path out = work_dir() / "eval.txt";
  CHECK(run("eval --model " + model_path.string() + " --data " + data_file() +
            " --metrics roc,prbep", out.string()) == 0);

  const StoredModel stored = read_model_file(model_path.string());
  const DataMatrix raw = parse_svmlight_file(data_file());
  const DataMatrix data(raw.features(), raw.labels(), LabelKind::binary);
  const Eigen::VectorXd scores =
      data.features().transpose() * stored.model.w;
  const double roc = roc_auc(scores, data.labels());
  const double pr = prbep(scores, data.labels());

  std::istringstream ss(slurp(out));
  std::string name;
  double value = 0.0;
  ss >> name >> value;
  CHECK(name == "roc");
  CHECK(value == doctest::Approx(roc).epsilon(1e-5));
  ss >> name >> value;
  CHECK(name == "prbep");
  CHECK(value == doctest::Approx(pr).epsilon(1e-5));
}

TEST_CASE("bench-convergence emits non-negative gap traces") {
  const fs::path prefix = work_dir() / "bench-";
  const fs::path out = work_dir() / "bench.txt";
  CHECK(run("bench-convergence --data " + data_file() +
            " --signs 'pos=1-3;neg=4-6' --loss smoothed_hinge --gamma 0.1"
            " --epochs 5 --seed 1 --batches 5 10 --out-prefix " +
            prefix.string(), out.string()) == 0);
  for (const std::string name : {"sc-sdca", "sc-pega-k5", "sc-pega-k10"}) {
    const fs::path csv = fs::path(prefix.string() + name + ".csv");
    REQUIRE(fs::exists(csv));
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "epoch,primal,dual,gap,wall_ms");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string cell;
      std::getline(ls, cell, ',');  // epoch
      std::getline(ls, cell, ',');  // primal
      std::getline(ls, cell, ',');  // dual
      std::getline(ls, cell, ',');  // gap
      CHECK(std::stod(cell) >= -1e-9);
      ++rows;
    }
    CHECK(rows >= 5);
  }
}

TEST_CASE("paired-trials mode reports a positive mean ROC delta") {
  const fs::path out = work_dir() / "trials.txt";
  CHECK(run("eval --trials 40 --n-train 10 --n-test 300 --d 12 --noise 1.0"
            " --lambda 0.1 --seed 19",
            out.string()) == 0);
  std::istringstream ss(slurp(out));
  std::string key;
  double value = 0.0;
  double mean_delta = -1.0, frac = -1.0;
  while (ss >> key >> value) {
    if (key == "mean_roc_delta") mean_delta = value;
    if (key == "frac_roc_improved") frac = value;
  }
  CHECK(mean_delta > 0.0);
  CHECK(frac > 0.5);
}

TEST_CASE("desk-scale benchmark training completes well under a minute") {
  const fs::path model = work_dir() / "bench.model";
  const auto t0 = std::chrono::steady_clock::now();
  CHECK(run(std::string("train --data ") + SIGNOPT_DATA_DIR +
            "/bench2000.svm --loss smoothed_hinge --gamma 0.01"
            " --lambda 0.0005 --algo sc-sdca --iters 40000 --seed 1"
            " --signs " + SIGNOPT_DATA_DIR + "/bench2000.signs --out " +
            model.string()) == 0);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  CHECK(secs < 60.0);
  CHECK(fs::exists(model));
}
