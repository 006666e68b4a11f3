#include "signopt/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace signopt {

void write_model(std::ostream& out, const StoredModel& stored) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", stored.lambda);
  out << "# lambda=" << buf << " loss=" << stored.loss_name
      << " seed=" << stored.seed << '\n';
  const PrimalModel& m = stored.model;
  for (int h = 0; h < m.pattern.size(); ++h) {
    std::snprintf(buf, sizeof(buf), "%.17g", m.w(h));
    out << (h + 1) << ' ' << m.pattern[h] << ' ' << buf << '\n';
  }
}

void write_model_file(const std::string& path, const StoredModel& stored) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_model(out, stored);
}

StoredModel read_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw ParseError(1, "model file must start with '# lambda=... loss=... seed=...'");
  }
  double lambda = 0.0;
  std::string loss_name;
  std::uint64_t seed = 0;
  {
    std::istringstream ss(line.substr(2));
    std::string tok;
    bool have_lambda = false, have_loss = false, have_seed = false;
    while (ss >> tok) {
      if (tok.rfind("lambda=", 0) == 0) {
        lambda = std::strtod(tok.c_str() + 7, nullptr);
        have_lambda = true;
      } else if (tok.rfind("loss=", 0) == 0) {
        loss_name = tok.substr(5);
        have_loss = true;
      } else if (tok.rfind("seed=", 0) == 0) {
        seed = std::strtoull(tok.c_str() + 5, nullptr, 10);
        have_seed = true;
      }
    }
    if (!have_lambda || !have_loss || !have_seed) {
      throw ParseError(1, "model header missing lambda/loss/seed");
    }
  }
  std::vector<double> w;
  std::vector<int> c;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    long h = 0;
    int ch = 0;
    double wh = 0.0;
    if (!(ss >> h >> ch >> wh) || h != static_cast<long>(w.size()) + 1) {
      throw ParseError(lineno, "expected '<h> <c_h> <w_h>' with consecutive h");
    }
    c.push_back(ch);
    w.push_back(wh);
  }
  if (w.empty()) throw ParseError(lineno, "model has no coordinates");
  Eigen::VectorXd wv = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
  Eigen::VectorXi cv(static_cast<Eigen::Index>(c.size()));
  for (std::size_t h = 0; h < c.size(); ++h) cv(static_cast<Eigen::Index>(h)) = c[h];
  return StoredModel(PrimalModel(std::move(wv), SignPattern(std::move(cv))),
                     lambda, loss_name, seed);
}

StoredModel read_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_model(in);
}

}  // namespace signopt
