#include "signopt/dataio.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace signopt {

namespace {

struct ParsedLine {
  double label;
  std::vector<std::pair<int, double>> entries;
};

std::string strip_comment(const std::string& line) {
  const auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

ParsedLine parse_line(const std::string& text, long lineno) {
  ParsedLine out;
  std::istringstream ss(text);
  std::string tok;
  if (!(ss >> tok)) throw ParseError(lineno, "missing label");
  {
    char* end = nullptr;
    out.label = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size()) {
      throw ParseError(lineno, "bad label '" + tok + "'");
    }
  }
  int prev_index = 0;
  while (ss >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
      throw ParseError(lineno, "bad feature token '" + tok + "'");
    }
    char* end = nullptr;
    const std::string idx_str = tok.substr(0, colon);
    const long idx = std::strtol(idx_str.c_str(), &end, 10);
    if (end != idx_str.c_str() + idx_str.size() || idx < 1) {
      throw ParseError(lineno, "bad feature index '" + idx_str + "'");
    }
    if (idx <= prev_index) {
      throw ParseError(lineno, "feature indices must be strictly increasing (" +
                                   std::to_string(idx) + " after " +
                                   std::to_string(prev_index) + ")");
    }
    const std::string val_str = tok.substr(colon + 1);
    const double val = std::strtod(val_str.c_str(), &end);
    if (end != val_str.c_str() + val_str.size()) {
      throw ParseError(lineno, "bad feature value '" + val_str + "'");
    }
    out.entries.emplace_back(static_cast<int>(idx), val);
    prev_index = static_cast<int>(idx);
  }
  return out;
}

void append_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

DataMatrix parse_svmlight(std::istream& in) {
  std::vector<ParsedLine> lines;
  int d = 1;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string text = strip_comment(raw);
    if (blank(text)) continue;
    ParsedLine pl = parse_line(text, lineno);
    if (!pl.entries.empty()) d = std::max(d, pl.entries.back().first);
    lines.push_back(std::move(pl));
  }
  if (lines.empty()) {
    throw ParseError(lineno, "no examples in stream");
  }
  const int n = static_cast<int>(lines.size());
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(d, n);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y(i) = lines[i].label;
    for (const auto& [idx, val] : lines[i].entries) {
      X(idx - 1, i) = val;
    }
  }
  return DataMatrix(std::move(X), std::move(y), LabelKind::real);
}

DataMatrix parse_svmlight_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_svmlight(in);
}

void write_svmlight(std::ostream& out, const DataMatrix& data) {
  std::string line;
  for (int i = 0; i < data.n(); ++i) {
    line.clear();
    append_double(line, data.has_labels() ? data.y(i) : 0.0);
    for (int h = 0; h < data.d(); ++h) {
      const double v = data.features()(h, i);
      if (v == 0.0) continue;
      line += ' ';
      line += std::to_string(h + 1);
      line += ':';
      append_double(line, v);
    }
    line += '\n';
    out << line;
  }
}

void write_svmlight_file(const std::string& path, const DataMatrix& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_svmlight(out, data);
}

VariableSplit split_variable(const DataMatrix& data, int feature,
                             double threshold) {
  if (feature < 0 || feature >= data.d()) {
    throw std::out_of_range("split_variable: feature index " +
                            std::to_string(feature));
  }
  const int d = data.d(), n = data.n();
  Eigen::MatrixXd X(d + 1, n);
  if (feature > 0) X.topRows(feature) = data.features().topRows(feature);
  for (int i = 0; i < n; ++i) {
    const double v = data.features()(feature, i);
    X(feature, i) = std::max(0.0, v - threshold);
    X(feature + 1, i) = std::max(0.0, threshold - v);
  }
  if (feature + 1 < d) {
    X.bottomRows(d - feature - 1) = data.features().bottomRows(d - feature - 1);
  }
  VariableSplit out{
      data.has_labels()
          ? DataMatrix(std::move(X), data.labels(), data.label_kind())
          : DataMatrix(std::move(X)),
      feature, feature + 1, std::vector<int>(d)};
  for (int h = 0; h < d; ++h) {
    out.old_to_new[h] = h <= feature ? h : h + 1;
  }
  return out;
}

Eigen::VectorXd synth_ground_truth(Rng& rng, int d,
                                   const SignPattern& pattern) {
  if (pattern.size() != d) {
    throw DimensionError("d", d, "pattern", pattern.size());
  }
  Eigen::VectorXd w(d);
  for (int h = 0; h < d; ++h) {
    const double g = rng.normal();
    w(h) = pattern[h] == 0 ? g : pattern[h] * (0.5 + std::abs(g));
  }
  return w;
}

Eigen::VectorXd synth_ground_truth(std::uint64_t seed, int d,
                                   const SignPattern& pattern) {
  Rng rng(seed);
  return synth_ground_truth(rng, d, pattern);
}

DataMatrix synth_from_ground_truth(Rng& rng, const Eigen::VectorXd& w_star,
                                   int n, const SynthOptions& opts) {
  const int d = static_cast<int>(w_star.size());
  Eigen::MatrixXd X(d, n);
  Eigen::VectorXd y(n);
  Eigen::VectorXd x(d);
  for (int i = 0; i < n; ++i) {
    double score = 0.0;
    do {
      for (int h = 0; h < d; ++h) {
        if (opts.levels >= 2) {
          x(h) = static_cast<double>(rng.uniform_index(opts.levels)) /
                     (opts.levels - 1) -
                 0.5;
        } else {
          x(h) = rng.normal();
        }
      }
      score = w_star.dot(x);
    } while (opts.margin > 0.0 && std::abs(score) < opts.margin);
    X.col(i) = opts.feature_scale == 1.0 ? x : (opts.feature_scale * x).eval();
    if (opts.noise > 0.0) score += opts.noise * rng.normal();
    y(i) = score >= 0.0 ? 1.0 : -1.0;
  }
  return DataMatrix(std::move(X), std::move(y), LabelKind::binary);
}

DataMatrix synth_classification(std::uint64_t seed, int n, int d,
                                const SignPattern& pattern,
                                const SynthOptions& opts) {
  Rng rng(seed);
  const Eigen::VectorXd w_star = synth_ground_truth(rng, d, pattern);
  return synth_from_ground_truth(rng, w_star, n, opts);
}

DataMatrix synth_classification(std::uint64_t seed, int n, int d,
                                const SignPattern& pattern, double noise) {
  SynthOptions opts;
  opts.noise = noise;
  return synth_classification(seed, n, d, pattern, opts);
}

TrainTestSplit split_train_test(const DataMatrix& data, int n_train,
                                std::uint64_t seed) {
  const int n = data.n();
  if (n_train < 1 || n_train >= n) {
    throw std::invalid_argument("split_train_test: need 1 <= n_train < n");
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rng rng(seed);
  rng.shuffle(perm);

  const auto take = [&](int lo, int hi) {
    Eigen::MatrixXd X(data.d(), hi - lo);
    Eigen::VectorXd y(hi - lo);
    for (int i = lo; i < hi; ++i) {
      X.col(i - lo) = data.x(perm[i]);
      if (data.has_labels()) y(i - lo) = data.y(perm[i]);
    }
    return data.has_labels()
               ? DataMatrix(std::move(X), std::move(y), data.label_kind())
               : DataMatrix(std::move(X));
  };
  return TrainTestSplit{take(0, n_train), take(n_train, n)};
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
  out << "epoch,primal,dual,gap,wall_ms\n";
  std::string line;
  for (const TraceRow& r : trace.rows()) {
    line.clear();
    append_double(line, r.epoch);
    line += ',';
    append_double(line, r.primal);
    line += ',';
    if (r.dual) append_double(line, *r.dual);
    line += ',';
    if (r.gap) append_double(line, *r.gap);
    line += ',';
    append_double(line, r.wall_ms);
    line += '\n';
    out << line;
  }
}

Eigen::MatrixXd read_dense_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string text = strip_comment(raw);
    if (blank(text)) continue;
    std::vector<double> row;
    std::istringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      while (end != cell.c_str() + cell.size() &&
             std::isspace(static_cast<unsigned char>(*end))) {
        ++end;
      }
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw ParseError(lineno, "bad cell '" + cell + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(lineno, "expected " +
                                   std::to_string(rows.front().size()) +
                                   " cells, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(lineno, "no rows");
  Eigen::MatrixXd M(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return M;
}

namespace {

// Applies "1,3-6" style 1-based ranges to the pattern vector.
void apply_ranges(Eigen::VectorXi& c, const std::string& list, int sign,
                  int d) {
  std::istringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      throw std::invalid_argument("sign spec: empty range item");
    }
    long lo = 0, hi = 0;
    const auto dash = item.find('-');
    char* end = nullptr;
    if (dash == std::string::npos) {
      lo = hi = std::strtol(item.c_str(), &end, 10);
      if (end != item.c_str() + item.size()) {
        throw std::invalid_argument("sign spec: bad index '" + item + "'");
      }
    } else {
      const std::string a = item.substr(0, dash), b = item.substr(dash + 1);
      lo = std::strtol(a.c_str(), &end, 10);
      if (a.empty() || end != a.c_str() + a.size()) {
        throw std::invalid_argument("sign spec: bad range '" + item + "'");
      }
      hi = std::strtol(b.c_str(), &end, 10);
      if (b.empty() || end != b.c_str() + b.size()) {
        throw std::invalid_argument("sign spec: bad range '" + item + "'");
      }
    }
    if (lo < 1 || hi > d || lo > hi) {
      throw std::invalid_argument("sign spec: range " + item +
                                  " out of bounds for d=" + std::to_string(d));
    }
    for (long h = lo; h <= hi; ++h) {
      if (c(h - 1) != 0 && c(h - 1) != sign) {
        throw std::invalid_argument("sign spec: coordinate " +
                                    std::to_string(h) +
                                    " assigned both signs");
      }
      c(h - 1) = sign;
    }
  }
}

}  // namespace

SignPattern parse_sign_spec(const std::string& spec, int d) {
  Eigen::VectorXi c = Eigen::VectorXi::Zero(d);
  if (spec.empty() || spec == "none") return SignPattern(std::move(c));
  std::istringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("sign spec: expected pos=... or neg=..., got '" +
                                  part + "'");
    }
    const std::string key = part.substr(0, eq);
    const std::string list = part.substr(eq + 1);
    if (key == "pos") {
      apply_ranges(c, list, +1, d);
    } else if (key == "neg") {
      apply_ranges(c, list, -1, d);
    } else {
      throw std::invalid_argument("sign spec: unknown key '" + key + "'");
    }
  }
  return SignPattern(std::move(c));
}

SignPattern read_sign_file(std::istream& in, int d) {
  Eigen::VectorXi c(d);
  std::string raw;
  long lineno = 0;
  int h = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string text = strip_comment(raw);
    if (blank(text)) continue;
    if (h >= d) throw ParseError(lineno, "more than d=" + std::to_string(d) + " sign entries");
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    while (end != text.c_str() + text.size() &&
           std::isspace(static_cast<unsigned char>(*end))) {
      ++end;
    }
    if (end != text.c_str() + text.size() || v < -1 || v > 1) {
      throw ParseError(lineno, "expected -1, 0 or +1, got '" + text + "'");
    }
    c(h++) = static_cast<int>(v);
  }
  if (h != d) {
    throw ParseError(lineno, "expected d=" + std::to_string(d) +
                                 " sign entries, got " + std::to_string(h));
  }
  return SignPattern(std::move(c));
}

void write_sign_file(std::ostream& out, const SignPattern& pattern) {
  for (int h = 0; h < pattern.size(); ++h) {
    out << pattern[h] << '\n';
  }
}

}  // namespace signopt
