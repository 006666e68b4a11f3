#include "signopt/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace signopt {

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % n);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
  if (k < 1 || k > n) {
    throw std::invalid_argument("sample_without_replacement: need 1 <= k <= n");
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (k == n) return idx;
  for (int j = 0; j < k; ++j) {
    const std::size_t r = j + uniform_index(static_cast<std::size_t>(n - j));
    std::swap(idx[j], idx[r]);
  }
  idx.resize(k);
  return idx;
}

void Rng::shuffle(std::vector<int>& v) {
  for (std::size_t j = v.size(); j > 1; --j) {
    std::swap(v[j - 1], v[uniform_index(j)]);
  }
}

}  // namespace signopt
