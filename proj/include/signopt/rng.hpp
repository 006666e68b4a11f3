#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace signopt {

// Seeded random stream. The engine is std::mt19937_64, whose raw output is
// pinned bit-for-bit by the standard; the distributions are hand-rolled on
// top of it because the standard leaves distribution algorithms up to the
// implementation. Every consumer of randomness in this library goes through
// this class, so a seed fully determines a run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01();

  // Uniform integer in [0, n), rejection sampling (no modulo bias).
  std::size_t uniform_index(std::size_t n);

  // Standard normal, Marsaglia polar method (one spare cached).
  double normal();

  // First k entries of a partial Fisher-Yates shuffle of {0,...,n-1}.
  // For k == n no randomness is consumed and {0,...,n-1} is returned in
  // order, so full-batch runs are seed-independent.
  std::vector<int> sample_without_replacement(int n, int k);

  void shuffle(std::vector<int>& v);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace signopt
