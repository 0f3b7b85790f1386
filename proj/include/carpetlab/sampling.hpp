#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace carpetlab {

/// splitmix64 step; also used to derive independent per-index seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Small deterministic generator. Hand-rolled mappings keep sequences
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return splitmix64(state_); }
  double uniform();                          // [0, 1)
  double uniform(double lo, double hi);
  double log_uniform(double lo, double hi);  // log-uniform on [lo, hi]
  std::uint64_t index(std::uint64_t n);      // [0, n)

 private:
  std::uint64_t state_;
};

int default_threads();
void set_default_threads(int threads);

/// Runs fn(i) for i in [0, count) on `threads` workers (0 = default).
/// Callers write results by index, so output never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, int threads = 0);

}  // namespace carpetlab
