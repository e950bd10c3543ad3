#pragma once

#include <cstdint>
#include <random>

namespace catdtc {

// Seedable generator with deterministic child streams, so parallel work
// items can draw from independent sequences keyed by their index.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const;

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  std::uint64_t below(std::uint64_t n);  // [0, n)
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace catdtc
