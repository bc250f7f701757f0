#pragma once

#include <cstdint>
#include <random>

namespace trussopt {

// Seedable uniform stream. One instance drives one optimization run, so a
// single seed pins the whole trajectory (init positions, move draws, mu0
// test draws).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  // Uniform on [0, 1) with 53 random bits. Using the raw engine output
  // instead of std::uniform_real_distribution keeps the sequence identical
  // across standard library implementations.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace trussopt
