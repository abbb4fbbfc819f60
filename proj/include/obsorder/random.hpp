#pragma once

#include <cstdint>
#include <random>

#include "obsorder/hermitian.hpp"

namespace obsorder {

/// Seeded random source with platform-independent output: the engine is
/// std::mt19937_64 and every distribution is computed here from raw 64-bit
/// draws, so a seed reproduces bit-identical values across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  int uniform_int(int lo, int hi);       // [lo, hi] inclusive
  double normal();
  bool coin() { return (engine_() >> 63) != 0; }

  Complex complex_uniform();  // re, im each in [-1, 1)
  Complex complex_normal();
  ComplexVector unit_vector(int dim);

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finaliser, used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace obsorder
