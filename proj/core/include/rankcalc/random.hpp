#pragma once

// Seeded generators for property suites. Draws use only the raw engine
// output so sequences are identical across standard libraries.

#include <cstdint>
#include <random>

#include "rankcalc/ncf.hpp"

namespace rankcalc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform-ish in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool coin() { return (engine_() >> 17) & 1U; }

 private:
  std::mt19937_64 engine_;
};

// Space of `count` binary variables named X, Y, Z, then V4, V5, ...
SpacePtr binary_space(std::size_t count);

// Independent ranks in [0, max_rank], shifted so the minimum is 0.
Ncf random_ncf(Rng& rng, const SpacePtr& space, std::uint64_t max_rank);

Proposition random_proposition(Rng& rng, const SpacePtr& space);
// Requires at least two worlds.
Proposition random_contingent(Rng& rng, const SpacePtr& space);

}  // namespace rankcalc
