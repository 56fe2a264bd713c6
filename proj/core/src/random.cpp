#include "rankcalc/random.hpp"

#include <algorithm>

#include "rankcalc/error.hpp"

namespace rankcalc {

SpacePtr binary_space(std::size_t count) {
  static const char* const kNames[] = {"X", "Y", "Z"};
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < count; ++i)
    vars.push_back({i < 3 ? kNames[i] : "V" + std::to_string(i + 1), {"0", "1"}});
  return build_space(std::move(vars));
}

Ncf random_ncf(Rng& rng, const SpacePtr& space, std::uint64_t max_rank) {
  std::vector<std::uint64_t> ranks(space->world_count());
  for (auto& r : ranks) r = rng.below(max_rank + 1);
  const auto lowest = *std::min_element(ranks.begin(), ranks.end());
  for (auto& r : ranks) r -= lowest;
  return ncf_from_world_ranks(space, ranks);
}

Proposition random_proposition(Rng& rng, const SpacePtr& space) {
  Proposition::Bits bits(space->world_count());
  for (std::size_t w = 0; w < bits.size(); ++w)
    if (rng.coin()) bits.set(w);
  return Proposition(space, std::move(bits));
}

Proposition random_contingent(Rng& rng, const SpacePtr& space) {
  if (space->world_count() < 2) throw ValidationError("no contingent propositions in a one-world space");
  while (true) {
    auto p = random_proposition(rng, space);
    if (p.is_contingent()) return p;
  }
}

}  // namespace rankcalc
