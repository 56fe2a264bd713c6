#pragma once

// Natural conditional functions: ranks of worlds and propositions, belief,
// firmness, conditional ranks and the total-rank / Bayes identities.
//
// Ranks of propositions are extended naturals. The empty proposition has
// rank TOP; this is an extension, the rank of the empty set being otherwise
// undefined. With it the min/plus laws hold uniformly.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rankcalc/rank.hpp"
#include "rankcalc/space.hpp"

namespace rankcalc {

// Signed firmness of belief: positive iff believed true, negative iff
// believed false, zero iff neither.
struct Firmness {
  std::int64_t value = 0;

  bool believed_true() const { return value > 0; }
  bool believed_false() const { return value < 0; }

  friend bool operator==(Firmness, Firmness) = default;
};

class Ncf {
 public:
  const SpacePtr& space() const { return space_; }
  // The field the function is measurable with respect to.
  const PartitionField& field() const { return field_; }

  // Finite rank of a world.
  std::uint64_t rank(WorldIndex w) const { return ranks_[w]; }
  std::span<const std::uint64_t> world_ranks() const { return ranks_; }
  std::uint64_t max_rank() const;

  // Same space and same world ranks; the declared field is not compared.
  friend bool operator==(const Ncf& a, const Ncf& b);

 private:
  friend Ncf make_ncf(const PartitionField&, std::span<const std::uint64_t>);
  Ncf(PartitionField field, std::vector<std::uint64_t> ranks);

  SpacePtr space_;
  PartitionField field_;
  std::vector<std::uint64_t> ranks_;
};

// `atom_ranks[i]` is the rank of atom i of `field`. Throws ValidationError
// when the count does not match the atoms, NormalizationError when the
// minimum is not 0.
Ncf make_ncf(const PartitionField& field, std::span<const std::uint64_t> atom_ranks);

// One rank per world, measurable with respect to the full field.
Ncf ncf_from_world_ranks(const SpacePtr& space, std::span<const std::uint64_t> ranks);

// All worlds rank 0.
Ncf vacuous_ncf(const SpacePtr& space);

// True iff some world has rank 0 and ranks are constant on the atoms of the
// declared field.
bool satisfies_ncf_invariants(const Ncf& k);

// min over A of the world ranks; TOP for the empty proposition.
Rank rank_prop(const Ncf& k, const Proposition& a);

// A is believed iff the rank of -A is positive.
bool believes(const Ncf& k, const Proposition& a);

// The rank-0 worlds.
Proposition belief_core(const Ncf& k);

// Requires a contingent A.
Firmness firmness(const Ncf& k, const Proposition& a);

// k(B|A) = k(A and B) - k(A); TOP when A and B are disjoint. A must be
// non-empty.
Rank cond_rank(const Ncf& k, const Proposition& b, const Proposition& a);

// The A-part of k: w -> k(w) - k(A) for each w in A, in world order.
std::vector<std::pair<WorldIndex, std::uint64_t>> part_of(const Ncf& k, const Proposition& a);

// min over atoms A_r of k(A_r) + k(B|A_r). Always equals rank_prop(k, B).
Rank total_rank(const Ncf& k, const PartitionField& partition, const Proposition& b);

// k(A_q) + k(B|A_q) - min_r [k(A_r) + k(B|A_r)] for atom q; B non-empty.
// Always equals cond_rank(k, A_q, B).
Rank bayes_rank(const Ncf& k, const PartitionField& partition, std::size_t q,
                const Proposition& b);

}  // namespace rankcalc
