#include "rankcalc/ncf.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "rankcalc/error.hpp"

namespace rankcalc {

Ncf::Ncf(PartitionField field, std::vector<std::uint64_t> ranks)
    : space_(field.space()), field_(std::move(field)), ranks_(std::move(ranks)) {}

std::uint64_t Ncf::max_rank() const { return *std::max_element(ranks_.begin(), ranks_.end()); }

bool operator==(const Ncf& a, const Ncf& b) {
  return same_space(a.space_, b.space_) && a.ranks_ == b.ranks_;
}

Ncf make_ncf(const PartitionField& field, std::span<const std::uint64_t> atom_ranks) {
  if (atom_ranks.size() != field.atom_count())
    throw ValidationError("expected a rank for each of the " +
                          std::to_string(field.atom_count()) + " atoms, got " +
                          std::to_string(atom_ranks.size()));
  const auto minimum = *std::min_element(atom_ranks.begin(), atom_ranks.end());
  if (minimum != 0) throw NormalizationError(minimum);
  for (auto r : atom_ranks)
    if (r == std::numeric_limits<std::uint64_t>::max())
      throw ValidationError("world ranks must be finite");

  const auto n = field.space()->world_count();
  std::vector<std::uint64_t> ranks(n);
  for (std::size_t w = 0; w < n; ++w) ranks[w] = atom_ranks[field.atom_of(w)];
  return Ncf(field, std::move(ranks));
}

Ncf ncf_from_world_ranks(const SpacePtr& space, std::span<const std::uint64_t> ranks) {
  if (ranks.size() != space->world_count())
    throw ValidationError("expected " + std::to_string(space->world_count()) +
                          " world ranks, got " + std::to_string(ranks.size()));
  return make_ncf(full_field(space), ranks);
}

Ncf vacuous_ncf(const SpacePtr& space) {
  std::vector<std::uint64_t> zeros(space->world_count(), 0);
  return ncf_from_world_ranks(space, zeros);
}

bool satisfies_ncf_invariants(const Ncf& k) {
  const auto ranks = k.world_ranks();
  if (ranks.size() != k.space()->world_count()) return false;
  if (std::find(ranks.begin(), ranks.end(), 0U) == ranks.end()) return false;
  for (const auto& atom : k.field().atoms()) {
    const auto worlds = atom.worlds();
    for (auto w : worlds)
      if (ranks[w] != ranks[worlds.front()]) return false;
  }
  return true;
}

namespace {

Rank min_rank_in_mask(const Ncf& k, std::uint64_t m) {
  Rank best = Rank::top();
  for (; m != 0; m &= m - 1) {
    best = min(best, Rank(k.rank(static_cast<WorldIndex>(std::countr_zero(m)))));
    if (best == Rank(0)) break;
  }
  return best;
}

}  // namespace

Rank rank_prop(const Ncf& k, const Proposition& a) {
  require_same_space(k.space(), a.space());
  if (k.space()->world_count() <= 64) return min_rank_in_mask(k, a.mask());
  Rank best = Rank::top();
  const auto& bits = a.bits();
  for (auto w = bits.find_first(); w != Proposition::Bits::npos; w = bits.find_next(w)) {
    best = min(best, Rank(k.rank(w)));
    if (best == Rank(0)) break;
  }
  return best;
}

bool believes(const Ncf& k, const Proposition& a) {
  return rank_prop(k, ~a) > Rank(0);
}

Proposition belief_core(const Ncf& k) {
  Proposition::Bits bits(k.space()->world_count());
  for (std::size_t w = 0; w < bits.size(); ++w)
    if (k.rank(w) == 0) bits.set(w);
  return Proposition(k.space(), std::move(bits));
}

Firmness firmness(const Ncf& k, const Proposition& a) {
  require_same_space(k.space(), a.space());
  if (!a.is_contingent())
    throw ValidationError("firmness is defined only for contingent propositions");
  const auto pos = rank_prop(k, a);
  if (pos == Rank(0)) return {static_cast<std::int64_t>(rank_prop(k, ~a).value())};
  return {-static_cast<std::int64_t>(pos.value())};
}

Rank cond_rank(const Ncf& k, const Proposition& b, const Proposition& a) {
  require_same_space(a.space(), b.space());
  if (a.is_empty()) throw ValidationError("cannot condition on the empty proposition");
  require_same_space(k.space(), a.space());
  // Small spaces skip building A and B as a proposition.
  const auto joint = k.space()->world_count() <= 64 ? min_rank_in_mask(k, a.mask() & b.mask())
                                                    : rank_prop(k, a & b);
  if (joint.is_top()) return Rank::top();
  return joint - rank_prop(k, a);
}

std::vector<std::pair<WorldIndex, std::uint64_t>> part_of(const Ncf& k, const Proposition& a) {
  if (a.is_empty()) throw ValidationError("the part of an NCF needs a non-empty proposition");
  const auto base = rank_prop(k, a).value();
  std::vector<std::pair<WorldIndex, std::uint64_t>> part;
  for (auto w : a.worlds()) part.emplace_back(w, k.rank(w) - base);
  return part;
}

Rank total_rank(const Ncf& k, const PartitionField& partition, const Proposition& b) {
  require_same_space(k.space(), partition.space());
  Rank best = Rank::top();
  for (const auto& atom : partition.atoms())
    best = min(best, rank_prop(k, atom) + cond_rank(k, b, atom));
  return best;
}

Rank bayes_rank(const Ncf& k, const PartitionField& partition, std::size_t q,
                const Proposition& b) {
  require_same_space(k.space(), partition.space());
  if (b.is_empty()) throw ValidationError("Bayes rank needs a non-empty evidence proposition");
  if (q >= partition.atom_count()) throw ValidationError("atom index out of range");
  const auto& aq = partition.atoms()[q];
  const auto numerator = rank_prop(k, aq) + cond_rank(k, b, aq);
  if (numerator.is_top()) return Rank::top();
  return numerator - total_rank(k, partition, b);
}

}  // namespace rankcalc
