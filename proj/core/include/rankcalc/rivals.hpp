#pragma once

// Shackle's potential-surprise functions and Shafer's belief functions, in
// exact rational arithmetic, for side-by-side comparison with NCFs.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankcalc/ncf.hpp"
#include "rankcalc/rational.hpp"
#include "rankcalc/report.hpp"

namespace rankcalc {

// ---------------------------------------------------------------------------
// Potential surprise

// Stored like an NCF: one value per world, a proposition taking the minimum
// over its worlds. y(empty) is stored separately.
class SurpriseFunction {
 public:
  // Values must lie in [0, 1].
  SurpriseFunction(SpacePtr space, std::vector<Rational> world_values,
                   Rational empty_value = 1);

  const SpacePtr& space() const { return space_; }
  const Rational& world_value(WorldIndex w) const { return values_[w]; }
  std::span<const Rational> world_values() const { return values_; }
  const Rational& empty_value() const { return empty_value_; }
  Rational value(const Proposition& a) const;

 private:
  SpacePtr space_;
  std::vector<Rational> values_;
  Rational empty_value_;
};

// Maps ranks into [0, 1): scale(0) = 0, strictly increasing, never 1.
using SurpriseScale = std::function<Rational(std::uint64_t)>;

// n -> n / (n + 1)
Rational default_surprise_scale(std::uint64_t n);

struct SurpriseAxiomReport {
  bool exhaustive = true;
  CheckTally empty_is_maximal{std::string("y(empty) = 1")};
  CheckTally negation{std::string("min(y(A), y(-A)) = 0")};
  CheckTally disjunction{std::string("y(A or B) = min(y(A), y(B))")};

  bool all_pass() const {
    return empty_is_maximal.violations + negation.violations + disjunction.violations == 0;
  }
  std::vector<CheckTally> tallies() const { return {empty_is_maximal, negation, disjunction}; }
};

// Exhaustive over all propositions up to `exhaustive_world_limit` worlds,
// seeded sampling beyond.
SurpriseAxiomReport check_surprise_axioms(const SurpriseFunction& y,
                                          std::size_t exhaustive_world_limit = 5,
                                          std::uint64_t seed = 1);

// y(A) = scale(k(A)) for non-empty A, y(empty) = 1. The scale is checked on
// 0..max_rank+1; throws ValidationError if it is not admissible there.
SurpriseFunction ncf_to_surprise(const Ncf& k, const SurpriseScale& scale = default_surprise_scale);

// Tests the max-composition rule y(A and B) = max(y(A), y(B|A)) for the
// candidate conditional y(B|A) := scale(k(B|A)), next to the NCF law
// k(A and B) = k(A) + k(B|A).
struct ConjunctionGap {
  Rational joint;            // y(A and B)
  Rational antecedent;       // y(A)
  Rational conditional;      // y(B|A)
  Rational max_composition;  // max(y(A), y(B|A))
  bool max_rule_holds = false;
  Rank rank_joint;
  Rank rank_antecedent;
  Rank rank_conditional;
  bool sum_rule_holds = false;

  std::string render() const;
};

// A and B must intersect; y must equal ncf_to_surprise(k, scale) on worlds.
ConjunctionGap shackle_conjunction_gap(const SurpriseFunction& y, const Ncf& k,
                                       const Proposition& a, const Proposition& b,
                                       const SurpriseScale& scale = default_surprise_scale);

// ---------------------------------------------------------------------------
// Belief functions

class MassFunction {
 public:
  using Focal = std::pair<Proposition, Rational>;

  // Duplicate focal sets are merged and zero masses dropped. Throws
  // ValidationError for mass on the empty set, negative masses, masses
  // not summing to 1, or sets from another space.
  MassFunction(SpacePtr space, std::vector<Focal> masses);

  static MassFunction vacuous(const SpacePtr& space);

  const SpacePtr& space() const { return space_; }
  // Ordered by size, then by lowest differing world.
  const std::vector<Focal>& focal() const { return focal_; }
  Rational mass_of(const Proposition& a) const;

  // Focal sets totally ordered by inclusion.
  bool is_consonant() const;
  // First pair (in focal order) where neither set contains the other.
  std::optional<std::pair<Proposition, Proposition>> first_non_nested_pair() const;

  friend bool operator==(const MassFunction& a, const MassFunction& b) {
    return same_space(a.space_, b.space_) && a.focal_ == b.focal_;
  }

  std::string to_string() const;

 private:
  SpacePtr space_;
  std::vector<Focal> focal_;
};

// Sum of masses of focal sets contained in B.
Rational belief_of(const MassFunction& m, const Proposition& b);
// Degree of doubt: belief in -B.
Rational doubt_of(const MassFunction& m, const Proposition& b);
// (y(A and B) - y(A)) / (1 - y(A)) with y = doubt_of; y(A) must be below 1.
Rational conditional_doubt(const MassFunction& m, const Proposition& b, const Proposition& a);

// Mass product falling on empty intersections.
Rational conflict_mass(const MassFunction& m1, const MassFunction& m2);
// Normalized product rule; throws ValidationError on total conflict.
MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2);

// Mass s on A and 1 - s on W. A contingent, 0 < s < 1.
MassFunction make_simple_support(const Proposition& a, const Rational& s);

struct NonclosureWitness {
  MassFunction consonant;
  MassFunction support;
  MassFunction combined;
  Rational conflict;
  Proposition first;
  Proposition second;
};

// Deterministic search for a consonant m1 and simple support m2 whose
// combination is not consonant. Candidates: m1 = {u}:1/2, {u,v}:3/10, W:1/5
// for worlds u ascending and v a one-variable neighbour of u (variable
// order, then value order); m2 = simple support 1/2 on a literal `var=value`
// excluding u. None for a one-world space.
std::optional<NonclosureWitness> demonstrate_nonclosure(const SpacePtr& space);

}  // namespace rankcalc
