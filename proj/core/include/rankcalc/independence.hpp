#pragma once

// Rank-theoretic independence and conditional independence of fields and
// propositions, with checkers for the union law (with its disjointness
// proviso) and the contraction law over variable subfields.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankcalc/ncf.hpp"

namespace rankcalc {

// Fields with at most this many atoms get every pair of non-empty members
// checked; larger ones get all atom pairs plus sampled member pairs.
inline constexpr std::size_t kExhaustiveAtomLimit = 12;
inline constexpr std::size_t kSampledMemberPairs = 4096;

enum class CheckRegime { kExhaustiveMembers, kAtomPairsAndSampledMembers };

const char* to_string(CheckRegime regime);

// A member pair where k(B and C | D) != k(B | D) + k(C | D).
struct AdditivityWitness {
  Proposition lhs;
  Proposition rhs;
  std::optional<Proposition> given;
  Rank joint;
  Rank sum;
};

struct IndependenceResult {
  bool independent = true;
  CheckRegime regime = CheckRegime::kExhaustiveMembers;
  // Verdict of the atom-pair check alone; a disagreement with `independent`
  // would be reported here rather than hidden.
  bool atom_pairs_agree = true;
  std::size_t pairs_checked = 0;
  std::optional<AdditivityWitness> witness;

  explicit operator bool() const { return independent; }
};

IndependenceResult check_independence(const Ncf& k, const PartitionField& b,
                                      const PartitionField& c);
IndependenceResult check_cond_independence(const Ncf& k, const PartitionField& b,
                                           const PartitionField& c, const Proposition& d);
IndependenceResult check_cond_independence(const Ncf& k, const PartitionField& b,
                                           const PartitionField& c, const PartitionField& d);

bool independent(const Ncf& k, const PartitionField& b, const PartitionField& c);
// D must be non-empty.
bool cond_independent_on_prop(const Ncf& k, const PartitionField& b, const PartitionField& c,
                              const Proposition& d);
bool cond_independent_on_field(const Ncf& k, const PartitionField& b, const PartitionField& c,
                               const PartitionField& d);
// Both propositions must be contingent.
bool independent_props(const Ncf& k, const Proposition& b, const Proposition& c);

struct UnionLawCheck {
  bool proviso_met = false;  // A, B disjoint and A independent of C
  bool holds = false;        // (B indep C) iff (A or B indep C)

  bool consistent() const { return !proviso_met || holds; }
};

// A, B, A or B, and C must be contingent.
UnionLawCheck check_union_law(const Ncf& k, const Proposition& a, const Proposition& b,
                              const Proposition& c);

struct ProvisoCounterexample {
  Ncf kappa;
  Proposition a;
  Proposition b;
  Proposition c;
};

// Exhaustive search over spaces of 1..binary_variables binary variables
// (smallest first), normalized rank vectors with ranks <= max_rank in
// lexicographic order, and contingent A, C, B in world-mask order. Returns
// the first (k, A, B, C) with A indep C, B indep C, A and B overlapping and
// A or B not independent of C. Caps: binary_variables <= 3, max_rank <= 3.
std::optional<ProvisoCounterexample> find_proviso_counterexample(std::size_t binary_variables,
                                                                 std::uint64_t max_rank = 3);

// The guarded union law itself is not a theorem for ranks: it survives every
// space of at most four worlds but fails from five worlds on, already for the
// vacuous NCF. Exhaustive search over `space` (at most 8 worlds), normalized
// rank vectors with ranks <= max_rank in lexicographic order, then contingent
// A, C, B in world-mask order. Returns the first (k, A, B, C) with A and B
// disjoint, A indep C, and (B indep C) != (A or B indep C).
std::optional<ProvisoCounterexample> find_union_law_failure(const SpacePtr& space,
                                                            std::uint64_t max_rank = 1);

struct ContractionLawCheck {
  bool j_indep_k_given_l = false;
  bool j_indep_l = false;
  bool j_indep_l_given_k = false;
  bool j_indep_kl = false;

  bool premises() const { return j_indep_k_given_l && (j_indep_l || j_indep_l_given_k); }
  bool holds() const { return !premises() || j_indep_kl; }
};

// J, K, L pairwise disjoint sets of variables.
ContractionLawCheck check_contraction_law(const Ncf& k, std::span<const std::size_t> j,
                                          std::span<const std::size_t> kvars,
                                          std::span<const std::size_t> l);
ContractionLawCheck check_contraction_law(const Ncf& k, std::span<const std::string> j,
                                          std::span<const std::string> kvars,
                                          std::span<const std::string> l);

}  // namespace rankcalc
