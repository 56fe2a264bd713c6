#pragma once

// Property suites over populations of NCFs. Each suite returns one tally per
// law; a law holds on the population iff its tally has zero violations.

#include <cstdint>
#include <span>
#include <vector>

#include "rankcalc/bridge.hpp"
#include "rankcalc/ncf.hpp"
#include "rankcalc/report.hpp"

namespace rankcalc {

struct SuiteOptions {
  std::uint64_t seed = 1988;
  // Spaces with at most this many worlds get all propositions (and pairs).
  std::size_t exhaustive_world_limit = 4;
  // Sampled proposition pairs per NCF on larger spaces.
  std::size_t sampled_pairs = 64;
  std::uint64_t max_firmness = 5;
  BridgeOptions bridge;
};

// Negation, disjunction and conjunction laws, belief-set closure, total rank
// and the Bayes identity over variable subfields and a random partition.
std::vector<CheckTally> run_law_suite(std::span<const Ncf> population, const SuiteOptions& options);

// Per NCF, a random contingent A and m <= max_firmness: part preservation,
// k(-A) = m, firmness m, agreement with the two-atom Jeffrey revision,
// idempotence, overriding, validity of every result; plus one Jeffrey
// revision on a random variable subfield.
std::vector<CheckTally> run_revision_suite(std::span<const Ncf> population,
                                           const SuiteOptions& options);

// Symmetry and atom-pair agreement on variable subfields, the union law on
// sampled disjoint triples, and the contraction law on every pairwise
// disjoint (J, K, L) of variables with J and K non-empty. Union-law samples
// from spaces above four worlds go to an informational tally.
std::vector<CheckTally> run_independence_suite(std::span<const Ncf> population,
                                               const SuiteOptions& options);

// Union law under its proviso, for every NCF over `binary_variables` binary
// variables with ranks <= max_rank and every A, B, C with A, B disjoint.
CheckTally sweep_union_law(std::size_t binary_variables, std::uint64_t max_rank);

// verify_theorem2 on every member of the population, tallies merged.
std::vector<CheckTally> run_bridge_suite(std::span<const Ncf> population,
                                         const SuiteOptions& options);

// Surprise axioms and order preservation for the scaled NCFs; dempster
// commutativity and neutrality, the consonance characterization by the
// surprise axioms on random mass functions, and the non-closure witness.
std::vector<CheckTally> run_rivals_suite(std::span<const Ncf> population,
                                         const SuiteOptions& options);

// Population of `count` random NCFs over `variables` binary variables with
// ranks <= max_rank. Zero variables means a mix of 1..3.
std::vector<Ncf> random_population(std::size_t count, std::size_t variables,
                                   std::uint64_t max_rank, std::uint64_t seed);

}  // namespace rankcalc
