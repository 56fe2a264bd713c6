#pragma once

// Constructive link between NCFs and probability measures whose values are
// polynomials in an infinitesimal z: world w gets weight c_w * z^k(w).
// Conditional ranks then coincide with orders of conditional probabilities.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rankcalc/ncf.hpp"
#include "rankcalc/rational.hpp"
#include "rankcalc/report.hpp"
#include "rankcalc/zpoly.hpp"

namespace rankcalc {

// Unnormalized weights; probabilities are weight / total. Every weight has a
// positive lowest-order coefficient, so leading terms never cancel in sums,
// and the total has order 0.
class OrderMeasure {
 public:
  // Throws ValidationError if the invariants above fail.
  OrderMeasure(SpacePtr space, std::vector<ZPoly> weights);

  const SpacePtr& space() const { return space_; }
  const ZPoly& weight(WorldIndex w) const { return weights_[w]; }
  const ZPoly& total() const { return total_; }
  ZPoly weight_of(const Proposition& a) const;
  // order(W(A)), without building W(A).
  Rank weight_order(const Proposition& a) const;
  // order(W(A and B)).
  Rank intersection_order(const Proposition& a, const Proposition& b) const;

 private:
  // On spaces up to kCachedWorlds worlds, order(W(A)) for every A by mask.
  static constexpr std::size_t kCachedWorlds = 12;

  SpacePtr space_;
  std::vector<ZPoly> weights_;
  ZPoly total_;
  std::vector<Rank> order_by_mask_;
};

// `coeffs` empty means all 1; otherwise one positive rational per world.
OrderMeasure ncf_to_measure(const Ncf& k, std::span<const Rational> coeffs = {});

// order(P(A)); TOP for the empty proposition.
Rank measure_order(const OrderMeasure& p, const Proposition& a);

// order(P(B|A)) = order(P(A and B)) - order(P(A)); A must be non-empty.
Rank cond_measure_order(const OrderMeasure& p, const Proposition& b, const Proposition& a);

struct BridgeOptions {
  // Spaces up to this many worlds get every proposition pair checked.
  std::size_t exhaustive_world_limit = 5;
  std::size_t sampled_pairs = 256;
  std::size_t sampled_product_pairs = 32;
  std::uint64_t seed = 1;
};

struct BridgeReport {
  bool exhaustive = true;
  std::vector<CheckTally> checks;

  std::size_t violations() const { return total_violations(checks); }
  std::string render() const;
};

// Checks, over all proposition pairs (or a seeded sample for larger spaces):
// unconditional and conditional orders against ranks, min-of-orders for
// disjoint sums, sum-of-orders whenever P(C) = P(A)P(B), positivity of
// leading coefficients, and that P-(conditional) independence of variable
// subfields implies the same for the NCF.
BridgeReport verify_theorem2(const Ncf& k, std::span<const Rational> coeffs = {},
                             const BridgeOptions& options = {});

}  // namespace rankcalc
