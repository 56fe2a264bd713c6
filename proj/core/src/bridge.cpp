#include "rankcalc/bridge.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "rankcalc/error.hpp"
#include "rankcalc/independence.hpp"
#include "rankcalc/random.hpp"

namespace rankcalc {

OrderMeasure::OrderMeasure(SpacePtr space, std::vector<ZPoly> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_->world_count())
    throw ValidationError("expected one weight per world");
  for (std::size_t w = 0; w < weights_.size(); ++w) {
    if (weights_[w].is_zero() || weights_[w].leading_coefficient() <= 0)
      throw ValidationError("weight of world " + space_->world_label(w) +
                            " needs a positive leading coefficient");
    total_ += weights_[w];
  }
  if (total_.order() != Rank(0)) throw ValidationError("total weight must have order 0");
  // Leading terms never cancel, so the order of a sum is the least order.
  if (weights_.size() <= kCachedWorlds) {
    order_by_mask_.resize(std::size_t{1} << weights_.size(), Rank::top());
    for (std::uint64_t m = 1; m < order_by_mask_.size(); ++m)
      order_by_mask_[m] =
          std::min(order_by_mask_[m & (m - 1)], weights_[std::countr_zero(m)].order());
  }
}

Rank OrderMeasure::weight_order(const Proposition& a) const {
  require_same_space(space_, a.space());
  if (!order_by_mask_.empty()) return order_by_mask_[a.mask()];
  Rank out = Rank::top();
  const auto& bits = a.bits();
  for (auto w = bits.find_first(); w != Proposition::Bits::npos; w = bits.find_next(w))
    out = std::min(out, weights_[w].order());
  return out;
}

Rank OrderMeasure::intersection_order(const Proposition& a, const Proposition& b) const {
  require_same_space(a.space(), b.space());
  if (!order_by_mask_.empty()) {
    require_same_space(space_, a.space());
    return order_by_mask_[a.mask() & b.mask()];
  }
  return weight_order(a & b);
}

ZPoly OrderMeasure::weight_of(const Proposition& a) const {
  require_same_space(space_, a.space());
  ZPoly sum;
  const auto& bits = a.bits();
  for (auto w = bits.find_first(); w != Proposition::Bits::npos; w = bits.find_next(w))
    sum += weights_[w];
  return sum;
}

OrderMeasure ncf_to_measure(const Ncf& k, std::span<const Rational> coeffs) {
  const auto n = k.space()->world_count();
  if (!coeffs.empty() && coeffs.size() != n)
    throw ValidationError("expected " + std::to_string(n) + " coefficients");
  std::vector<ZPoly> weights;
  weights.reserve(n);
  for (std::size_t w = 0; w < n; ++w) {
    const Rational c = coeffs.empty() ? Rational(1) : coeffs[w];
    if (c <= 0) throw ValidationError("coefficients must be positive");
    weights.push_back(ZPoly::monomial(c, k.rank(w)));
  }
  return OrderMeasure(k.space(), std::move(weights));
}

Rank measure_order(const OrderMeasure& p, const Proposition& a) {
  const auto order = p.weight_order(a);
  return order.is_top() ? order : order - p.total().order();
}

Rank cond_measure_order(const OrderMeasure& p, const Proposition& b, const Proposition& a) {
  require_same_space(a.space(), b.space());
  const auto denom = p.weight_order(a);
  if (denom.is_top()) throw ValidationError("cannot condition on a null proposition");
  const auto num = p.intersection_order(a, b);
  return num.is_top() ? num : num - denom;
}

std::string BridgeReport::render() const {
  return std::string("regime: ") + (exhaustive ? "exhaustive" : "sampled") + "\n" +
         render_tallies(checks);
}

namespace {

std::vector<std::uint64_t> variable_subsets(std::size_t vars) {
  std::vector<std::uint64_t> out;
  if (vars <= 4) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << vars); ++m) out.push_back(m);
  } else {
    out.push_back(0);
    for (std::size_t v = 0; v < vars; ++v) out.push_back(std::uint64_t{1} << v);
  }
  return out;
}

// Value at a fixed point modulo a prime below 2^32. Equal polynomials get
// equal fingerprints, so different fingerprints rule out equality without
// exact arithmetic. None when a denominator vanishes modulo the prime.
constexpr std::uint64_t kPrime = 4294967291ULL;
constexpr std::uint64_t kPoint = 2654435761ULL % kPrime;

std::uint64_t power(std::uint64_t base, std::uint64_t e) {
  std::uint64_t out = 1;
  for (base %= kPrime; e != 0; e >>= 1, base = base * base % kPrime)
    if (e & 1U) out = out * base % kPrime;
  return out;
}

std::uint64_t residue(const boost::multiprecision::mpz_int& x) {
  boost::multiprecision::mpz_int r = x % kPrime;
  if (r < 0) r += kPrime;
  return r.convert_to<std::uint64_t>();
}

std::optional<std::uint64_t> fingerprint(const ZPoly& f) {
  std::uint64_t sum = 0;
  for (const auto& [e, c] : f.terms()) {
    const auto den = residue(denominator(c));
    if (den == 0) return std::nullopt;
    const auto value = residue(numerator(c)) * power(den, kPrime - 2) % kPrime;
    sum = (sum + value * power(kPoint, e)) % kPrime;
  }
  return sum;
}

std::optional<std::uint64_t> times(std::optional<std::uint64_t> a,
                                   std::optional<std::uint64_t> b) {
  if (!a || !b) return std::nullopt;
  return *a * *b % kPrime;
}

std::vector<std::size_t> indices_of(std::uint64_t mask) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; mask; ++i, mask >>= 1)
    if (mask & 1U) out.push_back(i);
  return out;
}

}  // namespace

BridgeReport verify_theorem2(const Ncf& k, std::span<const Rational> coeffs,
                             const BridgeOptions& options) {
  const auto& space = k.space();
  const auto p = ncf_to_measure(k, coeffs);
  const auto n = space->world_count();
  const auto& total = p.total();

  BridgeReport report;
  report.exhaustive = n <= options.exhaustive_world_limit;

  CheckTally positivity{"leading coefficients positive"};
  CheckTally round_trip{"order equals rank"};
  CheckTally conditional{"conditional order equals conditional rank"};
  CheckTally sums{"disjoint sum has min order"};
  CheckTally product_orders{"order of product is sum of orders"};
  CheckTally products{"product probability gives rank sum"};
  CheckTally indep{"P-independence implies rank independence"};
  CheckTally cond_indep{"P-conditional independence implies rank conditional independence"};

  for (std::size_t w = 0; w < n; ++w)
    positivity.record(p.weight(w).leading_coefficient() > 0,
                      [&] { return "world " + space->world_label(w); });

  std::vector<Proposition> props;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  Rng rng(options.seed);
  if (report.exhaustive) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
      props.push_back(Proposition::from_mask(space, m));
    for (std::size_t i = 0; i < props.size(); ++i)
      for (std::size_t j = 0; j < props.size(); ++j) pairs.emplace_back(i, j);
  } else {
    for (std::size_t s = 0; s < options.sampled_pairs; ++s) {
      props.push_back(random_proposition(rng, space));
      props.push_back(random_proposition(rng, space));
      pairs.emplace_back(props.size() - 2, props.size() - 1);
    }
  }

  std::vector<ZPoly> weight;
  std::vector<Rank> rank;
  for (const auto& a : props) {
    weight.push_back(p.weight_of(a));
    rank.push_back(rank_prop(k, a));
    const auto order = measure_order(p, a);
    // Also from the built polynomial, so the order cache is checked too.
    const auto built = weight.back().order();
    const auto built_order = built.is_top() ? built : built - total.order();
    round_trip.record(order == rank.back() && built_order == order, [&] {
      return a.to_string() + ": order " + order.to_string() + ", rank " + rank.back().to_string();
    });
  }

  for (const auto& [bi, ai] : pairs) {
    const auto& a = props[ai];
    const auto& b = props[bi];
    if (!a.is_empty()) {
      const auto mo = cond_measure_order(p, b, a);
      const auto kr = cond_rank(k, b, a);
      conditional.record(mo == kr, [&] {
        return "B=" + b.to_string() + " A=" + a.to_string() + ": order " + mo.to_string() +
               ", rank " + kr.to_string();
      });
    }
    // P(A or B') = P(A) + P(B') with B' = B - A disjoint from A.
    const auto b_rest = b - a;
    const auto joined = weight[ai] + p.weight_of(b_rest);
    const auto expected = min(rank[ai], rank_prop(k, b_rest));
    sums.record(joined.order() == expected && rank_prop(k, a | b_rest) == expected, [&] {
      return "A=" + a.to_string() + " B=" + b_rest.to_string();
    });
  }

  // Products: whenever W(C) * total == W(A) * W(B), i.e. P(C) = P(A)P(B).
  std::vector<Proposition> candidates;
  if (n <= 10) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
      candidates.push_back(Proposition::from_mask(space, m));
  }
  // W(C) * total, computed on first use and only for candidates whose
  // fingerprint matches the product's.
  std::vector<std::optional<ZPoly>> scaled(candidates.size());
  std::vector<std::optional<std::uint64_t>> scaled_print;
  std::vector<Rank> candidate_rank;
  // Fingerprints are additive, so world fingerprints suffice.
  std::vector<std::optional<std::uint64_t>> world_print;
  for (std::size_t w = 0; w < n; ++w) world_print.push_back(fingerprint(p.weight(w)));
  auto print_of = [&](const Proposition& a) -> std::optional<std::uint64_t> {
    std::uint64_t sum = 0;
    for (auto w : a.worlds()) {
      if (!world_print[w]) return std::nullopt;
      sum = (sum + *world_print[w]) % kPrime;
    }
    return sum;
  };
  const auto total_print = print_of(Proposition::full(space));
  for (const auto& c : candidates) {
    scaled_print.push_back(times(print_of(c), total_print));
    candidate_rank.push_back(rank_prop(k, c));
  }
  std::vector<std::optional<std::uint64_t>> print;
  for (const auto& a : props) print.push_back(print_of(a));

  const auto product_pairs =
      report.exhaustive ? pairs.size() : std::min(pairs.size(), options.sampled_product_pairs);
  for (std::size_t idx = 0; idx < product_pairs; ++idx) {
    const auto [ai, bi] = pairs[idx];
    // P(A)P(B) is symmetric; every unordered pair appears in the exhaustive list.
    if (report.exhaustive && ai > bi) continue;
    // Multiplied out only once some candidate's fingerprint matches.
    std::optional<ZPoly> prod;
    auto product = [&]() -> const ZPoly& {
      if (prod) return *prod;
      prod = weight[ai] * weight[bi];
      product_orders.record(prod->order() == weight[ai].order() + weight[bi].order(), [&] {
        return "A=" + props[ai].to_string() + " B=" + props[bi].to_string();
      });
      return *prod;
    };
    auto check_candidate = [&](const Proposition& c, const ZPoly& c_scaled, Rank c_rank) {
      if (c_scaled != product()) return;
      products.record(c_rank == rank[ai] + rank[bi], [&] {
        return "A=" + props[ai].to_string() + " B=" + props[bi].to_string() +
               " C=" + c.to_string();
      });
    };
    if (candidates.empty()) {
      const auto c = props[ai] & props[bi];
      check_candidate(c, p.weight_of(c) * total, rank_prop(k, c));
      continue;
    }
    const auto prod_print = times(print[ai], print[bi]);
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
      if (prod_print && scaled_print[ci] && *prod_print != *scaled_print[ci]) continue;
      if (!scaled[ci]) scaled[ci] = p.weight_of(candidates[ci]) * total;
      check_candidate(candidates[ci], *scaled[ci], candidate_rank[ci]);
    }
  }

  // Variable subfields.
  const auto subsets = variable_subsets(space->variable_count());
  std::vector<PartitionField> fields;
  for (auto mask : subsets) {
    const auto idx = indices_of(mask);
    fields.push_back(subfield_of_variables(space, std::span<const std::size_t>(idx)));
  }
  auto field_of = [&](std::uint64_t mask) -> const PartitionField& {
    return fields[static_cast<std::size_t>(
        std::find(subsets.begin(), subsets.end(), mask) - subsets.begin())];
  };
  auto p_independent_given = [&](const PartitionField& f, const PartitionField& g,
                                 const Proposition& d) {
    // A trivial field is independent of anything.
    if (f.atoms().size() == 1 || g.atoms().size() == 1) return true;
    const auto od = p.weight_order(d);
    const auto fd = print_of(d);
    for (const auto& b : f.atoms())
      for (const auto& c : g.atoms()) {
        const auto bcd = b & c & d, bd = b & d, cd = c & d;
        // Unequal orders or fingerprints already settle it; multiply out
        // only when both agree.
        if (p.weight_order(bcd) + od != p.weight_order(bd) + p.weight_order(cd)) return false;
        const auto lhs = times(print_of(bcd), fd), rhs = times(print_of(bd), print_of(cd));
        if (lhs && rhs && *lhs != *rhs) return false;
        if (p.weight_of(bcd) * p.weight_of(d) != p.weight_of(bd) * p.weight_of(cd)) return false;
      }
    return true;
  };
  const auto everything = Proposition::full(space);
  for (auto jm : subsets) {
    for (auto km : subsets) {
      const auto& fj = field_of(jm);
      const auto& fk = field_of(km);
      if (p_independent_given(fj, fk, everything)) {
        indep.record(independent(k, fj, fk), [&] {
          return "variable masks " + std::to_string(jm) + " and " + std::to_string(km);
        });
      }
      if (jm == 0 || km == 0 || (jm & km)) continue;
      for (auto lm : subsets) {
        if (lm == 0 || (lm & (jm | km))) continue;
        const auto& fl = field_of(lm);
        bool p_cond = true;
        for (const auto& d : fl.atoms()) p_cond = p_cond && p_independent_given(fj, fk, d);
        if (!p_cond) continue;
        cond_indep.record(cond_independent_on_field(k, fj, fk, fl), [&] {
          return "variable masks " + std::to_string(jm) + ", " + std::to_string(km) +
                 " given " + std::to_string(lm);
        });
      }
    }
  }

  report.checks = {positivity, round_trip, conditional, sums,
                   product_orders, products, indep, cond_indep};
  return report;
}

}  // namespace rankcalc
