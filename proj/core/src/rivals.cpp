#include "rankcalc/rivals.hpp"

#include <algorithm>
#include <bit>

#include "rankcalc/error.hpp"
#include "rankcalc/random.hpp"

namespace rankcalc {

SurpriseFunction::SurpriseFunction(SpacePtr space, std::vector<Rational> world_values,
                                   Rational empty_value)
    : space_(std::move(space)), values_(std::move(world_values)),
      empty_value_(std::move(empty_value)) {
  if (values_.size() != space_->world_count())
    throw ValidationError("expected one surprise value per world");
  auto in_range = [](const Rational& q) { return q >= 0 && q <= 1; };
  if (!in_range(empty_value_) || !std::all_of(values_.begin(), values_.end(), in_range))
    throw ValidationError("surprise values must lie in [0, 1]");
}

Rational SurpriseFunction::value(const Proposition& a) const {
  require_same_space(space_, a.space());
  if (a.is_empty()) return empty_value_;
  Rational best = 1;
  for (auto w : a.worlds()) best = std::min(best, values_[w]);
  return best;
}

Rational default_surprise_scale(std::uint64_t n) { return Rational(n, n + 1); }

SurpriseAxiomReport check_surprise_axioms(const SurpriseFunction& y,
                                          std::size_t exhaustive_world_limit,
                                          std::uint64_t seed) {
  const auto& space = y.space();
  const auto n = space->world_count();
  SurpriseAxiomReport report;
  report.exhaustive = n <= exhaustive_world_limit;

  report.empty_is_maximal.record(y.empty_value() == 1, [&] {
    return "y(empty) = " + to_string(y.empty_value());
  });

  std::vector<Proposition> props;
  if (report.exhaustive) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
      props.push_back(Proposition::from_mask(space, m));
  } else {
    Rng rng(seed);
    props.push_back(Proposition::empty(space));
    props.push_back(Proposition::full(space));
    for (int i = 0; i < 62; ++i) props.push_back(random_proposition(rng, space));
  }
  // Exact comparisons on distinct values once, then integer class indices:
  // equal classes iff equal values, class order is value order.
  std::vector<Rational> distinct(y.world_values().begin(), y.world_values().end());
  distinct.push_back(y.empty_value());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  auto class_of = [&](const Rational& q) {
    return static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), q) -
                                    distinct.begin());
  };
  std::vector<std::size_t> world_class(n);
  for (std::size_t w = 0; w < n; ++w) world_class[w] = class_of(y.world_value(w));
  const auto empty_class = class_of(y.empty_value());
  const bool has_zero = distinct.front() == 0;

  auto prop_class = [&](const Proposition& a) {
    if (a.is_empty()) return empty_class;
    std::size_t best = distinct.size();
    for (auto w : a.worlds()) best = std::min(best, world_class[w]);
    return best;
  };
  auto mask_class = [&](std::uint64_t m) {
    if (m == 0) return empty_class;
    std::size_t best = distinct.size();
    for (; m != 0; m &= m - 1) best = std::min(best, world_class[std::countr_zero(m)]);
    return best;
  };

  const bool small = n <= 64;
  std::vector<std::size_t> classes;
  std::vector<std::uint64_t> masks;
  for (const auto& a : props) {
    classes.push_back(prop_class(a));
    if (small) masks.push_back(a.mask());
  }

  for (std::size_t i = 0; i < props.size(); ++i) {
    const auto neg = prop_class(~props[i]);
    report.negation.record(has_zero && std::min(classes[i], neg) == 0,
                           [&] { return "A=" + props[i].to_string(); });
    for (std::size_t j = 0; j < props.size(); ++j) {
      const auto joined = small ? mask_class(masks[i] | masks[j]) : prop_class(props[i] | props[j]);
      report.disjunction.record(joined == std::min(classes[i], classes[j]), [&] {
        return "A=" + props[i].to_string() + " B=" + props[j].to_string();
      });
    }
  }
  return report;
}

SurpriseFunction ncf_to_surprise(const Ncf& k, const SurpriseScale& scale) {
  if (!scale) throw ValidationError("missing surprise scale");
  const auto top = k.max_rank() + 1;
  std::vector<Rational> table;
  for (std::uint64_t r = 0; r <= top; ++r) {
    table.push_back(scale(r));
    const auto& v = table.back();
    if (r == 0 && v != 0) throw ValidationError("surprise scale must map 0 to 0");
    if (v < 0 || v >= 1)
      throw ValidationError("surprise scale must stay in [0, 1), got " + to_string(v) +
                            " at rank " + std::to_string(r));
    if (r > 0 && v <= table[r - 1])
      throw ValidationError("surprise scale must be strictly increasing");
  }
  std::vector<Rational> values;
  for (std::size_t w = 0; w < k.space()->world_count(); ++w) values.push_back(table[k.rank(w)]);
  return SurpriseFunction(k.space(), std::move(values), 1);
}

std::string ConjunctionGap::render() const {
  std::string out;
  out += "y(A and B) = " + to_string(joint) + ", max(y(A), y(B|A)) = max(" +
         to_string(antecedent) + ", " + to_string(conditional) + ") = " +
         to_string(max_composition) + (max_rule_holds ? " (holds)" : " (fails)") + "\n";
  out += "k(A and B) = " + rank_joint.to_string() + ", k(A) + k(B|A) = " +
         rank_antecedent.to_string() + " + " + rank_conditional.to_string() +
         (sum_rule_holds ? " (holds)" : " (fails)") + "\n";
  return out;
}

ConjunctionGap shackle_conjunction_gap(const SurpriseFunction& y, const Ncf& k,
                                       const Proposition& a, const Proposition& b,
                                       const SurpriseScale& scale) {
  require_same_space(y.space(), k.space());
  if (!a.intersects(b)) throw ValidationError("A and B must intersect");
  for (std::size_t w = 0; w < k.space()->world_count(); ++w)
    if (y.world_value(w) != scale(k.rank(w)))
      throw ValidationError("surprise function is not the scaled NCF");

  ConjunctionGap gap;
  gap.joint = y.value(a & b);
  gap.antecedent = y.value(a);
  gap.rank_conditional = cond_rank(k, b, a);
  gap.conditional = scale(gap.rank_conditional.value());
  gap.max_composition = std::max(gap.antecedent, gap.conditional);
  gap.max_rule_holds = gap.joint == gap.max_composition;
  gap.rank_joint = rank_prop(k, a & b);
  gap.rank_antecedent = rank_prop(k, a);
  gap.sum_rule_holds = gap.rank_joint == gap.rank_antecedent + gap.rank_conditional;
  return gap;
}

// ---------------------------------------------------------------------------

namespace {

bool focal_less(const MassFunction::Focal& x, const MassFunction::Focal& y) {
  const auto sx = x.first.size(), sy = y.first.size();
  if (sx != sy) return sx < sy;
  const auto wx = x.first.worlds(), wy = y.first.worlds();
  return wx < wy;
}

bool nested(const Proposition& a, const Proposition& b) {
  return a.is_subset_of(b) || b.is_subset_of(a);
}

}  // namespace

MassFunction::MassFunction(SpacePtr space, std::vector<Focal> masses) : space_(std::move(space)) {
  Rational sum = 0;
  for (auto& [set, mass] : masses) {
    require_same_space(space_, set.space());
    if (mass < 0) throw ValidationError("masses must be non-negative");
    if (mass == 0) continue;
    if (set.is_empty()) throw ValidationError("no mass may sit on the empty set");
    sum += mass;
    auto it = std::find_if(focal_.begin(), focal_.end(),
                           [&](const Focal& f) { return f.first == set; });
    if (it == focal_.end())
      focal_.emplace_back(set, mass);
    else
      it->second += mass;
  }
  if (sum != 1) throw ValidationError("masses sum to " + rankcalc::to_string(sum) + ", expected 1");
  std::sort(focal_.begin(), focal_.end(), focal_less);
}

MassFunction MassFunction::vacuous(const SpacePtr& space) {
  return MassFunction(space, {{Proposition::full(space), Rational(1)}});
}

Rational MassFunction::mass_of(const Proposition& a) const {
  for (const auto& [set, mass] : focal_)
    if (set == a) return mass;
  return 0;
}

bool MassFunction::is_consonant() const { return !first_non_nested_pair().has_value(); }

std::optional<std::pair<Proposition, Proposition>> MassFunction::first_non_nested_pair() const {
  for (std::size_t i = 0; i < focal_.size(); ++i)
    for (std::size_t j = i + 1; j < focal_.size(); ++j)
      if (!nested(focal_[i].first, focal_[j].first))
        return std::make_pair(focal_[i].first, focal_[j].first);
  return std::nullopt;
}

std::string MassFunction::to_string() const {
  std::string out;
  for (const auto& [set, mass] : focal_)
    out += "  m" + set.to_string() + " = " + rankcalc::to_string(mass) + "\n";
  return out;
}

Rational belief_of(const MassFunction& m, const Proposition& b) {
  require_same_space(m.space(), b.space());
  Rational sum = 0;
  for (const auto& [set, mass] : m.focal())
    if (set.is_subset_of(b)) sum += mass;
  return sum;
}

Rational doubt_of(const MassFunction& m, const Proposition& b) { return belief_of(m, ~b); }

Rational conditional_doubt(const MassFunction& m, const Proposition& b, const Proposition& a) {
  const auto ya = doubt_of(m, a);
  if (ya == 1) throw ValidationError("conditional doubt undefined: A is maximally doubted");
  return (doubt_of(m, a & b) - ya) / (1 - ya);
}

Rational conflict_mass(const MassFunction& m1, const MassFunction& m2) {
  require_same_space(m1.space(), m2.space());
  Rational k = 0;
  for (const auto& [e, me] : m1.focal())
    for (const auto& [f, mf] : m2.focal())
      if (!e.intersects(f)) k += me * mf;
  return k;
}

MassFunction dempster_combine(const MassFunction& m1, const MassFunction& m2) {
  const auto k = conflict_mass(m1, m2);
  if (k == 1) throw ValidationError("total conflict: mass functions cannot be combined");
  std::vector<MassFunction::Focal> out;
  for (const auto& [e, me] : m1.focal())
    for (const auto& [f, mf] : m2.focal()) {
      auto g = e & f;
      if (!g.is_empty()) out.emplace_back(std::move(g), me * mf / (1 - k));
    }
  return MassFunction(m1.space(), std::move(out));
}

MassFunction make_simple_support(const Proposition& a, const Rational& s) {
  if (!a.is_contingent())
    throw ValidationError("simple support needs a contingent proposition");
  if (s <= 0 || s >= 1) throw ValidationError("support degree must lie strictly between 0 and 1");
  return MassFunction(a.space(), {{a, s}, {Proposition::full(a.space()), 1 - s}});
}

std::optional<NonclosureWitness> demonstrate_nonclosure(const SpacePtr& space) {
  const auto n = space->world_count();
  const auto& vars = space->variables();
  const Rational half(1, 2);

  auto literal = [&](std::size_t var, std::size_t value) {
    Proposition::Bits bits(n);
    for (std::size_t w = 0; w < n; ++w)
      if (space->value_of(w, var) == value) bits.set(w);
    return Proposition(space, std::move(bits));
  };

  for (std::size_t u = 0; u < n; ++u) {
    const auto assignment = space->assignment(u);
    for (std::size_t var = 0; var < vars.size(); ++var) {
      for (std::size_t value = 0; value < vars[var].values.size(); ++value) {
        if (value == assignment[var]) continue;
        auto neighbour = assignment;
        neighbour[var] = value;
        const auto v = space->world_of(neighbour);
        const WorldIndex chain_worlds[] = {u, v};
        const MassFunction m1(space, {{Proposition::singleton(space, u), Rational(1, 2)},
                                      {Proposition::of_worlds(space, chain_worlds),
                                       Rational(3, 10)},
                                      {Proposition::full(space), Rational(1, 5)}});
        for (std::size_t evar = 0; evar < vars.size(); ++evar) {
          for (std::size_t evalue = 0; evalue < vars[evar].values.size(); ++evalue) {
            const auto a = literal(evar, evalue);
            if (a.contains(u) || !a.is_contingent()) continue;
            const auto m2 = make_simple_support(a, half);
            const auto combined = dempster_combine(m1, m2);
            if (auto pair = combined.first_non_nested_pair()) {
              return NonclosureWitness{m1, m2, combined, conflict_mass(m1, m2),
                                       pair->first, pair->second};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace rankcalc
