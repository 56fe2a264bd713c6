#include "rankcalc/verification.hpp"

#include <algorithm>

#include "rankcalc/error.hpp"
#include "rankcalc/independence.hpp"
#include "rankcalc/random.hpp"
#include "rankcalc/revision.hpp"
#include "rankcalc/rivals.hpp"

namespace rankcalc {
namespace {

struct PropositionSample {
  std::vector<Proposition> props;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

PropositionSample sample_propositions(const SpacePtr& space, Rng& rng,
                                      const SuiteOptions& options) {
  PropositionSample s;
  const auto n = space->world_count();
  if (n <= options.exhaustive_world_limit) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
      s.props.push_back(Proposition::from_mask(space, m));
    for (std::size_t i = 0; i < s.props.size(); ++i)
      for (std::size_t j = 0; j < s.props.size(); ++j) s.pairs.emplace_back(i, j);
    return s;
  }
  s.props.push_back(Proposition::empty(space));
  s.props.push_back(Proposition::full(space));
  for (std::size_t i = 0; i < options.sampled_pairs; ++i) {
    s.props.push_back(random_proposition(rng, space));
    s.props.push_back(random_proposition(rng, space));
    s.pairs.emplace_back(s.props.size() - 2, s.props.size() - 1);
  }
  return s;
}

std::vector<std::vector<std::size_t>> variable_subsets(const SpacePtr& space) {
  const auto v = std::min<std::size_t>(space->variable_count(), 4);
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << v); ++m) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < v; ++i)
      if (m >> i & 1U) idx.push_back(i);
    out.push_back(std::move(idx));
  }
  return out;
}

PartitionField random_partition(Rng& rng, const SpacePtr& space) {
  const auto n = space->world_count();
  const auto blocks = 1 + rng.below(std::min<std::size_t>(n, 4));
  std::vector<Proposition::Bits> bits(blocks, Proposition::Bits(n));
  for (std::size_t w = 0; w < n; ++w) bits[rng.below(blocks)].set(w);
  std::vector<Proposition> atoms;
  for (auto& b : bits)
    if (b.any()) atoms.emplace_back(space, std::move(b));
  return PartitionField(space, std::move(atoms));
}

std::string describe(const Ncf& k) {
  std::string out = "ranks [";
  for (std::size_t w = 0; w < k.space()->world_count(); ++w) {
    if (w) out += ' ';
    out += std::to_string(k.rank(w));
  }
  return out + "]";
}

}  // namespace

std::vector<Ncf> random_population(std::size_t count, std::size_t variables,
                                   std::uint64_t max_rank, std::uint64_t seed) {
  Rng rng(seed);
  const SpacePtr spaces[] = {binary_space(1), binary_space(2), binary_space(3)};
  const auto fixed = variables == 0 ? nullptr : binary_space(variables);
  std::vector<Ncf> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& space = fixed ? fixed : spaces[rng.below(3)];
    out.push_back(random_ncf(rng, space, max_rank));
  }
  return out;
}

std::vector<CheckTally> run_law_suite(std::span<const Ncf> population,
                                      const SuiteOptions& options) {
  CheckTally negation{"negation law: min(k(A), k(-A)) = 0"};
  CheckTally disjunction{"disjunction law: k(A or B) = min(k(A), k(B))"};
  CheckTally conjunction{"conjunction law: k(A and B) = k(A) + k(B|A)"};
  CheckTally belief{"belief set = supersets of a non-empty core"};
  CheckTally total{"total rank: k(B) = min_r [k(A_r) + k(B|A_r)]"};
  CheckTally bayes{"Bayes rank: k(A_q|B) via partition"};

  Rng rng(options.seed);
  for (const auto& k : population) {
    const auto& space = k.space();
    const auto sample = sample_propositions(space, rng, options);
    std::vector<Rank> ranks;
    for (const auto& a : sample.props) ranks.push_back(rank_prop(k, a));
    const auto core = belief_core(k);

    for (std::size_t i = 0; i < sample.props.size(); ++i) {
      const auto& a = sample.props[i];
      belief.record(!core.is_empty() && believes(k, a) == core.is_subset_of(a),
                    [&] { return describe(k) + " A=" + a.to_string(); });
      if (a.is_contingent())
        negation.record(min(ranks[i], rank_prop(k, ~a)) == Rank(0),
                        [&] { return describe(k) + " A=" + a.to_string(); });
    }
    for (const auto& [i, j] : sample.pairs) {
      const auto& a = sample.props[i];
      const auto& b = sample.props[j];
      disjunction.record(rank_prop(k, a | b) == min(ranks[i], ranks[j]), [&] {
        return describe(k) + " A=" + a.to_string() + " B=" + b.to_string();
      });
      if (a.intersects(b))
        conjunction.record(rank_prop(k, a & b) == ranks[i] + cond_rank(k, b, a), [&] {
          return describe(k) + " A=" + a.to_string() + " B=" + b.to_string();
        });
    }

    std::vector<PartitionField> partitions;
    for (const auto& vars : variable_subsets(space))
      partitions.push_back(subfield_of_variables(space, std::span<const std::size_t>(vars)));
    partitions.push_back(random_partition(rng, space));
    const auto evidence_count = std::min<std::size_t>(sample.props.size(), 16);
    for (const auto& partition : partitions) {
      for (std::size_t bi = 0; bi < evidence_count; ++bi) {
        const auto& b = sample.props[bi];
        total.record(total_rank(k, partition, b) == ranks[bi],
                     [&] { return describe(k) + " B=" + b.to_string(); });
        if (b.is_empty()) continue;
        for (std::size_t q = 0; q < partition.atom_count(); ++q) {
          bayes.record(bayes_rank(k, partition, q, b) == cond_rank(k, partition.atoms()[q], b),
                       [&] {
                         return describe(k) + " A_q=" + partition.atoms()[q].to_string() +
                                " B=" + b.to_string();
                       });
        }
      }
    }
  }
  return {negation, disjunction, conjunction, belief, total, bayes};
}

std::vector<CheckTally> run_revision_suite(std::span<const Ncf> population,
                                           const SuiteOptions& options) {
  CheckTally parts{"A,m-revision preserves A-part and -A-part"};
  CheckTally shift{"A,m-revision gives k(A) = 0 and k(-A) = m"};
  CheckTally firm{"A,m-revision gives firmness m"};
  CheckTally reduction{"A,m-revision equals Jeffrey revision on {A, -A}"};
  CheckTally idempotent{"repeating an A,m-revision changes nothing"};
  CheckTally overriding{"last A-revision overrides earlier ones"};
  CheckTally jeffrey{"Jeffrey revision hits evidence ranks and keeps parts"};
  CheckTally closed{"revision results satisfy NCF invariants"};

  Rng rng(options.seed ^ 0x7265766973696f6eULL);
  for (const auto& k : population) {
    const auto& space = k.space();
    if (space->world_count() < 2) continue;
    const auto a = random_contingent(rng, space);
    const auto not_a = ~a;
    const auto m = rng.below(options.max_firmness + 1);
    const auto label = [&] {
      return describe(k) + " A=" + a.to_string() + " m=" + std::to_string(m);
    };

    const auto r = conditionalize(k, a, m);
    closed.record(satisfies_ncf_invariants(r) && is_measurable(a, r.field()), label);
    parts.record(part_of(r, a) == part_of(k, a) && part_of(r, not_a) == part_of(k, not_a), label);
    shift.record(rank_prop(r, a) == Rank(0) && rank_prop(r, not_a) == Rank(m), label);
    firm.record(firmness(r, a) == Firmness{static_cast<std::int64_t>(m)}, label);
    const EvidenceNcf two_atoms(PartitionField(space, {a, not_a}), {0, m});
    const auto via_jeffrey = jeffrey_conditionalize(k, two_atoms);
    closed.record(satisfies_ncf_invariants(via_jeffrey), label);
    reduction.record(via_jeffrey.world_ranks().size() == r.world_ranks().size() &&
                         std::equal(r.world_ranks().begin(), r.world_ranks().end(),
                                    via_jeffrey.world_ranks().begin()),
                     label);
    idempotent.record(conditionalize(r, a, m) == r, label);
    const auto earlier = rng.below(options.max_firmness + 1);
    const auto twice = conditionalize(conditionalize(k, a, earlier), a, m);
    closed.record(satisfies_ncf_invariants(twice), label);
    overriding.record(twice == r, label);

    // Jeffrey revision on a random non-trivial variable subfield.
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < space->variable_count(); ++v)
      if (rng.coin()) vars.push_back(v);
    if (vars.empty()) vars.push_back(rng.below(space->variable_count()));
    const auto field = subfield_of_variables(space, std::span<const std::size_t>(vars));
    std::vector<std::uint64_t> lambda_ranks(field.atom_count());
    for (auto& x : lambda_ranks) x = rng.below(options.max_firmness + 1);
    lambda_ranks[rng.below(lambda_ranks.size())] = 0;
    const EvidenceNcf lambda(field, lambda_ranks);
    const auto kl = jeffrey_conditionalize(k, lambda);
    closed.record(satisfies_ncf_invariants(kl), label);
    bool ok = true;
    for (std::size_t i = 0; i < field.atom_count(); ++i) {
      const auto& atom = field.atoms()[i];
      ok = ok && rank_prop(kl, atom) == Rank(lambda_ranks[i]) &&
           part_of(kl, atom) == part_of(k, atom);
    }
    jeffrey.record(ok, [&] { return describe(k) + " jeffrey on variable subfield"; });
  }
  return {parts, shift, firm, reduction, idempotent, overriding, jeffrey, closed};
}

std::vector<CheckTally> run_independence_suite(std::span<const Ncf> population,
                                               const SuiteOptions& options) {
  CheckTally symmetry{"independence is symmetric"};
  CheckTally agreement{"member check agrees with atom-pair check"};
  CheckTally union_law{"union law under its proviso, spaces up to 4 worlds"};
  CheckTally union_large{"union law under its proviso, spaces of 5 or more worlds"};
  union_large.informational = true;
  CheckTally contraction{"contraction law over variable subfields"};

  Rng rng(options.seed ^ 0x696e646570ULL);
  for (const auto& k : population) {
    const auto& space = k.space();
    const auto subsets = variable_subsets(space);
    for (int t = 0; t < 2; ++t) {
      const auto& jv = subsets[rng.below(subsets.size())];
      const auto& kv = subsets[rng.below(subsets.size())];
      const auto fj = subfield_of_variables(space, std::span<const std::size_t>(jv));
      const auto fk = subfield_of_variables(space, std::span<const std::size_t>(kv));
      const auto forward = check_independence(k, fj, fk);
      const auto backward = check_independence(k, fk, fj);
      symmetry.record(forward.independent == backward.independent,
                      [&] { return describe(k); });
      agreement.record(forward.atom_pairs_agree && backward.atom_pairs_agree,
                       [&] { return describe(k); });
    }

    if (space->world_count() >= 3) {
      const int attempts = space->world_count() <= 4 ? 16 : 4;
      for (int t = 0; t < attempts; ++t) {
        const auto a = random_contingent(rng, space);
        auto b = random_proposition(rng, space) - a;
        const auto c = random_contingent(rng, space);
        if (b.is_empty() || !(a | b).is_contingent()) continue;
        const auto check = check_union_law(k, a, b, c);
        auto& tally = space->world_count() <= 4 ? union_law : union_large;
        if (check.proviso_met)
          tally.record(check.holds, [&] {
            return describe(k) + " A=" + a.to_string() + " B=" + b.to_string() +
                   " C=" + c.to_string();
          });
      }
    }

    const auto vars = std::min<std::size_t>(space->variable_count(), 3);
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < vars; ++i) combos *= 4;
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::vector<std::size_t> groups[4];
      auto c = code;
      for (std::size_t v = 0; v < vars; ++v, c /= 4) groups[c % 4].push_back(v);
      if (groups[0].empty() || groups[1].empty()) continue;
      const auto check = check_contraction_law(k, std::span<const std::size_t>(groups[0]),
                                               std::span<const std::size_t>(groups[1]),
                                               std::span<const std::size_t>(groups[2]));
      contraction.record(check.holds(), [&] {
        return describe(k) + " assignment code " + std::to_string(code);
      });
    }
  }
  return {symmetry, agreement, union_law, union_large, contraction};
}

CheckTally sweep_union_law(std::size_t binary_variables, std::uint64_t max_rank) {
  CheckTally tally{"union law under its proviso (exhaustive sweep)"};
  const auto space = binary_space(binary_variables);
  const auto n = space->world_count();
  if (n > 8) throw ValidationError("union-law sweep is limited to 3 binary variables");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<Proposition> props;
  for (std::uint64_t m = 0; m <= full; ++m) props.push_back(Proposition::from_mask(space, m));

  std::vector<std::uint64_t> ranks(n, 0);
  while (true) {
    if (*std::min_element(ranks.begin(), ranks.end()) == 0) {
      const auto k = ncf_from_world_ranks(space, ranks);
      for (std::uint64_t am = 1; am < full; ++am) {
        for (std::uint64_t bm = 1; bm < full; ++bm) {
          if ((am & bm) || (am | bm) == full) continue;
          for (std::uint64_t cm = 1; cm < full; ++cm) {
            const auto check = check_union_law(k, props[am], props[bm], props[cm]);
            if (!check.proviso_met) continue;
            tally.record(check.holds, [&] {
              return describe(k) + " A=" + props[am].to_string() + " B=" +
                     props[bm].to_string() + " C=" + props[cm].to_string();
            });
          }
        }
      }
    }
    std::size_t pos = n;
    while (pos > 0 && ranks[pos - 1] == max_rank) ranks[--pos] = 0;
    if (pos == 0) break;
    ++ranks[pos - 1];
  }
  return tally;
}

std::vector<CheckTally> run_bridge_suite(std::span<const Ncf> population,
                                         const SuiteOptions& options) {
  std::vector<CheckTally> merged;
  auto bridge = options.bridge;
  for (const auto& k : population) {
    auto report = verify_theorem2(k, {}, bridge);
    ++bridge.seed;
    if (merged.empty()) {
      for (const auto& c : report.checks) merged.push_back(CheckTally{c.name});
    }
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
      auto c = report.checks[i];
      if (c.first_witness) *c.first_witness = describe(k) + " " + *c.first_witness;
      merged[i].merge(c);
    }
  }
  return merged;
}

namespace {

MassFunction random_mass(Rng& rng, const SpacePtr& space, bool chain) {
  const auto n = space->world_count();
  std::vector<MassFunction::Focal> focal;
  const auto count = 1 + rng.below(3);
  std::uint64_t total = 0;
  std::vector<std::uint64_t> weights;
  for (std::size_t i = 0; i < count; ++i) {
    weights.push_back(1 + rng.below(5));
    total += weights.back();
  }
  if (chain) {
    // Nested sets: grow one random world at a time.
    std::vector<WorldIndex> order(n);
    for (std::size_t w = 0; w < n; ++w) order[w] = w;
    for (std::size_t w = n; w > 1; --w) std::swap(order[w - 1], order[rng.below(w)]);
    std::size_t size = 0;
    for (std::size_t i = 0; i < count; ++i) {
      size = std::min(n, size + 1 + rng.below(2));
      focal.emplace_back(Proposition::of_worlds(space, std::span(order.data(), size)),
                         Rational(weights[i], total));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      auto p = random_proposition(rng, space);
      if (p.is_empty()) p = Proposition::full(space);
      focal.emplace_back(std::move(p), Rational(weights[i], total));
    }
  }
  return MassFunction(space, std::move(focal));
}

bool doubt_satisfies_surprise_axioms(const MassFunction& m) {
  const auto& space = m.space();
  const auto n = space->world_count();
  std::vector<Rational> doubt;
  std::vector<Proposition> props;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    props.push_back(Proposition::from_mask(space, mask));
    doubt.push_back(doubt_of(m, props.back()));
  }
  const auto full = (std::uint64_t{1} << n) - 1;
  if (doubt[0] != 1) return false;
  for (std::uint64_t a = 0; a <= full; ++a) {
    if (std::min(doubt[a], doubt[full & ~a]) != 0) return false;
    for (std::uint64_t b = 0; b <= full; ++b)
      if (doubt[a | b] != std::min(doubt[a], doubt[b])) return false;
  }
  return true;
}

}  // namespace

std::vector<CheckTally> run_rivals_suite(std::span<const Ncf> population,
                                         const SuiteOptions& options) {
  CheckTally axioms{"scaled NCF satisfies surprise axioms"};
  CheckTally ordering{"scaled NCF preserves rank order"};
  CheckTally commutative{"Dempster combination is commutative"};
  CheckTally neutral{"vacuous mass is neutral for Dempster combination"};
  CheckTally characterization{"consonant iff doubt satisfies surprise axioms"};
  CheckTally nonclosure{"consonance not closed under Dempster combination"};

  Rng rng(options.seed ^ 0x72697661ULL);
  for (const auto& k : population) {
    const auto y = ncf_to_surprise(k);
    const auto report = check_surprise_axioms(y, 5, rng.next());
    axioms.record(report.all_pass(), [&] { return describe(k); });
    const auto sample = sample_propositions(k.space(), rng, options);
    for (const auto& [i, j] : sample.pairs) {
      const auto& a = sample.props[i];
      const auto& b = sample.props[j];
      ordering.record((y.value(a) <= y.value(b)) == (rank_prop(k, a) <= rank_prop(k, b)), [&] {
        return describe(k) + " A=" + a.to_string() + " B=" + b.to_string();
      });
    }
  }

  for (std::size_t vars = 1; vars <= 2; ++vars) {
    const auto space = binary_space(vars);
    for (int t = 0; t < 100; ++t) {
      const auto m1 = random_mass(rng, space, rng.coin());
      const auto m2 = random_mass(rng, space, rng.coin());
      if (conflict_mass(m1, m2) != 1)
        commutative.record(dempster_combine(m1, m2) == dempster_combine(m2, m1),
                           [&] { return "m1:\n" + m1.to_string() + "m2:\n" + m2.to_string(); });
      neutral.record(dempster_combine(m1, MassFunction::vacuous(space)) == m1,
                     [&] { return m1.to_string(); });
      characterization.record(m1.is_consonant() == doubt_satisfies_surprise_axioms(m1),
                              [&] { return m1.to_string(); });
    }
  }

  const auto witness = demonstrate_nonclosure(binary_space(2));
  bool witness_ok = false;
  if (witness) {
    const auto& support = witness->support.focal();
    const bool simple = support.size() == 2 && support.front().first.is_contingent() &&
                        support.back().first.is_full();
    witness_ok = simple && witness->consonant.is_consonant() &&
                 witness->combined == dempster_combine(witness->consonant, witness->support) &&
                 !witness->combined.is_consonant();
  }
  nonclosure.record(witness_ok, [] { return std::string("no valid witness on the two-variable space"); });
  return {axioms, ordering, commutative, neutral, characterization, nonclosure};
}

}  // namespace rankcalc
