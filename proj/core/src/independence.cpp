#include "rankcalc/independence.hpp"

#include <algorithm>
#include <bit>
#include <random>

#include "rankcalc/error.hpp"

namespace rankcalc {

const char* to_string(CheckRegime regime) {
  switch (regime) {
    case CheckRegime::kExhaustiveMembers: return "exhaustive-members";
    case CheckRegime::kAtomPairsAndSampledMembers: return "atom-pairs+sampled-members";
  }
  return "unknown";
}

namespace {

// Ranks conditional on D, for the atoms of two fields and their pairwise
// intersections. Every field member is a union of atoms, so member ranks are
// mins over these tables.
struct AdditivityTables {
  std::vector<Rank> lhs;               // k(B_i | D)
  std::vector<Rank> rhs;               // k(C_j | D)
  std::vector<std::vector<Rank>> joint;  // k(B_i and C_j | D)
};

Rank rank_given(const Ncf& k, const Proposition& x, const Proposition& d, Rank d_rank) {
  const auto r = rank_prop(k, x & d);
  return r.is_top() ? r : r - d_rank;
}

AdditivityTables build_tables(const Ncf& k, const PartitionField& b, const PartitionField& c,
                              const Proposition& d) {
  const auto d_rank = rank_prop(k, d);
  AdditivityTables t;
  for (const auto& atom : b.atoms()) t.lhs.push_back(rank_given(k, atom, d, d_rank));
  for (const auto& atom : c.atoms()) t.rhs.push_back(rank_given(k, atom, d, d_rank));
  t.joint.resize(b.atom_count());
  for (std::size_t i = 0; i < b.atom_count(); ++i)
    for (std::size_t j = 0; j < c.atom_count(); ++j)
      t.joint[i].push_back(rank_given(k, b.atoms()[i] & c.atoms()[j], d, d_rank));
  return t;
}

Proposition union_of(const PartitionField& f, const std::vector<bool>& selected) {
  Proposition::Bits bits(f.space()->world_count());
  for (std::size_t i = 0; i < selected.size(); ++i)
    if (selected[i]) bits |= f.atoms()[i].bits();
  return Proposition(f.space(), std::move(bits));
}

std::vector<bool> mask_to_selection(std::uint64_t mask, std::size_t n) {
  std::vector<bool> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (mask >> i) & 1U;
  return out;
}

bool atom_pairs_additive(const AdditivityTables& t) {
  for (std::size_t i = 0; i < t.lhs.size(); ++i)
    for (std::size_t j = 0; j < t.rhs.size(); ++j)
      if (t.joint[i][j] != t.lhs[i] + t.rhs[j]) return false;
  return true;
}

IndependenceResult check_given(const Ncf& k, const PartitionField& b, const PartitionField& c,
                               const Proposition& d, bool record_given) {
  require_same_space(k.space(), b.space());
  require_same_space(k.space(), c.space());
  require_same_space(k.space(), d.space());
  if (d.is_empty()) throw ValidationError("cannot condition on the empty proposition");

  const auto t = build_tables(k, b, c, d);
  const auto na = b.atom_count();
  const auto nc = c.atom_count();

  IndependenceResult result;
  auto fail = [&](Proposition lhs, Proposition rhs, Rank joint, Rank sum) {
    result.independent = false;
    result.witness = AdditivityWitness{std::move(lhs), std::move(rhs),
                                       record_given ? std::optional<Proposition>(d)
                                                    : std::nullopt,
                                       joint, sum};
  };

  if (na <= kExhaustiveAtomLimit && nc <= kExhaustiveAtomLimit) {
    result.regime = CheckRegime::kExhaustiveMembers;
    const std::uint64_t a_members = std::uint64_t{1} << na;
    const std::uint64_t c_members = std::uint64_t{1} << nc;

    std::vector<Rank> rhs_min(c_members, Rank::top());
    for (std::uint64_t tmask = 1; tmask < c_members; ++tmask)
      rhs_min[tmask] = min(rhs_min[tmask & (tmask - 1)], t.rhs[std::countr_zero(tmask)]);

    // rows[S][j] = min over i in S of joint[i][j]
    std::vector<std::vector<Rank>> rows(a_members, std::vector<Rank>(nc, Rank::top()));
    std::vector<Rank> lhs_min(a_members, Rank::top());
    std::vector<Rank> joint_min(c_members);
    for (std::uint64_t smask = 1; smask < a_members && result.independent; ++smask) {
      const auto low = std::countr_zero(smask);
      const auto& prev = rows[smask & (smask - 1)];
      for (std::size_t j = 0; j < nc; ++j) rows[smask][j] = min(prev[j], t.joint[low][j]);
      lhs_min[smask] = min(lhs_min[smask & (smask - 1)], t.lhs[low]);

      joint_min[0] = Rank::top();
      for (std::uint64_t tmask = 1; tmask < c_members; ++tmask) {
        joint_min[tmask] =
            min(joint_min[tmask & (tmask - 1)], rows[smask][std::countr_zero(tmask)]);
        ++result.pairs_checked;
        const auto sum = lhs_min[smask] + rhs_min[tmask];
        if (joint_min[tmask] != sum) {
          fail(union_of(b, mask_to_selection(smask, na)),
               union_of(c, mask_to_selection(tmask, nc)), joint_min[tmask], sum);
          break;
        }
      }
    }
  } else {
    result.regime = CheckRegime::kAtomPairsAndSampledMembers;
    for (std::size_t i = 0; i < na && result.independent; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        ++result.pairs_checked;
        const auto sum = t.lhs[i] + t.rhs[j];
        if (t.joint[i][j] != sum) {
          fail(b.atoms()[i], c.atoms()[j], t.joint[i][j], sum);
          break;
        }
      }
    }
    std::mt19937_64 rng(0x5eedULL);
    std::vector<bool> sel_b(na), sel_c(nc);
    auto draw = [&](std::vector<bool>& sel) {
      do {
        for (std::size_t i = 0; i < sel.size(); ++i) sel[i] = rng() & 1U;
      } while (std::find(sel.begin(), sel.end(), true) == sel.end());
    };
    for (std::size_t n = 0; n < kSampledMemberPairs && result.independent; ++n) {
      draw(sel_b);
      draw(sel_c);
      Rank lhs = Rank::top(), rhs = Rank::top(), joint = Rank::top();
      for (std::size_t i = 0; i < na; ++i) {
        if (!sel_b[i]) continue;
        lhs = min(lhs, t.lhs[i]);
        for (std::size_t j = 0; j < nc; ++j)
          if (sel_c[j]) joint = min(joint, t.joint[i][j]);
      }
      for (std::size_t j = 0; j < nc; ++j)
        if (sel_c[j]) rhs = min(rhs, t.rhs[j]);
      ++result.pairs_checked;
      if (joint != lhs + rhs) fail(union_of(b, sel_b), union_of(c, sel_c), joint, lhs + rhs);
    }
  }
  result.atom_pairs_agree = atom_pairs_additive(t) == result.independent;
  return result;
}

}  // namespace

IndependenceResult check_independence(const Ncf& k, const PartitionField& b,
                                      const PartitionField& c) {
  return check_given(k, b, c, Proposition::full(k.space()), false);
}

IndependenceResult check_cond_independence(const Ncf& k, const PartitionField& b,
                                           const PartitionField& c, const Proposition& d) {
  return check_given(k, b, c, d, true);
}

IndependenceResult check_cond_independence(const Ncf& k, const PartitionField& b,
                                           const PartitionField& c, const PartitionField& d) {
  require_same_space(k.space(), d.space());
  IndependenceResult total;
  for (const auto& atom : d.atoms()) {
    auto r = check_given(k, b, c, atom, true);
    total.pairs_checked += r.pairs_checked;
    total.atom_pairs_agree = total.atom_pairs_agree && r.atom_pairs_agree;
    if (r.regime == CheckRegime::kAtomPairsAndSampledMembers) total.regime = r.regime;
    if (!r.independent) {
      total.independent = false;
      total.witness = std::move(r.witness);
      break;
    }
  }
  return total;
}

bool independent(const Ncf& k, const PartitionField& b, const PartitionField& c) {
  return check_independence(k, b, c).independent;
}

bool cond_independent_on_prop(const Ncf& k, const PartitionField& b, const PartitionField& c,
                              const Proposition& d) {
  return check_cond_independence(k, b, c, d).independent;
}

bool cond_independent_on_field(const Ncf& k, const PartitionField& b, const PartitionField& c,
                               const PartitionField& d) {
  return check_cond_independence(k, b, c, d).independent;
}

bool independent_props(const Ncf& k, const Proposition& b, const Proposition& c) {
  return independent(k, field_of_proposition(b), field_of_proposition(c));
}

UnionLawCheck check_union_law(const Ncf& k, const Proposition& a, const Proposition& b,
                              const Proposition& c) {
  const auto ab = a | b;
  for (const auto* p : {&a, &b, &ab, &c})
    if (!p->is_contingent())
      throw ValidationError("union law needs contingent A, B, A or B and C; got " +
                            p->to_string());
  UnionLawCheck check;
  check.proviso_met = !a.intersects(b) && independent_props(k, a, c);
  check.holds = independent_props(k, b, c) == independent_props(k, ab, c);
  return check;
}

std::optional<ProvisoCounterexample> find_proviso_counterexample(std::size_t binary_variables,
                                                                 std::uint64_t max_rank) {
  if (binary_variables > 3 || max_rank > 3)
    throw ValidationError("counterexample search capped at 3 binary variables and rank 3");

  static const char* const kNames[] = {"X", "Y", "Z"};
  for (std::size_t vars = 1; vars <= binary_variables; ++vars) {
    std::vector<Variable> decl;
    for (std::size_t v = 0; v < vars; ++v) decl.push_back({kNames[v], {"0", "1"}});
    const auto space = build_space(std::move(decl));
    const auto n = space->world_count();
    const std::uint64_t full_mask = (std::uint64_t{1} << n) - 1;

    std::vector<Proposition> props;
    for (std::uint64_t m = 1; m < full_mask; ++m) props.push_back(Proposition::from_mask(space, m));

    std::vector<std::uint64_t> ranks(n, 0);
    while (true) {
      if (*std::min_element(ranks.begin(), ranks.end()) == 0) {
        const auto k = ncf_from_world_ranks(space, ranks);
        std::vector<std::vector<char>> indep(props.size(), std::vector<char>(props.size()));
        for (std::size_t x = 0; x < props.size(); ++x)
          for (std::size_t y = 0; y < props.size(); ++y)
            indep[x][y] = independent_props(k, props[x], props[y]);
        // props[i] has mask i + 1.
        for (std::size_t a = 0; a < props.size(); ++a) {
          for (std::size_t c = 0; c < props.size(); ++c) {
            if (!indep[a][c]) continue;
            for (std::size_t b = 0; b < props.size(); ++b) {
              const auto am = a + 1, bm = b + 1, um = am | bm;
              if ((am & bm) == 0 || um == full_mask) continue;
              if (indep[b][c] && !indep[um - 1][c])
                return ProvisoCounterexample{k, props[a], props[b], props[c]};
            }
          }
        }
      }
      // Lexicographic successor, last world fastest.
      std::size_t pos = n;
      while (pos > 0 && ranks[pos - 1] == max_rank) ranks[--pos] = 0;
      if (pos == 0) break;
      ++ranks[pos - 1];
    }
  }
  return std::nullopt;
}

std::optional<ProvisoCounterexample> find_union_law_failure(const SpacePtr& space,
                                                            std::uint64_t max_rank) {
  const auto n = space->world_count();
  if (n > 8) throw ValidationError("union-law search is limited to 8 worlds");
  if (n < 3) return std::nullopt;
  const std::uint64_t full_mask = (std::uint64_t{1} << n) - 1;
  std::vector<Proposition> props;
  for (std::uint64_t m = 1; m < full_mask; ++m) props.push_back(Proposition::from_mask(space, m));

  std::vector<std::uint64_t> ranks(n, 0);
  while (true) {
    if (*std::min_element(ranks.begin(), ranks.end()) == 0) {
      const auto k = ncf_from_world_ranks(space, ranks);
      std::vector<std::vector<char>> indep(props.size(), std::vector<char>(props.size()));
      for (std::size_t x = 0; x < props.size(); ++x)
        for (std::size_t y = 0; y < props.size(); ++y)
          indep[x][y] = independent_props(k, props[x], props[y]);
      for (std::size_t a = 0; a < props.size(); ++a) {
        for (std::size_t c = 0; c < props.size(); ++c) {
          if (!indep[a][c]) continue;
          for (std::size_t b = 0; b < props.size(); ++b) {
            const auto am = a + 1, bm = b + 1, um = am | bm;
            if ((am & bm) != 0 || um == full_mask) continue;
            if (indep[b][c] != indep[um - 1][c])
              return ProvisoCounterexample{k, props[a], props[b], props[c]};
          }
        }
      }
    }
    std::size_t pos = n;
    while (pos > 0 && ranks[pos - 1] == max_rank) ranks[--pos] = 0;
    if (pos == 0) break;
    ++ranks[pos - 1];
  }
  return std::nullopt;
}

namespace {

std::vector<std::size_t> sorted_union(std::span<const std::size_t> a,
                                      std::span<const std::size_t> b) {
  std::vector<std::size_t> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ContractionLawCheck check_contraction_law(const Ncf& k, std::span<const std::size_t> j,
                                          std::span<const std::size_t> kvars,
                                          std::span<const std::size_t> l) {
  std::vector<std::size_t> seen;
  for (auto group : {j, kvars, l})
    for (auto v : group) {
      if (v >= k.space()->variable_count()) throw ValidationError("variable index out of range");
      if (std::find(seen.begin(), seen.end(), v) != seen.end())
        throw ValidationError("variable sets must be pairwise disjoint");
      seen.push_back(v);
    }
  const auto& space = k.space();
  const auto fj = subfield_of_variables(space, j);
  const auto fk = subfield_of_variables(space, kvars);
  const auto fl = subfield_of_variables(space, l);
  const auto kl = sorted_union(kvars, l);
  const auto fkl = subfield_of_variables(space, std::span<const std::size_t>(kl));

  ContractionLawCheck check;
  check.j_indep_k_given_l = cond_independent_on_field(k, fj, fk, fl);
  check.j_indep_l = independent(k, fj, fl);
  check.j_indep_l_given_k = cond_independent_on_field(k, fj, fl, fk);
  check.j_indep_kl = independent(k, fj, fkl);
  return check;
}

ContractionLawCheck check_contraction_law(const Ncf& k, std::span<const std::string> j,
                                          std::span<const std::string> kvars,
                                          std::span<const std::string> l) {
  auto resolve = [&](std::span<const std::string> names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) out.push_back(k.space()->variable_index(n));
    return out;
  };
  const auto jj = resolve(j), kk = resolve(kvars), ll = resolve(l);
  return check_contraction_law(k, std::span<const std::size_t>(jj),
                               std::span<const std::size_t>(kk), std::span<const std::size_t>(ll));
}

}  // namespace rankcalc
