#include <gtest/gtest.h>

#include <array>

#include "oracle.hpp"
#include "rankcalc/error.hpp"
#include "rankcalc/independence.hpp"
#include "rankcalc/random.hpp"

namespace rankcalc {
namespace {

SpacePtr s2() { return build_space({{"X", {"0", "1"}}, {"Y", {"0", "1"}}}); }

Ncf kappa1() {
  const std::array<std::uint64_t, 4> r{0, 2, 1, 3};
  return ncf_from_world_ranks(s2(), r);
}

Ncf xor_ncf() {
  const std::array<std::uint64_t, 4> r{0, 1, 1, 0};
  return ncf_from_world_ranks(s2(), r);
}

PartitionField by(const SpacePtr& s, std::initializer_list<std::string> vars) {
  std::vector<std::string> v(vars);
  return subfield_of_variables(s, std::span<const std::string>(v));
}

oracle::Ranks ranks_of(const Ncf& k) { return {k.world_ranks().begin(), k.world_ranks().end()}; }

std::vector<oracle::Mask> masks(const PartitionField& f) {
  std::vector<oracle::Mask> out;
  for (const auto& a : f.atoms()) out.push_back(a.mask());
  return out;
}

TEST(Independence, Kappa1FactorsIntoXAndY) {
  auto k = kappa1();
  auto s = k.space();
  auto r = check_independence(k, by(s, {"X"}), by(s, {"Y"}));
  EXPECT_TRUE(r.independent);
  EXPECT_TRUE(r.atom_pairs_agree);
  EXPECT_EQ(r.regime, CheckRegime::kExhaustiveMembers);
  EXPECT_EQ(r.pairs_checked, 9U);
  EXPECT_TRUE(independent(k, trivial_field(s), full_field(s)));
  EXPECT_TRUE(cond_independent_on_prop(k, by(s, {"X"}), by(s, {"Y"}), Proposition::full(s)));
}

TEST(Independence, XorIsDependentWithWitness) {
  auto k = xor_ncf();
  auto s = k.space();
  auto r = check_independence(k, by(s, {"X"}), by(s, {"Y"}));
  EXPECT_FALSE(r.independent);
  EXPECT_TRUE(r.atom_pairs_agree);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NE(r.witness->joint, r.witness->sum);
  EXPECT_EQ(rank_prop(k, r.witness->lhs & r.witness->rhs), r.witness->joint);
  EXPECT_EQ(rank_prop(k, r.witness->lhs) + rank_prop(k, r.witness->rhs), r.witness->sum);
  // Given X=0, Y is graded by (0, 1) while X is fixed.
  EXPECT_TRUE(cond_independent_on_prop(k, by(s, {"X"}), by(s, {"Y"}), eval_formula(s, "X=0")));
}

TEST(Independence, SingletonConditionIsDegenerate) {
  Rng rng(3);
  auto s = binary_space(2);
  for (int i = 0; i < 20; ++i) {
    auto k = random_ncf(rng, s, 4);
    for (WorldIndex w = 0; w < 4; ++w)
      EXPECT_TRUE(cond_independent_on_prop(k, by(s, {"X"}), by(s, {"Y"}),
                                           Proposition::singleton(s, w)));
  }
}

TEST(Independence, ConditionalOnFields) {
  auto k = kappa1();
  auto s = k.space();
  EXPECT_EQ(cond_independent_on_field(k, by(s, {"X"}), by(s, {"Y"}), trivial_field(s)),
            independent(k, by(s, {"X"}), by(s, {"Y"})));
  EXPECT_TRUE(cond_independent_on_field(k, by(s, {"X"}), trivial_field(s), by(s, {"Y"})));
  EXPECT_TRUE(cond_independent_on_field(k, by(s, {"X"}), by(s, {"Y"}), by(s, {"Y"})));

  // k(x, y, z) = f(x) + g(y, z)
  auto s3 = binary_space(3);
  std::vector<std::uint64_t> r(8);
  const std::array<std::uint64_t, 2> f{0, 2};
  const std::array<std::uint64_t, 4> g{1, 0, 3, 1};
  for (WorldIndex w = 0; w < 8; ++w) r[w] = f[w >> 2] + g[w & 3];
  auto k3 = ncf_from_world_ranks(s3, r);
  EXPECT_TRUE(cond_independent_on_field(k3, by(s3, {"X"}), by(s3, {"Y"}), by(s3, {"Z"})));
  EXPECT_TRUE(independent(k3, by(s3, {"X"}), by(s3, {"Y", "Z"})));
  EXPECT_FALSE(independent(k3, by(s3, {"Y"}), by(s3, {"Z"})));
}

TEST(Independence, Propositions) {
  auto k = kappa1();
  auto s = k.space();
  EXPECT_TRUE(independent_props(k, eval_formula(s, "X=1"), eval_formula(s, "Y=1")));
  EXPECT_FALSE(independent_props(k, eval_formula(s, "X=1"), eval_formula(s, "X=0")));
  // Self-independence fails even for the vacuous NCF: the fields {A, -A}
  // contain the disjoint pair A, -A, and k(empty) = TOP != 0 + 0.
  auto v = vacuous_ncf(s);
  auto a = eval_formula(s, "Y=1");
  EXPECT_FALSE(independent_props(v, a, a));
  EXPECT_FALSE(independent_props(k, a, ~a));
  EXPECT_THROW(independent_props(k, Proposition::full(s), a), ValidationError);
}

TEST(Independence, AgreesWithOracleOnVariableFields) {
  Rng rng(5);
  auto s = binary_space(3);
  std::vector<PartitionField> fields;
  for (std::uint64_t m = 0; m < 8; ++m) {
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < 3; ++v)
      if ((m >> v) & 1U) idx.push_back(v);
    fields.push_back(subfield_of_variables(s, std::span<const std::size_t>(idx)));
  }
  for (int trial = 0; trial < 30; ++trial) {
    // Half additive (lots of independence), half arbitrary.
    Ncf k = random_ncf(rng, s, 3);
    if (trial % 2 == 0) {
      std::vector<std::uint64_t> r(8);
      const auto a = rng.below(3), b = rng.below(3), c = rng.below(3);
      for (WorldIndex w = 0; w < 8; ++w)
        r[w] = ((w >> 2) & 1U) * a + ((w >> 1) & 1U) * b + (w & 1U) * c;
      k = ncf_from_world_ranks(s, r);
    }
    const auto r = ranks_of(k);
    for (const auto& fb : fields) {
      for (const auto& fc : fields) {
        const auto res = check_independence(k, fb, fc);
        ASSERT_EQ(res.independent, oracle::independent(r, masks(fb), masks(fc)));
        ASSERT_TRUE(res.atom_pairs_agree);
        for (const auto& fd : fields)
          ASSERT_EQ(cond_independent_on_field(k, fb, fc, fd),
                    oracle::cond_independent_field(r, masks(fb), masks(fc), masks(fd)));
      }
    }
  }
}

TEST(Independence, SampledRegimeOnLargeFields) {
  Rng rng(9);
  auto s = binary_space(4);
  auto k = random_ncf(rng, s, 3);
  auto r = check_independence(k, full_field(s), full_field(s));
  EXPECT_EQ(r.regime, CheckRegime::kAtomPairsAndSampledMembers);
  EXPECT_TRUE(r.atom_pairs_agree);
  EXPECT_FALSE(r.independent);  // disjoint singletons: TOP vs finite
}

TEST(UnionLaw, DisjointProvisoHolds) {
  auto k = kappa1();
  auto s = k.space();
  auto a = eval_formula(s, "X=0");
  auto b = eval_formula(s, "X=1");
  // A or B is W: not contingent.
  EXPECT_THROW(check_union_law(k, a, b, eval_formula(s, "Y=1")), ValidationError);
  Rng rng(1);
  for (int i = 0; i < 400; ++i) {
    auto k2 = random_ncf(rng, s, 5);
    auto x = random_contingent(rng, s);
    auto y = random_contingent(rng, s) - x;
    auto c = random_contingent(rng, s);
    if (y.is_empty() || (x | y).is_full()) continue;
    EXPECT_TRUE(check_union_law(k2, x, y, c).consistent());
  }
  auto same = check_union_law(k, a, a, eval_formula(s, "Y=1"));
  EXPECT_FALSE(same.proviso_met);
  EXPECT_TRUE(same.consistent());
}

TEST(UnionLaw, ProvisoCounterexampleIsPinnedAndValid) {
  EXPECT_FALSE(find_proviso_counterexample(1).has_value());
  auto w = find_proviso_counterexample(3, 3);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kappa.space()->world_count(), 4U);
  EXPECT_EQ(ranks_of(w->kappa), (oracle::Ranks{0, 0, 0, 0}));
  EXPECT_EQ(w->a.mask(), 0b0011U);
  EXPECT_EQ(w->b.mask(), 0b0110U);
  EXPECT_EQ(w->c.mask(), 0b0101U);

  // Re-validated by direct enumeration.
  const auto r = ranks_of(w->kappa);
  const auto n = r.size();
  auto indep = [&](oracle::Mask x, oracle::Mask y) {
    return oracle::independent(r, oracle::prop_field(n, x), oracle::prop_field(n, y));
  };
  const auto a = w->a.mask(), b = w->b.mask(), c = w->c.mask();
  EXPECT_TRUE(indep(a, c));
  EXPECT_TRUE(indep(b, c));
  EXPECT_NE(a & b, 0U);
  EXPECT_FALSE(indep(a | b, c));
}

TEST(UnionLaw, HoldsUpToFourWorlds) {
  EXPECT_FALSE(find_union_law_failure(binary_space(2), 3).has_value());
  EXPECT_FALSE(find_union_law_failure(build_space({{"V", {"a", "b", "c"}}}), 5).has_value());
}

TEST(UnionLaw, FailsOnFiveWorldsEvenVacuously) {
  auto s5 = build_space({{"V", {"0", "1", "2", "3", "4"}}});
  auto w = find_union_law_failure(s5, 1);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(ranks_of(w->kappa), (oracle::Ranks{0, 0, 0, 0, 0}));
  const auto r = ranks_of(w->kappa);
  const auto n = r.size();
  auto indep = [&](oracle::Mask x, oracle::Mask y) {
    return oracle::independent(r, oracle::prop_field(n, x), oracle::prop_field(n, y));
  };
  const auto a = w->a.mask(), b = w->b.mask(), c = w->c.mask();
  EXPECT_EQ(a & b, 0U);
  EXPECT_TRUE(indep(a, c));
  EXPECT_NE(indep(b, c), indep(a | b, c));

  // The same pattern on three binary variables.
  EXPECT_TRUE(find_union_law_failure(binary_space(3), 0).has_value());
}

TEST(ContractionLaw, AdditiveNcfSatisfiesEverything) {
  auto s = binary_space(3);
  std::vector<std::uint64_t> r(8);
  for (WorldIndex w = 0; w < 8; ++w)
    r[w] = ((w >> 2) & 1U) * 2 + ((w >> 1) & 1U) * 1 + (w & 1U) * 3;
  auto k = ncf_from_world_ranks(s, r);
  const std::array<std::string, 1> j{"X"}, kv{"Y"}, l{"Z"};
  auto c = check_contraction_law(k, std::span<const std::string>(j),
                                 std::span<const std::string>(kv),
                                 std::span<const std::string>(l));
  EXPECT_TRUE(c.premises());
  EXPECT_TRUE(c.j_indep_kl);
  EXPECT_TRUE(c.holds());
}

TEST(ContractionLaw, EmptyJAndOverlapping) {
  Rng rng(2);
  auto s = binary_space(3);
  auto k = random_ncf(rng, s, 4);
  const std::array<std::size_t, 1> kv{1}, l{2}, j0{0};
  auto c = check_contraction_law(k, std::span<const std::size_t>(), kv, l);
  EXPECT_TRUE(c.j_indep_kl);
  EXPECT_TRUE(c.holds());
  EXPECT_THROW(check_contraction_law(k, std::span<const std::size_t>(j0), j0, l),
               ValidationError);
}

TEST(ContractionLaw, RandomNcfsNeverViolate) {
  Rng rng(17);
  auto s = binary_space(3);
  const std::array<std::size_t, 1> j{0}, kv{1}, l{2};
  for (int i = 0; i < 500; ++i) {
    auto k = random_ncf(rng, s, 2);
    ASSERT_TRUE(check_contraction_law(k, j, kv, l).holds());
  }
}

}  // namespace
}  // namespace rankcalc
