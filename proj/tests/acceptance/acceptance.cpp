// Acceptance run: one PASS/FAIL line per criterion. Library results are
// cross-checked against the brute-force oracle where one exists.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "rankcalc/bridge.hpp"
#include "rankcalc/independence.hpp"
#include "rankcalc/ncf.hpp"
#include "rankcalc/random.hpp"
#include "rankcalc/revision.hpp"
#include "rankcalc/rivals.hpp"
#include "rankcalc/verification.hpp"

namespace {

using namespace rankcalc;

constexpr std::uint64_t kSeed = 1988;
constexpr std::size_t kPopulation = 10000;

// Collects failures for one criterion; the first few are kept for the log.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  void absorb(const std::vector<CheckTally>& tallies) {
    for (const auto& t : tallies) {
      if (t.informational) continue;
      require(t.checked > 0, t.name + ": nothing checked");
      if (t.violations != 0)
        require(false, t.name + ": " + std::to_string(t.violations) + " violations" +
                           (t.first_witness ? "; first: " + *t.first_witness : ""));
      else
        checks_ += t.checked;
    }
  }
  bool passed() const { return failures_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
};

oracle::Ranks ranks_of(const Ncf& k) { return {k.world_ranks().begin(), k.world_ranks().end()}; }

std::uint64_t as_oracle(Rank r) { return r.is_top() ? oracle::kTop : r.value(); }

oracle::Mask random_contingent_mask(Rng& rng, std::size_t n) {
  const auto full = oracle::all_worlds(n);
  for (;;) {
    const auto m = rng.next() & full;
    if (m != 0 && m != full) return m;
  }
}

// 1 -----------------------------------------------------------------------

void laws(const std::vector<Ncf>& population, Verdict& v) {
  v.absorb(run_law_suite(population, {}));

  // Oracle recomputation: library ranks on every proposition, then the laws
  // on oracle values for sampled pairs and a random partition.
  Rng rng(kSeed + 1);
  for (const auto& k : population) {
    const auto r = ranks_of(k);
    const auto n = r.size();
    const auto full = oracle::all_worlds(n);
    for (oracle::Mask a = 0; a <= full; ++a) {
      const auto lib = as_oracle(rank_prop(k, Proposition::from_mask(k.space(), a)));
      if (lib != oracle::rank(r, a)) {
        v.require(false, "rank_prop disagrees with oracle");
        break;
      }
    }
    for (int t = 0; t < 8; ++t) {
      const auto a = rng.next() & full, b = rng.next() & full;
      const auto na = full & ~a;
      v.require(std::min(oracle::rank(r, a), oracle::rank(r, na)) == 0, "negation");
      v.require(oracle::rank(r, a | b) == std::min(oracle::rank(r, a), oracle::rank(r, b)),
                "disjunction");
      if (a != 0)
        v.require(oracle::rank(r, a & b) == oracle::add(oracle::rank(r, a), oracle::cond_rank(r, b, a)),
                  "conjunction");
      const auto lib = as_oracle(cond_rank(k, Proposition::from_mask(k.space(), b),
                                           Proposition::from_mask(k.space(), a | 1)));
      v.require(lib == oracle::cond_rank(r, b, a | 1), "cond_rank disagrees with oracle");
    }
    // Total rank and Bayes over a random two-or-three cell partition.
    std::vector<oracle::Mask> cells;
    oracle::Mask rest = full;
    while (rest != 0 && cells.size() < 2) {
      const auto c = rng.next() & rest;
      if (c == 0) continue;
      cells.push_back(c);
      rest &= ~c;
    }
    if (rest != 0) cells.push_back(rest);
    std::vector<Proposition> atoms;
    for (auto c : cells) atoms.push_back(Proposition::from_mask(k.space(), c));
    const PartitionField partition(k.space(), atoms);
    const auto b = rng.next() & full;
    std::uint64_t expected = oracle::kTop;
    for (auto c : cells) expected = std::min(expected, oracle::add(oracle::rank(r, c), oracle::cond_rank(r, b, c)));
    v.require(as_oracle(total_rank(k, partition, Proposition::from_mask(k.space(), b))) == expected,
              "total rank against oracle");
    if (b != 0) {
      for (std::size_t q = 0; q < cells.size(); ++q) {
        std::uint64_t denom = oracle::kTop;
        for (auto c : cells)
          denom = std::min(denom, oracle::add(oracle::cond_rank(r, b, c), oracle::rank(r, c)));
        const auto num = oracle::add(oracle::cond_rank(r, b, cells[q]), oracle::rank(r, cells[q]));
        const auto want = num == oracle::kTop ? oracle::kTop : num - denom;
        v.require(as_oracle(bayes_rank(k, partition, q, Proposition::from_mask(k.space(), b))) == want,
                  "bayes rank against oracle");
      }
    }
  }
}

// 2 -----------------------------------------------------------------------

void revision(const std::vector<Ncf>& population, Verdict& v) {
  v.absorb(run_revision_suite(population, {}));

  Rng rng(kSeed + 2);
  for (const auto& k : population) {
    const auto r = ranks_of(k);
    const auto n = r.size();
    const auto a = random_contingent_mask(rng, n);
    const auto na = oracle::all_worlds(n) & ~a;
    const auto m = rng.below(6);
    const auto pa = Proposition::from_mask(k.space(), a);

    const auto lib = conditionalize(k, pa, m);
    const auto got = ranks_of(lib);
    v.require(got == oracle::conditionalize(r, a, m), "A,m-conditionalization against oracle");
    v.require(satisfies_ncf_invariants(lib), "result is an NCF");
    v.require(oracle::rank(got, na) == m, "k'(-A) = m");
    for (std::size_t w = 0; w < n; ++w) {
      const bool in_a = (a >> w) & 1U;
      const auto before = r[w] - oracle::rank(r, in_a ? a : na);
      const auto after = got[w] - oracle::rank(got, in_a ? a : na);
      v.require(before == after, "part preservation");
    }
    const EvidenceNcf lambda(PartitionField(k.space(), {pa, ~pa}), std::vector<std::uint64_t>{0, m});
    const auto via_jeffrey = jeffrey_conditionalize(k, lambda);
    v.require(ranks_of(via_jeffrey) == got, "two-atom Jeffrey equals A,m-conditionalization");
    v.require(ranks_of(via_jeffrey) == oracle::jeffrey(r, {a, na}, {0, m}), "Jeffrey against oracle");
  }
}

// 3 -----------------------------------------------------------------------

void independence_laws(Verdict& v) {
  const auto sweep = sweep_union_law(2, 3);
  v.absorb({sweep});

  const auto witness = find_proviso_counterexample(3);
  v.require(witness.has_value(), "no proviso counterexample found");
  if (witness) {
    const auto r = ranks_of(witness->kappa);
    const auto n = r.size();
    const auto a = witness->a.mask(), b = witness->b.mask(), c = witness->c.mask();
    const auto fa = oracle::prop_field(n, a), fb = oracle::prop_field(n, b),
               fc = oracle::prop_field(n, c), fab = oracle::prop_field(n, a | b);
    v.require(oracle::independent(r, fa, fc), "witness: A indep C");
    v.require(oracle::independent(r, fb, fc), "witness: B indep C");
    v.require((a & b) != 0, "witness: A and B overlap");
    v.require(!oracle::independent(r, fab, fc), "witness: A or B not indep C");
    v.require(independent_props(witness->kappa, witness->a, witness->c) &&
                  independent_props(witness->kappa, witness->b, witness->c) &&
                  !independent_props(witness->kappa, witness->a | witness->b, witness->c),
              "witness: library verdicts");
  }

  // Contraction on every disjoint (J, K, L), J and K non-empty, of 3 variables.
  const auto population = random_population(kPopulation, 3, 5, kSeed);
  std::vector<std::array<std::uint64_t, 3>> triples;
  for (int code = 0; code < 64; ++code) {
    std::array<std::uint64_t, 3> jkl{};
    for (std::uint64_t var = 0; var < 3; ++var) {
      const int role = (code >> (2 * var)) & 3;
      if (role < 3) jkl[static_cast<std::size_t>(role)] |= std::uint64_t{1} << var;
    }
    if (jkl[0] != 0 && jkl[1] != 0) triples.push_back(jkl);
  }
  auto indices = [](std::uint64_t set) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 3; ++i)
      if ((set >> i) & 1U) out.push_back(i);
    return out;
  };
  std::size_t oracle_checked = 0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const auto& k = population[i];
    const auto r = ranks_of(k);
    for (const auto& [j, kv, l] : triples) {
      const auto check = check_contraction_law(k, indices(j), indices(kv), indices(l));
      v.require(check.holds(), "contraction law");
      if (i % 10 != 0) continue;
      auto field = [](std::uint64_t set) { return oracle::binary_subfield(3, set); };
      const auto fj = field(j), fk = field(kv), fl = field(l), fkl = field(kv | l);
      const bool jk_l = oracle::cond_independent_field(r, fj, fk, fl);
      const bool j_l = oracle::independent(r, fj, fl);
      const bool j_l_k = oracle::cond_independent_field(r, fj, fl, fk);
      const bool j_kl = oracle::independent(r, fj, fkl);
      v.require(check.j_indep_k_given_l == jk_l && check.j_indep_l == j_l &&
                    check.j_indep_l_given_k == j_l_k && check.j_indep_kl == j_kl,
                "contraction verdicts against oracle");
      ++oracle_checked;
    }
  }
  v.require(oracle_checked > 0, "oracle contraction cross-check ran");
}

// 4 -----------------------------------------------------------------------

void all_pairs(const Ncf& k, const OrderMeasure& p, Verdict& v) {
  const auto n = k.space()->world_count();
  const auto full = oracle::all_worlds(n);
  std::vector<Proposition> props;
  for (oracle::Mask a = 0; a <= full; ++a) props.push_back(Proposition::from_mask(k.space(), a));
  bool ok = true;
  const auto base = p.total().order();
  for (const auto& a : props) {
    const auto built = p.weight_of(a).order();
    ok = ok && measure_order(p, a) == rank_prop(k, a) &&
         (built.is_top() ? built : built - base) == rank_prop(k, a);
  }
  for (std::size_t a = 1; a < props.size() && ok; ++a)
    for (const auto& b : props) ok = ok && cond_measure_order(p, b, props[a]) == cond_rank(k, b, props[a]);
  v.require(ok, "order differs from rank on some proposition pair");
}

void bridge(Verdict& v) {
  // Merged per law: small spaces have no conditioning variable, so single
  // instances may check nothing for some laws.
  std::vector<CheckTally> merged;
  auto pool = [&](const std::vector<CheckTally>& tallies) {
    for (const auto& t : tallies) {
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const CheckTally& m) { return m.name == t.name; });
      if (it == merged.end()) merged.push_back(t);
      else it->merge(t);
    }
  };
  for (std::size_t vars = 1; vars <= 2; ++vars) {
    const auto space = binary_space(vars);
    oracle::Ranks r(space->world_count(), 0);
    std::size_t seen = 0;
    do {
      if (!oracle::is_ncf(r)) continue;
      const auto k = ncf_from_world_ranks(space, r);
      const auto report = verify_theorem2(k);
      v.require(report.exhaustive, "small space checked exhaustively");
      pool(report.checks);
      all_pairs(k, ncf_to_measure(k), v);
      ++seen;
    } while (oracle::next_vector(r, 4));
    v.require(seen == (vars == 1 ? 9U : 369U), "exhaustive enumeration count");
  }

  // Larger instances on 3 variables, three kinds in turn: random
  // coefficients, unit coefficients, and product form (ranks additive and
  // coefficients multiplicative per variable) so that P-independence and
  // P-conditional independence actually occur.
  Rng rng(kSeed + 4);
  const auto space = binary_space(3);
  auto population = random_population(1000, 3, 5, kSeed + 4);
  for (std::size_t i = 0; i < population.size(); ++i) {
    std::vector<Rational> coeffs;
    auto factor = [&] { return Rational(static_cast<long>(1 + rng.below(9)), static_cast<long>(1 + rng.below(9))); };
    if (i % 3 == 0) {
      for (std::size_t w = 0; w < 8; ++w) coeffs.push_back(factor());
    } else if (i % 3 == 2) {
      std::array<std::array<std::uint64_t, 2>, 3> r{};
      std::array<std::array<Rational, 2>, 3> c{};
      for (std::size_t var = 0; var < 3; ++var) {
        r[var][rng.below(2)] = rng.below(3);
        c[var] = {factor(), factor()};
      }
      oracle::Ranks ranks(8);
      for (std::size_t w = 0; w < 8; ++w) {
        Rational coeff = 1;
        for (std::size_t var = 0; var < 3; ++var) {
          const auto x = (w >> (2 - var)) & 1U;
          ranks[w] += r[var][x];
          coeff *= c[var][x];
        }
        coeffs.push_back(coeff);
      }
      population[i] = ncf_from_world_ranks(space, ranks);
    }
    const auto& k = population[i];
    BridgeOptions options;
    options.seed = rng.next();
    pool(verify_theorem2(k, coeffs, options).checks);
    all_pairs(k, ncf_to_measure(k, coeffs), v);
  }
  v.absorb(merged);
}

// 5 -----------------------------------------------------------------------

// Dempster combination recomputed over masks.
std::map<oracle::Mask, Rational> oracle_combine(const MassFunction& m1, const MassFunction& m2,
                                                Rational& conflict) {
  std::map<oracle::Mask, Rational> raw;
  conflict = 0;
  for (const auto& [a, x] : m1.focal())
    for (const auto& [b, y] : m2.focal()) {
      const auto c = a.mask() & b.mask();
      if (c == 0) conflict += x * y;
      else raw[c] += x * y;
    }
  for (auto& [c, x] : raw) x /= (1 - conflict);
  return raw;
}

void rivals(Verdict& v) {
  // Axioms on every space of 1..5 worlds (one variable), ranks <= 4.
  for (std::size_t n = 1; n <= 5; ++n) {
    Variable var{"V", {}};
    for (std::size_t i = 0; i < n; ++i) var.values.push_back(std::to_string(i));
    const auto space = build_space({var});
    oracle::Ranks r(n, 0);
    do {
      if (!oracle::is_ncf(r)) continue;
      const auto k = ncf_from_world_ranks(space, r);
      const auto y = ncf_to_surprise(k);
      const auto report = check_surprise_axioms(y);
      v.require(report.exhaustive, "surprise axioms exhaustive");
      v.absorb(report.tallies());
      // Direct check of all three axioms from oracle ranks.
      const auto full = oracle::all_worlds(n);
      auto scaled = [&](oracle::Mask a) -> Rational {
        const auto rank = oracle::rank(r, a);
        return rank == oracle::kTop ? Rational(1) : Rational(static_cast<long>(rank), static_cast<long>(rank + 1));
      };
      bool ok = scaled(0) == 1 && y.value(Proposition::empty(space)) == 1;
      for (oracle::Mask a = 0; a <= full && ok; ++a) {
        ok = y.value(Proposition::from_mask(space, a)) == scaled(a);
        ok = ok && (a == 0 || a == full || std::min(scaled(a), scaled(full & ~a)) == 0);
        for (oracle::Mask b = 0; b <= full && ok; ++b)
          ok = scaled(a | b) == std::min(scaled(a), scaled(b));
      }
      v.require(ok, "surprise values against oracle");
    } while (oracle::next_vector(r, 4));
  }

  const auto model = cli::load_model("kappa1.json", kDefaultWorldCap);
  const auto& k = model.kappa;
  const auto gap = shackle_conjunction_gap(ncf_to_surprise(k), k, eval_formula(k.space(), "X=1"),
                                           eval_formula(k.space(), "Y=1"));
  v.require(gap.joint == Rational(3, 4), "y(A and B) = 3/4");
  v.require(gap.max_composition == Rational(2, 3), "max(y(A), y(B|A)) = 2/3");
  v.require(!gap.max_rule_holds && gap.sum_rule_holds, "max rule fails, sum rule holds");

  const auto s = binary_space(2);
  const auto w = demonstrate_nonclosure(s);
  v.require(w.has_value(), "non-closure witness found");
  if (!w) return;
  const MassFunction pinned(s, {{Proposition::from_mask(s, 0b0001), Rational(1, 2)},
                                {Proposition::from_mask(s, 0b0101), Rational(3, 10)},
                                {Proposition::full(s), Rational(1, 5)}});
  v.require(w->consonant == pinned, "pinned consonant mass function");
  v.require(w->support == make_simple_support(Proposition::from_mask(s, 0b1100), Rational(1, 2)),
            "pinned simple support");
  v.require(w->conflict == Rational(1, 4), "K = 1/4");
  v.require(w->first == Proposition::from_mask(s, 0b0001) && w->second == Proposition::from_mask(s, 0b0100),
            "non-nested focal sets {w00}, {w10}");
  v.require(w->consonant.is_consonant() && !w->combined.is_consonant(), "consonance lost");
  Rational conflict;
  const auto expected = oracle_combine(w->consonant, w->support, conflict);
  v.require(conflict == w->conflict, "K against oracle");
  bool same = expected.size() == w->combined.focal().size();
  for (const auto& [a, x] : w->combined.focal()) {
    const auto it = expected.find(a.mask());
    same = same && it != expected.end() && it->second == x;
  }
  v.require(same, "combined masses against oracle");
}

// 6 -----------------------------------------------------------------------

void closure_contrast(Verdict& v) {
  std::ostringstream out, err;
  const int code = cli::run({"verify", "all"}, out, err);
  const auto text = out.str();
  v.require(code == cli::kExitOk, "verify all exit code " + std::to_string(code) + ": " + err.str());
  v.require(text.find("total violations: 0") != std::string::npos, "zero violations reported");
  v.require(text.find("ncf revision: closed (") != std::string::npos, "revision closure line");
  v.require(text.find("revision results satisfy NCF invariants: checked") != std::string::npos,
            "revision invariant tally");
  v.require(text.find("consonant belief functions: not closed under Dempster combination") != std::string::npos, "consonance non-closure line");
  v.require(text.find("conflict K = 1/4") != std::string::npos, "non-closure conflict");
}

// 7 -----------------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string shell_output(const std::string& command) {
  std::string out;
  if (FILE* pipe = ::popen(command.c_str(), "r")) {
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    ::pclose(pipe);
  }
  return out;
}

void golden(Verdict& v) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases{
      {"query_y1.txt", {"query", "kappa1.json", "Y=1"}},
      {"query_tautology.txt", {"query", "kappa1.json", "X=0 or not X=0"}},
      {"query_conjunction.txt", {"query", "kappa1.json", "X=1 and Y=1"}},
      {"revise_x1.txt", {"revise", "kappa1.json", "--on", "X=1", "--firmness", "1"}},
      {"revise_sequence.txt",
       {"revise", "kappa1.json", "--on", "X=1", "--firmness", "1", "--jeffrey", "evidence_x.json",
        "--on", "X=0", "--firmness", "2"}},
      {"revise_suspend.txt", {"revise", "kappa1.json", "--on", "Y=1", "--firmness", "0"}},
      {"independent_kappa1.txt", {"independent", "kappa1.json", "--lhs", "X", "--rhs", "Y"}},
      {"independent_xor.txt", {"independent", "xor.json", "--lhs", "X", "--rhs", "Y"}},
      {"independent_given.txt",
       {"independent", "additive3.json", "--lhs", "X", "--rhs", "Y", "--given", "Z"}},
  };
  for (const auto& [file, args] : cases) {
    const auto expected = slurp(std::string(RANKCALC_GOLDEN_DIR) + "/" + file);
    v.require(!expected.empty(), file + ": golden file missing");
    for (int run = 0; run < 2; ++run) {
      std::ostringstream out, err;
      v.require(cli::run(args, out, err) == cli::kExitOk, file + ": exit code");
      v.require(out.str() == expected, file + ": in-process output differs");
    }
    std::string command = RANKCALC_CLI_PATH;
    for (const auto& a : args) command += " '" + a + "'";
    v.require(shell_output(command) == expected, file + ": separate process output differs");
  }
}

}  // namespace

int main() {
  const auto population = random_population(kPopulation, 0, 5, kSeed);
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria{
      {"law suite on 10000 NCFs", [&](Verdict& v) { laws(population, v); }},
      {"revision suite on the same population", [&](Verdict& v) { revision(population, v); }},
      {"union law sweep, proviso witness, contraction law", independence_laws},
      {"order measures match ranks", bridge},
      {"surprise axioms, conjunction exhibit, Dempster non-closure", rivals},
      {"verify all: revision closed, consonance not closed", closure_contrast},
      {"golden CLI output is byte-identical", golden},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::ostringstream seconds;
    seconds.precision(2);
    seconds << std::fixed << took.count();
    std::cout << (v.passed() ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first
              << " (" << v.checks() << " checks, " << v.failures() << " failures, " << seconds.str()
              << " s)\n";
    for (const auto& note : v.notes()) std::cout << "    " << note << "\n";
    all = all && v.passed();
  }
  return all ? 0 : 1;
}
