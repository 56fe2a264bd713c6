#include "commands.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "model.hpp"
#include "rankcalc/bridge.hpp"
#include "rankcalc/error.hpp"
#include "rankcalc/independence.hpp"
#include "rankcalc/random.hpp"
#include "rankcalc/rivals.hpp"
#include "rankcalc/verification.hpp"

namespace rankcalc::cli {
namespace {

constexpr std::size_t kDefaultPopulation = 10000;
constexpr std::uint64_t kDefaultMaxRank = 5;
constexpr std::uint64_t kDefaultSeed = 1988;

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    if (item.empty()) throw ValidationError("empty name in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ValidationError("expected a comma-separated list");
  if (text.back() == ',') throw ValidationError("empty name in list '" + text + "'");
  return out;
}

std::string firmness_text(const Ncf& k, const Proposition& a) {
  if (!a.is_contingent()) return "undefined (not contingent)";
  return std::to_string(firmness(k, a).value);
}

std::string belief_status(const Ncf& k, const Proposition& a) {
  if (believes(k, a)) return "true";
  if (believes(k, ~a)) return "false";
  return "neither";
}

// --- query -----------------------------------------------------------------

int cmd_query(const std::string& path, const std::string& formula, std::ostream& out) {
  const auto model = load_model(path, world_cap_from_env());
  const auto& k = model.kappa;
  const auto a = resolve_proposition(model, formula);
  out << "formula: " << formula << "\n";
  out << "worlds: " << a.to_string() << "\n";
  if (a.is_full()) out << "tautology: true in every world\n";
  if (a.is_empty()) out << "contradiction: true in no world\n";
  out << "rank " << rank_prop(k, a) << ", neg-rank " << rank_prop(k, ~a) << ", believed "
      << belief_status(k, a) << ", firmness " << firmness_text(k, a) << "\n";
  return kExitOk;
}

// --- revise ----------------------------------------------------------------

struct StepSpec {
  enum Kind { kOn, kJeffrey } kind;
  std::string text;
  std::uint64_t firmness = 0;
};

std::uint64_t parse_firmness(const std::string& text) {
  if (text.empty() || text.size() > 12 ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ValidationError("--firmness expects a non-negative integer, got '" + text + "'");
  return std::stoull(text);
}

// Pairs each --on with the --firmness that follows it, in command-line order.
std::vector<StepSpec> collect_steps(const CLI::App& app, const CLI::Option* on,
                                    const CLI::Option* firm, const CLI::Option* jeffrey) {
  std::vector<StepSpec> steps;
  std::map<const CLI::Option*, std::size_t> seen;
  bool awaiting_firmness = false;
  for (const auto* opt : app.parse_order()) {
    if (opt != on && opt != firm && opt != jeffrey) continue;
    const auto& value = opt->results().at(seen[opt]++);
    if (opt == on) {
      if (awaiting_firmness) throw ValidationError("--on \"" + steps.back().text +
                                                   "\" needs a --firmness before the next step");
      steps.push_back({StepSpec::kOn, value, 0});
      awaiting_firmness = true;
    } else if (opt == firm) {
      if (!awaiting_firmness) throw ValidationError("--firmness must follow an --on");
      steps.back().firmness = parse_firmness(value);
      awaiting_firmness = false;
    } else {
      if (awaiting_firmness) throw ValidationError("--on \"" + steps.back().text +
                                                   "\" needs a --firmness before the next step");
      steps.push_back({StepSpec::kJeffrey, value, 0});
    }
  }
  if (awaiting_firmness)
    throw ValidationError("--on \"" + steps.back().text + "\" needs a --firmness");
  return steps;
}

int cmd_revise(const std::string& path, const std::vector<StepSpec>& specs,
               const std::string& out_path, std::ostream& out) {
  auto model = load_model(path, world_cap_from_env());
  std::vector<RevisionStep> steps;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      if (specs[i].kind == StepSpec::kOn)
        steps.emplace_back(PropositionStep{resolve_proposition(model, specs[i].text),
                                           specs[i].firmness});
      else
        steps.emplace_back(load_evidence(specs[i].text, model));
    } catch (const ParseError& e) {
      throw ParseError("revision step " + std::to_string(i + 1) + ": " + e.what(),
                       e.position());
    } catch (const ValidationError& e) {
      throw RevisionStepError(i, e.what());
    }
  }
  const auto run = revision_sequence(model.kappa, steps);

  out << "initial core: " << belief_core(model.kappa).to_string() << "\n";
  for (const auto& entry : run.trace) {
    const auto& spec = specs[entry.index];
    out << "step " << entry.index + 1 << ": ";
    if (spec.kind == StepSpec::kOn)
      out << "on " << spec.text << " with firmness " << spec.firmness << "\n";
    else
      out << "jeffrey " << spec.text << "\n";
    out << "  core: " << entry.core.to_string() << "\n";
    for (const auto& [target, firm] : entry.targets)
      out << "  firmness of " << target.to_string() << ": " << firm.value << "\n";
  }
  model.kappa = run.result;
  out << "final model:\n" << model_to_json(model);
  if (!out_path.empty()) write_model(out_path, model);
  return kExitOk;
}

// --- independent -----------------------------------------------------------

PartitionField field_of_names(const SpacePtr& space, const std::vector<std::string>& names) {
  return subfield_of_variables(space, std::span<const std::string>(names));
}

int cmd_independent(const std::string& path, const std::string& lhs, const std::string& rhs,
                    const std::string& given, std::ostream& out) {
  const auto model = load_model(path, world_cap_from_env());
  const auto& k = model.kappa;
  const auto& space = model.space();
  const auto l = split_list(lhs), r = split_list(rhs);
  const auto g = given.empty() ? std::vector<std::string>{} : split_list(given);

  std::map<std::size_t, const char*> owner;
  auto claim = [&](const std::vector<std::string>& names, const char* which) {
    for (const auto& n : names) {
      const auto idx = space->variable_index(n);
      auto [it, fresh] = owner.emplace(idx, which);
      if (!fresh)
        throw ValidationError("variable " + n + " appears in both " + it->second + " and " +
                              which);
    }
  };
  claim(l, "--lhs");
  claim(r, "--rhs");
  claim(g, "--given");

  const auto fl = field_of_names(space, l), fr = field_of_names(space, r);
  const auto result = g.empty() ? check_independence(k, fl, fr)
                                : check_cond_independence(k, fl, fr, field_of_names(space, g));

  out << "lhs: " << join(l, ", ") << "\n";
  out << "rhs: " << join(r, ", ") << "\n";
  out << "given: " << (g.empty() ? "(nothing)" : join(g, ", ")) << "\n";
  out << "verdict: " << (result.independent ? "independent" : "dependent") << "\n";
  out << "checked: " << result.pairs_checked << " member pairs (" << to_string(result.regime)
      << ")\n";
  if (!result.atom_pairs_agree) out << "warning: atom-pair check disagrees with member check\n";
  if (result.witness) {
    const auto& w = *result.witness;
    out << "witness:\n";
    out << "  B = " << w.lhs.to_string() << "\n";
    out << "  C = " << w.rhs.to_string() << "\n";
    if (w.given) {
      const auto& d = *w.given;
      out << "  D = " << d.to_string() << "\n";
      out << "  k(B and C | D) = " << w.joint << "\n";
      out << "  k(B | D) + k(C | D) = " << cond_rank(k, w.lhs, d) << " + "
          << cond_rank(k, w.rhs, d) << " = " << w.sum << "\n";
    } else {
      out << "  k(B and C) = " << w.joint << "\n";
      out << "  k(B) + k(C) = " << rank_prop(k, w.lhs) << " + " << rank_prop(k, w.rhs) << " = "
          << w.sum << "\n";
    }
  }
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::string model;
  std::optional<std::size_t> random;
  std::size_t vars = 0;
  std::uint64_t max_rank = kDefaultMaxRank;
  std::uint64_t seed = kDefaultSeed;
};

void print_section(std::ostream& out, const char* title, const std::vector<CheckTally>& t) {
  out << "[" << title << "]\n" << render_tallies(t);
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  static const char* const kSuites[] = {"laws", "bridge", "rivals", "all"};
  if (std::find(std::begin(kSuites), std::end(kSuites), args.suite) == std::end(kSuites))
    throw ValidationError("unknown suite '" + args.suite + "' (laws, bridge, rivals, all)");
  if (!args.model.empty() && args.random)
    throw ValidationError("give either a model file or --random, not both");
  if (args.vars > 4) throw ValidationError("--vars is limited to 4 binary variables");

  std::vector<Ncf> population;
  if (!args.model.empty()) {
    population.push_back(load_model(args.model, world_cap_from_env()).kappa);
    out << "population: " << args.model << "\n";
  } else {
    const auto count = args.random.value_or(kDefaultPopulation);
    if (count == 0) throw ValidationError("--random needs a positive count");
    population = random_population(count, args.vars, args.max_rank, args.seed);
    out << "population: " << count << " random NCFs over "
        << (args.vars ? std::to_string(args.vars) : std::string("1-3")) << " binary variables, "
        << "ranks <= " << args.max_rank << ", seed " << args.seed << "\n";
  }

  SuiteOptions options;
  options.seed = args.seed;
  options.max_firmness = kDefaultMaxRank;
  const bool all = args.suite == "all";
  std::vector<CheckTally> every;
  std::optional<CheckTally> closed;

  if (args.suite == "laws" || all) {
    const auto laws = run_law_suite(population, options);
    const auto revision = run_revision_suite(population, options);
    const auto indep = run_independence_suite(population, options);
    print_section(out, "laws", laws);
    print_section(out, "revision", revision);
    print_section(out, "independence", indep);
    for (const auto* v : {&laws, &revision, &indep}) every.insert(every.end(), v->begin(), v->end());
    closed = revision.back();
  }
  if (args.suite == "bridge" || all) {
    const auto bridge = run_bridge_suite(population, options);
    print_section(out, "bridge", bridge);
    every.insert(every.end(), bridge.begin(), bridge.end());
  }
  if (args.suite == "rivals" || all) {
    const auto rivals = run_rivals_suite(population, options);
    print_section(out, "rivals", rivals);
    every.insert(every.end(), rivals.begin(), rivals.end());
  }

  std::size_t contrast_failures = 0;
  if (all) {
    out << "[closure contrast]\n";
    const bool ncf_closed = closed && closed->checked > 0 && closed->violations == 0;
    out << "ncf revision: " << (ncf_closed ? "closed" : "NOT closed") << " ("
        << (closed ? closed->checked : 0) << " revision results checked)\n";
    const auto witness = demonstrate_nonclosure(binary_space(2));
    const bool open = witness && witness->consonant.is_consonant() &&
                      !witness->combined.is_consonant();
    if (open) {
      out << "consonant belief functions: not closed under Dempster combination\n";
      out << "  consonant:\n" << witness->consonant.to_string();
      out << "  simple support:\n" << witness->support.to_string();
      out << "  conflict K = " << to_string(witness->conflict) << "\n";
      out << "  combination:\n" << witness->combined.to_string();
      out << "  non-nested focal sets: " << witness->first.to_string() << " and "
          << witness->second.to_string() << "\n";
    } else {
      out << "consonant belief functions: no non-closure witness found (unexpected)\n";
    }
    contrast_failures = (ncf_closed ? 0 : 1) + (open ? 0 : 1);
  }

  const auto violations = total_violations(every) + contrast_failures;
  out << "total violations: " << violations << "\n";
  return violations == 0 ? kExitOk : kExitViolation;
}

// --- bridge ----------------------------------------------------------------

int cmd_bridge(const std::string& path, const std::string& coeffs_text, std::uint64_t seed,
               std::ostream& out) {
  const auto model = load_model(path, world_cap_from_env());
  const auto& k = model.kappa;
  const auto& space = model.space();
  std::vector<Rational> coeffs;
  if (!coeffs_text.empty())
    for (const auto& c : split_list(coeffs_text)) coeffs.push_back(parse_rational(c));
  const auto p = ncf_to_measure(k, coeffs);
  out << "weights:\n";
  for (std::size_t w = 0; w < space->world_count(); ++w)
    out << "  " << space->world_label(w) << ": " << p.weight(w).to_string() << "\n";
  out << "total: " << p.total().to_string() << "\n";
  BridgeOptions options;
  options.seed = seed;
  const auto report = verify_theorem2(k, coeffs, options);
  out << report.render();
  out << "total violations: " << report.violations() << "\n";
  return report.violations() == 0 ? kExitOk : kExitViolation;
}

// --- rivals ----------------------------------------------------------------

int cmd_rivals(const std::string& path, const std::string& a_text, const std::string& b_text,
               std::ostream& out) {
  const auto model = load_model(path, world_cap_from_env());
  const auto& k = model.kappa;
  const auto& space = model.space();
  int status = kExitOk;

  const auto y = ncf_to_surprise(k);
  out << "[surprise] scale n/(n+1)\n";
  for (std::size_t w = 0; w < space->world_count(); ++w)
    out << "  y" << space->world_label(w) << " = " << to_string(y.world_value(w)) << "\n";
  const auto axioms = check_surprise_axioms(y);
  out << "regime: " << (axioms.exhaustive ? "exhaustive" : "sampled") << "\n"
      << render_tallies(axioms.tallies());
  if (!axioms.all_pass()) status = kExitViolation;

  if (!a_text.empty() || !b_text.empty()) {
    if (a_text.empty() || b_text.empty()) throw ValidationError("--a and --b go together");
    const auto a = resolve_proposition(model, a_text);
    const auto b = resolve_proposition(model, b_text);
    out << "[conjunction] A = " << a_text << ", B = " << b_text << "\n"
        << shackle_conjunction_gap(y, k, a, b).render();
  }

  out << "[belief functions]\n";
  const auto witness = demonstrate_nonclosure(space);
  if (witness) {
    out << "consonant:\n" << witness->consonant.to_string();
    out << "simple support:\n" << witness->support.to_string();
    out << "conflict K = " << to_string(witness->conflict) << "\n";
    out << "combination:\n" << witness->combined.to_string();
    out << "non-nested focal sets: " << witness->first.to_string() << " and "
        << witness->second.to_string() << "\n";
  } else if (space->world_count() > 1) {
    out << "no non-closure witness found on this space (unexpected)\n";
    status = kExitViolation;
  } else {
    out << "no non-closure witness: a one-world space has no contingent proposition\n";
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ranking functions: queries, revision, independence and verification", "rankcalc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "rankcalc 0.1.0");

  std::string model, formula, out_path, lhs, rhs, given, coeffs, a_text, b_text;
  std::uint64_t bridge_seed = 1;

  auto* query = app.add_subcommand("query", "Rank, belief status and firmness of a formula");
  query->add_option("model", model, "Model file")->required();
  query->add_option("formula", formula, "Formula or named proposition")->required();

  auto* revise = app.add_subcommand("revise", "Apply a sequence of revisions");
  revise->add_option("model", model, "Model file")->required();
  auto* on = revise->add_option("--on", "Target formula of an A,m-revision")->take_all();
  auto* firm = revise->add_option("--firmness", "Firmness m for the preceding --on");
  auto* jeffrey = revise->add_option("--jeffrey", "Evidence file for a Jeffrey revision");
  on->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->expected(1);
  firm->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->expected(1);
  jeffrey->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->expected(1);
  revise->add_option("--out", out_path, "Write the final model here");

  auto* indep = app.add_subcommand("independent", "Independence of variable sets");
  indep->add_option("model", model, "Model file")->required();
  indep->add_option("--lhs", lhs, "Comma-separated variables")->required();
  indep->add_option("--rhs", rhs, "Comma-separated variables")->required();
  indep->add_option("--given", given, "Comma-separated conditioning variables");

  VerifyArgs vargs;
  std::size_t random_count = 0;
  auto* verify = app.add_subcommand("verify", "Run property suites: laws, bridge, rivals, all");
  verify->add_option("suite", vargs.suite, "laws | bridge | rivals | all")->required();
  verify->add_option("model", vargs.model, "Model file (default: random population)");
  auto* random_opt = verify->add_option("--random", random_count, "Number of random NCFs");
  verify->add_option("--vars", vargs.vars, "Binary variables per random NCF (0 = mix of 1-3)");
  verify->add_option("--max-rank", vargs.max_rank, "Largest random world rank");
  verify->add_option("--seed", vargs.seed, "Seed for populations and sampling");

  auto* bridge = app.add_subcommand("bridge", "Infinitesimal probability correspondence");
  bridge->add_option("model", model, "Model file")->required();
  bridge->add_option("--coeffs", coeffs, "Comma-separated positive rationals, one per world");
  bridge->add_option("--seed", bridge_seed, "Seed for sampled checks on large spaces");

  auto* rivals = app.add_subcommand("rivals", "Surprise functions and belief functions");
  rivals->add_option("model", model, "Model file")->required();
  rivals->add_option("--a", a_text, "Antecedent A for the conjunction exhibit");
  rivals->add_option("--b", b_text, "Consequent B for the conjunction exhibit");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*query) return cmd_query(model, formula, out);
    if (*revise) return cmd_revise(model, collect_steps(*revise, on, firm, jeffrey), out_path, out);
    if (*indep) return cmd_independent(model, lhs, rhs, given, out);
    if (*verify) {
      if (*random_opt) vargs.random = random_count;
      return cmd_verify(vargs, out);
    }
    if (*bridge) return cmd_bridge(model, coeffs, bridge_seed, out);
    if (*rivals) return cmd_rivals(model, a_text, b_text, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace rankcalc::cli
