#include "model.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rankcalc/error.hpp"

namespace rankcalc::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw ValidationError(source_ + ": " + where + ": " + what);
  }

  const json& object(const json& j, const std::string& where,
                     std::initializer_list<const char*> allowed) const {
    if (!j.is_object()) fail(where, "expected an object");
    for (const auto& [key, value] : j.items()) {
      if (std::none_of(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; }))
        fail(where, "unknown field '" + key + "'");
    }
    return j;
  }

  const json& field(const json& j, const std::string& where, const char* name) const {
    auto it = j.find(name);
    if (it == j.end()) fail(where, std::string("missing field '") + name + "'");
    return *it;
  }

  std::string string(const json& j, const std::string& where) const {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
  }

  std::uint64_t rank(const json& j, const std::string& where) const {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
      fail(where, "expected a non-negative integer rank");
    const auto r = j.get<std::uint64_t>();
    // Keeps sums of ranks far from the TOP sentinel.
    if (r > (std::uint64_t{1} << 40)) fail(where, "rank too large");
    return r;
  }

 private:
  std::string source_;
};

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": malformed JSON (" + e.what() + ")", e.byte);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_version(const Reader& r, const json& doc) {
  const auto& v = r.field(doc, "document", "version");
  if (!v.is_number_integer() || v.get<std::int64_t>() != 1)
    r.fail("version", "unsupported version (expected 1)");
}

std::vector<Variable> read_variables(const Reader& r, const json& doc) {
  const auto& vars = r.field(doc, "document", "variables");
  if (!vars.is_array() || vars.empty()) r.fail("variables", "expected a non-empty array");
  std::vector<Variable> out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto where = "variables[" + std::to_string(i) + "]";
    r.object(vars[i], where, {"name", "values"});
    Variable v;
    v.name = r.string(r.field(vars[i], where, "name"), where + ".name");
    const auto& values = r.field(vars[i], where, "values");
    if (!values.is_array()) r.fail(where + ".values", "expected an array");
    for (std::size_t j = 0; j < values.size(); ++j)
      v.values.push_back(r.string(values[j], where + ".values[" + std::to_string(j) + "]"));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::uint64_t> read_table(const Reader& r, const json& ranking, const SpacePtr& space) {
  const auto& worlds = r.field(ranking, "ranking", "worlds");
  if (!worlds.is_array()) r.fail("ranking.worlds", "expected an array");
  const auto n = space->world_count();
  std::vector<std::uint64_t> ranks(n);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < worlds.size(); ++i) {
    const auto where = "ranking.worlds[" + std::to_string(i) + "]";
    r.object(worlds[i], where, {"assignment", "rank"});
    const auto& assignment = r.field(worlds[i], where, "assignment");
    if (!assignment.is_object()) r.fail(where + ".assignment", "expected an object");
    if (assignment.size() != space->variable_count())
      r.fail(where + ".assignment", "must assign every variable exactly once");
    std::vector<std::size_t> idx(space->variable_count());
    for (std::size_t v = 0; v < space->variable_count(); ++v) {
      const auto& name = space->variables()[v].name;
      auto it = assignment.find(name);
      if (it == assignment.end()) r.fail(where + ".assignment", "missing variable '" + name + "'");
      idx[v] = space->value_index(v, r.string(*it, where + ".assignment." + name));
    }
    const auto w = space->world_of(idx);
    if (seen[w]) r.fail(where, "world " + space->world_label(w) + " listed twice");
    seen[w] = 1;
    ranks[w] = r.rank(r.field(worlds[i], where, "rank"), where + ".rank");
  }
  for (std::size_t w = 0; w < n; ++w)
    if (!seen[w]) r.fail("ranking.worlds", "world " + space->world_label(w) + " has no rank");
  return ranks;
}

std::vector<std::uint64_t> read_additive(const Reader& r, const json& ranking,
                                         const SpacePtr& space) {
  const auto& maps = r.field(ranking, "ranking", "ranks");
  if (!maps.is_object()) r.fail("ranking.ranks", "expected an object");
  // Variables without a map contribute 0.
  std::vector<std::vector<std::uint64_t>> per_var;
  for (const auto& v : space->variables()) per_var.emplace_back(v.values.size(), 0);
  for (const auto& [name, map] : maps.items()) {
    const auto where = "ranking.ranks." + name;
    const auto v = space->variable_index(name);
    const auto& values = space->variables()[v].values;
    if (!map.is_object() || map.size() != values.size())
      r.fail(where, "expected one rank per value of " + name);
    std::uint64_t lowest = std::numeric_limits<std::uint64_t>::max();
    for (const auto& [value, rank] : map.items()) {
      const auto x = space->value_index(v, value);
      per_var[v][x] = r.rank(rank, where + "." + value);
      lowest = std::min(lowest, per_var[v][x]);
    }
    if (lowest != 0) r.fail(where, "minimum rank must be 0, got " + std::to_string(lowest));
  }
  std::vector<std::uint64_t> ranks(space->world_count());
  for (std::size_t w = 0; w < ranks.size(); ++w) {
    const auto a = space->assignment(w);
    for (std::size_t v = 0; v < a.size(); ++v) ranks[w] += per_var[v][a[v]];
  }
  return ranks;
}

}  // namespace

std::size_t world_cap_from_env() {
  const char* raw = std::getenv("RANKCALC_WORLD_CAP");
  if (!raw) return kDefaultWorldCap;
  const std::string text(raw);
  if (text.empty() || text.size() > 18 ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ValidationError("RANKCALC_WORLD_CAP must be a positive integer, got '" + text + "'");
  const auto cap = std::stoull(text);
  if (cap == 0) throw ValidationError("RANKCALC_WORLD_CAP must be positive");
  return static_cast<std::size_t>(cap);
}

Model parse_model(const std::string& text, const std::string& source, std::size_t world_cap) {
  const Reader r(source);
  const auto doc = parse_json(text, source);
  r.object(doc, "document", {"version", "variables", "ranking", "propositions"});
  check_version(r, doc);
  auto space = build_space(read_variables(r, doc), world_cap);

  const auto& ranking = r.field(doc, "document", "ranking");
  if (!ranking.is_object()) r.fail("ranking", "expected an object");
  const auto mode = r.string(r.field(ranking, "ranking", "mode"), "ranking.mode");
  std::vector<std::uint64_t> ranks;
  if (mode == "table") {
    r.object(ranking, "ranking", {"mode", "worlds"});
    ranks = read_table(r, ranking, space);
  } else if (mode == "additive") {
    r.object(ranking, "ranking", {"mode", "ranks"});
    ranks = read_additive(r, ranking, space);
  } else {
    r.fail("ranking.mode", "expected \"table\" or \"additive\", got \"" + mode + "\"");
  }

  Model model{ncf_from_world_ranks(space, ranks), {}};
  if (auto it = doc.find("propositions"); it != doc.end()) {
    if (!it->is_object()) r.fail("propositions", "expected an object of name: formula");
    for (const auto& [name, formula] : it->items()) {
      const auto f = r.string(formula, "propositions." + name);
      try {
        eval_formula(space, f);
      } catch (const Error& e) {
        r.fail("propositions." + name, e.what());
      }
      model.propositions.emplace_back(name, f);
    }
  }
  return model;
}

Model load_model(const std::string& path, std::size_t world_cap) {
  return parse_model(read_file(path), path, world_cap);
}

std::string model_to_json(const Model& model) {
  const auto& space = model.space();
  ordered_json doc;
  doc["version"] = 1;
  doc["variables"] = ordered_json::array();
  for (const auto& v : space->variables())
    doc["variables"].push_back(ordered_json{{"name", v.name}, {"values", v.values}});
  ordered_json worlds = ordered_json::array();
  for (std::size_t w = 0; w < space->world_count(); ++w) {
    ordered_json assignment = ordered_json::object();
    const auto a = space->assignment(w);
    for (std::size_t v = 0; v < a.size(); ++v)
      assignment[space->variables()[v].name] = space->variables()[v].values[a[v]];
    worlds.push_back(ordered_json{{"assignment", assignment}, {"rank", model.kappa.rank(w)}});
  }
  doc["ranking"] = ordered_json{{"mode", "table"}, {"worlds", worlds}};
  if (!model.propositions.empty()) {
    ordered_json props = ordered_json::object();
    for (const auto& [name, formula] : model.propositions) props[name] = formula;
    doc["propositions"] = props;
  }
  return doc.dump(2) + "\n";
}

void write_model(const std::string& path, const Model& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << model_to_json(model);
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

EvidenceNcf load_evidence(const std::string& path, const Model& model) {
  const Reader r(path);
  const auto doc = parse_json(read_file(path), path);
  r.object(doc, "document", {"version", "evidence"});
  check_version(r, doc);
  const auto& items = r.field(doc, "document", "evidence");
  if (!items.is_array() || items.empty()) r.fail("evidence", "expected a non-empty array");
  std::vector<Proposition> atoms;
  std::vector<std::uint64_t> ranks;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto where = "evidence[" + std::to_string(i) + "]";
    r.object(items[i], where, {"atom", "rank"});
    atoms.push_back(
        resolve_proposition(model, r.string(r.field(items[i], where, "atom"), where + ".atom")));
    ranks.push_back(r.rank(r.field(items[i], where, "rank"), where + ".rank"));
  }
  try {
    return EvidenceNcf(PartitionField(model.space(), std::move(atoms)), std::move(ranks));
  } catch (const ValidationError& e) {
    r.fail("evidence", e.what());
  }
}

Proposition resolve_proposition(const Model& model, const std::string& text) {
  for (const auto& [name, formula] : model.propositions)
    if (name == text) return eval_formula(model.space(), formula);
  return eval_formula(model.space(), text);
}

}  // namespace rankcalc::cli
