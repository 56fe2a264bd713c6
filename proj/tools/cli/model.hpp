#pragma once

// Model files: a JSON document with `version: 1`, the variables, a ranking
// given as a world table or as per-variable additive maps, and optional
// named propositions. Unknown fields are rejected everywhere.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rankcalc/ncf.hpp"
#include "rankcalc/revision.hpp"

namespace rankcalc::cli {

struct Model {
  Ncf kappa;
  // Name and formula, in file order.
  std::vector<std::pair<std::string, std::string>> propositions;

  const SpacePtr& space() const { return kappa.space(); }
};

// RANKCALC_WORLD_CAP if set (a positive integer), else the library default.
std::size_t world_cap_from_env();

// `source` names the document in error messages.
Model parse_model(const std::string& text, const std::string& source, std::size_t world_cap);
Model load_model(const std::string& path, std::size_t world_cap);

// Always written in table mode, worlds in index order.
std::string model_to_json(const Model& model);
void write_model(const std::string& path, const Model& model);

// {"version": 1, "evidence": [{"atom": FORMULA, "rank": N}, ...]}; the atoms
// must partition the model's space.
EvidenceNcf load_evidence(const std::string& path, const Model& model);

// A named proposition of the model, or else a formula.
Proposition resolve_proposition(const Model& model, const std::string& text);

}  // namespace rankcalc::cli
