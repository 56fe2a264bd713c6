#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankcalc {

// Outcome of one class of checks: how many instances ran, how many failed,
// and a description of the first failure.
struct CheckTally {
  CheckTally() = default;
  explicit CheckTally(std::string tally_name) : name(std::move(tally_name)) {}

  std::string name;
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::optional<std::string> first_witness;
  // Tracks a claim that is known to fail in general. Its failures are
  // reported as counterexamples and never count as violations.
  bool informational = false;

  template <typename Describe>
  void record(bool ok, Describe&& describe) {
    ++checked;
    if (ok) return;
    ++violations;
    if (!first_witness) first_witness = describe();
  }

  void merge(const CheckTally& other);
};

// "name: checked N, violations V" per line, witness lines indented below.
std::string render_tallies(const std::vector<CheckTally>& tallies);

std::size_t total_violations(const std::vector<CheckTally>& tallies);

}  // namespace rankcalc
