#pragma once

// Finite possibility spaces built as products of named variables, the
// propositions over them, and fields represented by their atoms.

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rankcalc {

inline constexpr std::size_t kDefaultWorldCap = std::size_t{1} << 20;

using WorldIndex = std::size_t;

struct Variable {
  std::string name;
  std::vector<std::string> values;

  friend bool operator==(const Variable&, const Variable&) = default;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// Worlds are the Cartesian product of the variable domains, indexed in
// lexicographic order with the first variable most significant.
class Space {
 public:
  const std::vector<Variable>& variables() const { return variables_; }
  std::size_t world_count() const { return world_count_; }
  std::size_t variable_count() const { return variables_.size(); }

  // Throws ValidationError for an unknown name.
  std::size_t variable_index(std::string_view name) const;
  std::size_t value_index(std::size_t variable, std::string_view value) const;

  // Value index of `variable` in world `w`.
  std::size_t value_of(WorldIndex w, std::size_t variable) const {
    return (w / strides_[variable]) % variables_[variable].values.size();
  }
  std::vector<std::size_t> assignment(WorldIndex w) const;
  WorldIndex world_of(std::span<const std::size_t> value_indices) const;

  // "(X=0, Y=1)"
  std::string world_label(WorldIndex w) const;

  friend bool operator==(const Space& a, const Space& b) {
    return a.variables_ == b.variables_;
  }

 private:
  friend SpacePtr build_space(std::vector<Variable>, std::size_t);
  Space() = default;

  std::vector<Variable> variables_;
  std::vector<std::size_t> strides_;
  std::size_t world_count_ = 0;
};

// Errors: no variables, empty domain, duplicate variable or value names,
// more than `world_cap` worlds (SpaceTooLargeError).
SpacePtr build_space(std::vector<Variable> variables,
                     std::size_t world_cap = kDefaultWorldCap);

bool same_space(const SpacePtr& a, const SpacePtr& b);
// Throws ValidationError unless same_space(a, b).
void require_same_space(const SpacePtr& a, const SpacePtr& b);

// A set of worlds of one space.
class Proposition {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  Proposition(SpacePtr space, Bits members);

  static Proposition empty(const SpacePtr& space);
  static Proposition full(const SpacePtr& space);
  static Proposition singleton(const SpacePtr& space, WorldIndex w);
  static Proposition of_worlds(const SpacePtr& space, std::span<const WorldIndex> worlds);
  // Bit i of `mask` selects world i; requires world_count <= 64.
  static Proposition from_mask(const SpacePtr& space, std::uint64_t mask);

  const SpacePtr& space() const { return space_; }
  const Bits& bits() const { return members_; }

  bool contains(WorldIndex w) const { return members_.test(w); }
  std::size_t size() const { return members_.count(); }
  bool is_empty() const { return members_.none(); }
  bool is_full() const { return members_.all(); }
  bool is_contingent() const { return !is_empty() && !is_full(); }
  bool is_subset_of(const Proposition& other) const;
  bool intersects(const Proposition& other) const;
  std::vector<WorldIndex> worlds() const;
  // Only valid when world_count <= 64.
  std::uint64_t mask() const;

  Proposition operator~() const;
  Proposition operator&(const Proposition& other) const;
  Proposition operator|(const Proposition& other) const;
  Proposition operator-(const Proposition& other) const;

  friend bool operator==(const Proposition& a, const Proposition& b);
  // Orders by member bitset; spaces are assumed equal.
  friend bool operator<(const Proposition& a, const Proposition& b) {
    return a.members_ < b.members_;
  }

  // "{(X=0, Y=1), (X=1, Y=1)}"
  std::string to_string() const;

 private:
  SpacePtr space_;
  Bits members_;
};

// A field given by its atoms: non-empty, pairwise disjoint, covering the space.
class PartitionField {
 public:
  // Throws ValidationError if `atoms` is not a partition of the space.
  PartitionField(SpacePtr space, std::vector<Proposition> atoms);

  const SpacePtr& space() const { return space_; }
  const std::vector<Proposition>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }
  std::size_t atom_of(WorldIndex w) const { return atom_of_world_[w]; }

  // Union of the atoms selected by `atom_mask` (bit i = atom i); atom_count <= 64.
  Proposition member(std::uint64_t atom_mask) const;

  // True iff every atom of `other` is a subset of some atom of *this.
  bool refines(const PartitionField& other) const;

  friend bool operator==(const PartitionField& a, const PartitionField& b);

 private:
  SpacePtr space_;
  std::vector<Proposition> atoms_;
  std::vector<std::size_t> atom_of_world_;
};

PartitionField trivial_field(const SpacePtr& space);
PartitionField full_field(const SpacePtr& space);

// Atoms are the classes of worlds agreeing on every variable in `vars`,
// ordered by their lowest world index.
PartitionField subfield_of_variables(const SpacePtr& space,
                                     std::span<const std::string> vars);
PartitionField subfield_of_variables(const SpacePtr& space,
                                     std::span<const std::size_t> var_indices);

// Atoms {A, -A}; A must be contingent.
PartitionField field_of_proposition(const Proposition& a);

bool is_measurable(const Proposition& a, const PartitionField& field);

// Coarsest field refining both; atoms are the non-empty pairwise intersections.
PartitionField common_refinement(const PartitionField& f, const PartitionField& g);

// Formula syntax: `var=value`, `not`, `and`, `or`, parentheses; `and` binds
// tighter than `or`. Values may be double-quoted. Throws ParseError with a
// character position or ValidationError for unknown names.
Proposition eval_formula(const SpacePtr& space, std::string_view formula);

}  // namespace rankcalc
