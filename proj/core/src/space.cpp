#include "rankcalc/space.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "rankcalc/error.hpp"

namespace rankcalc {

SpacePtr build_space(std::vector<Variable> variables, std::size_t world_cap) {
  if (variables.empty()) throw ValidationError("a space needs at least one variable");
  std::set<std::string> names;
  std::size_t worlds = 1;
  for (const auto& v : variables) {
    if (v.name.empty()) throw ValidationError("variable name must not be empty");
    if (!names.insert(v.name).second)
      throw ValidationError("duplicate variable name: " + v.name);
    if (v.values.empty()) throw ValidationError("empty domain for variable " + v.name);
    std::set<std::string> labels(v.values.begin(), v.values.end());
    if (labels.size() != v.values.size())
      throw ValidationError("duplicate value label in domain of " + v.name);
    // Saturating product so the error can report the requested size.
    if (worlds > std::numeric_limits<std::size_t>::max() / v.values.size())
      worlds = std::numeric_limits<std::size_t>::max();
    else
      worlds *= v.values.size();
  }
  if (worlds > world_cap) throw SpaceTooLargeError(worlds, world_cap);

  auto space = std::shared_ptr<Space>(new Space());
  space->world_count_ = worlds;
  space->strides_.resize(variables.size());
  std::size_t stride = 1;
  for (std::size_t i = variables.size(); i-- > 0;) {
    space->strides_[i] = stride;
    stride *= variables[i].values.size();
  }
  space->variables_ = std::move(variables);
  return space;
}

std::size_t Space::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i].name == name) return i;
  throw ValidationError("unknown variable: " + std::string(name));
}

std::size_t Space::value_index(std::size_t variable, std::string_view value) const {
  const auto& values = variables_.at(variable).values;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == value) return i;
  throw ValidationError("unknown value '" + std::string(value) + "' for variable " +
                        variables_[variable].name);
}

std::vector<std::size_t> Space::assignment(WorldIndex w) const {
  std::vector<std::size_t> out(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) out[i] = value_of(w, i);
  return out;
}

WorldIndex Space::world_of(std::span<const std::size_t> value_indices) const {
  if (value_indices.size() != variables_.size())
    throw ValidationError("assignment must give a value for every variable");
  WorldIndex w = 0;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (value_indices[i] >= variables_[i].values.size())
      throw ValidationError("value index out of range for variable " + variables_[i].name);
    w += value_indices[i] * strides_[i];
  }
  return w;
}

std::string Space::world_label(WorldIndex w) const {
  std::string out = "(";
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i) out += ", ";
    out += variables_[i].name;
    out += '=';
    out += variables_[i].values[value_of(w, i)];
  }
  out += ')';
  return out;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) throw ValidationError("operands belong to different spaces");
}

// ---------------------------------------------------------------------------

Proposition::Proposition(SpacePtr space, Bits members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw ValidationError("proposition without a space");
  if (members_.size() != space_->world_count())
    throw ValidationError("proposition size does not match its space");
}

Proposition Proposition::empty(const SpacePtr& space) {
  return Proposition(space, Bits(space->world_count()));
}

Proposition Proposition::full(const SpacePtr& space) {
  Bits b(space->world_count());
  b.set();
  return Proposition(space, std::move(b));
}

Proposition Proposition::singleton(const SpacePtr& space, WorldIndex w) {
  if (w >= space->world_count()) throw ValidationError("world index out of range");
  Bits b(space->world_count());
  b.set(w);
  return Proposition(space, std::move(b));
}

Proposition Proposition::of_worlds(const SpacePtr& space, std::span<const WorldIndex> worlds) {
  Bits b(space->world_count());
  for (auto w : worlds) {
    if (w >= space->world_count()) throw ValidationError("world index out of range");
    b.set(w);
  }
  return Proposition(space, std::move(b));
}

Proposition Proposition::from_mask(const SpacePtr& space, std::uint64_t mask) {
  const auto n = space->world_count();
  if (n > 64) throw ValidationError("mask construction needs at most 64 worlds");
  if (n < 64 && (mask >> n) != 0) throw ValidationError("mask selects worlds outside the space");
  return Proposition(space, Bits(n, mask));
}

bool Proposition::is_subset_of(const Proposition& other) const {
  require_same_space(space_, other.space_);
  return members_.is_subset_of(other.members_);
}

bool Proposition::intersects(const Proposition& other) const {
  require_same_space(space_, other.space_);
  return members_.intersects(other.members_);
}

std::vector<WorldIndex> Proposition::worlds() const {
  std::vector<WorldIndex> out;
  out.reserve(members_.count());
  for (auto i = members_.find_first(); i != Bits::npos; i = members_.find_next(i))
    out.push_back(i);
  return out;
}

std::uint64_t Proposition::mask() const {
  if (members_.size() > 64) throw ValidationError("mask needs at most 64 worlds");
  return members_.to_ulong();
}

Proposition Proposition::operator~() const { return Proposition(space_, ~members_); }

Proposition Proposition::operator&(const Proposition& other) const {
  require_same_space(space_, other.space_);
  return Proposition(space_, members_ & other.members_);
}

Proposition Proposition::operator|(const Proposition& other) const {
  require_same_space(space_, other.space_);
  return Proposition(space_, members_ | other.members_);
}

Proposition Proposition::operator-(const Proposition& other) const {
  require_same_space(space_, other.space_);
  return Proposition(space_, members_ - other.members_);
}

bool operator==(const Proposition& a, const Proposition& b) {
  return same_space(a.space_, b.space_) && a.members_ == b.members_;
}

std::string Proposition::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto w : worlds()) {
    if (!first) out += ", ";
    first = false;
    out += space_->world_label(w);
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------

PartitionField::PartitionField(SpacePtr space, std::vector<Proposition> atoms)
    : space_(std::move(space)), atoms_(std::move(atoms)) {
  const auto n = space_->world_count();
  constexpr auto kUnassigned = static_cast<std::size_t>(-1);
  atom_of_world_.assign(n, kUnassigned);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    require_same_space(space_, atoms_[i].space());
    if (atoms_[i].is_empty()) throw ValidationError("field atoms must be non-empty");
    for (auto w : atoms_[i].worlds()) {
      if (atom_of_world_[w] != kUnassigned)
        throw ValidationError("field atoms overlap at world " + space_->world_label(w));
      atom_of_world_[w] = i;
    }
  }
  for (std::size_t w = 0; w < n; ++w)
    if (atom_of_world_[w] == kUnassigned)
      throw ValidationError("field atoms do not cover world " + space_->world_label(w));
}

Proposition PartitionField::member(std::uint64_t atom_mask) const {
  if (atoms_.size() > 64) throw ValidationError("member masks need at most 64 atoms");
  auto out = Proposition::empty(space_);
  Proposition::Bits bits = out.bits();
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atom_mask >> i & 1U) bits |= atoms_[i].bits();
  return Proposition(space_, std::move(bits));
}

bool PartitionField::refines(const PartitionField& other) const {
  require_same_space(space_, other.space_);
  for (const auto& atom : atoms_) {
    const auto target = other.atom_of(atom.worlds().front());
    for (auto w : atom.worlds())
      if (other.atom_of(w) != target) return false;
  }
  return true;
}

bool operator==(const PartitionField& a, const PartitionField& b) {
  if (!same_space(a.space_, b.space_) || a.atoms_.size() != b.atoms_.size()) return false;
  return a.refines(b) && b.refines(a);
}

namespace {

// Groups worlds by a key, atoms ordered by first occurrence.
template <typename KeyFn>
PartitionField group_worlds(const SpacePtr& space, KeyFn key) {
  const auto n = space->world_count();
  std::unordered_map<std::size_t, std::size_t> slot;
  std::vector<Proposition::Bits> groups;
  for (std::size_t w = 0; w < n; ++w) {
    auto [it, inserted] = slot.try_emplace(key(w), groups.size());
    if (inserted) groups.emplace_back(n);
    groups[it->second].set(w);
  }
  std::vector<Proposition> atoms;
  atoms.reserve(groups.size());
  for (auto& g : groups) atoms.emplace_back(space, std::move(g));
  return PartitionField(space, std::move(atoms));
}

}  // namespace

PartitionField trivial_field(const SpacePtr& space) {
  return PartitionField(space, {Proposition::full(space)});
}

PartitionField full_field(const SpacePtr& space) {
  return group_worlds(space, [](std::size_t w) { return w; });
}

PartitionField subfield_of_variables(const SpacePtr& space,
                                     std::span<const std::size_t> var_indices) {
  for (auto v : var_indices)
    if (v >= space->variable_count()) throw ValidationError("variable index out of range");
  return group_worlds(space, [&](std::size_t w) {
    std::size_t key = 0;
    for (auto v : var_indices) {
      key = key * space->variables()[v].values.size() + space->value_of(w, v);
    }
    return key;
  });
}

PartitionField subfield_of_variables(const SpacePtr& space,
                                     std::span<const std::string> vars) {
  std::vector<std::size_t> indices;
  for (const auto& name : vars) {
    auto idx = space->variable_index(name);
    if (std::find(indices.begin(), indices.end(), idx) == indices.end())
      indices.push_back(idx);
  }
  std::sort(indices.begin(), indices.end());
  return subfield_of_variables(space, std::span<const std::size_t>(indices));
}

PartitionField field_of_proposition(const Proposition& a) {
  if (!a.is_contingent())
    throw ValidationError("non-contingent proposition: " + a.to_string());
  return PartitionField(a.space(), {a, ~a});
}

bool is_measurable(const Proposition& a, const PartitionField& field) {
  require_same_space(a.space(), field.space());
  for (const auto& atom : field.atoms()) {
    if (atom.intersects(a) && !atom.is_subset_of(a)) return false;
  }
  return true;
}

PartitionField common_refinement(const PartitionField& f, const PartitionField& g) {
  require_same_space(f.space(), g.space());
  const auto stride = g.atom_count();
  return group_worlds(f.space(), [&](std::size_t w) {
    return f.atom_of(w) * stride + g.atom_of(w);
  });
}

}  // namespace rankcalc
