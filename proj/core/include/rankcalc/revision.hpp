#pragma once

// Belief change: A,m-conditionalization and its Jeffrey-style
// generalization to evidence given as an NCF over a field.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "rankcalc/error.hpp"
#include "rankcalc/ncf.hpp"

namespace rankcalc {

// Ranks for the atoms of an evidence field, minimum 0.
class EvidenceNcf {
 public:
  // Throws ValidationError / NormalizationError like make_ncf.
  EvidenceNcf(PartitionField field, std::vector<std::uint64_t> atom_ranks);

  const PartitionField& field() const { return field_; }
  std::span<const std::uint64_t> atom_ranks() const { return ranks_; }
  std::uint64_t rank_of_atom(std::size_t i) const { return ranks_[i]; }

 private:
  PartitionField field_;
  std::vector<std::uint64_t> ranks_;
};

// Shifts the -A part to rank m while both parts keep their internal grading.
// A must be contingent. The result is measurable w.r.t. the common
// refinement of k's field and {A, -A}.
Ncf conditionalize(const Ncf& k, const Proposition& a, std::uint64_t m);

// Every atom B of the evidence field gets rank lambda(B); the B-parts are kept.
Ncf jeffrey_conditionalize(const Ncf& k, const EvidenceNcf& lambda);

struct PropositionStep {
  Proposition target;
  std::uint64_t firmness;
};

using RevisionStep = std::variant<PropositionStep, EvidenceNcf>;

struct RevisionTraceEntry {
  std::size_t index;  // 0-based
  Proposition core;
  // Firmness of the step target, or of each contingent evidence atom.
  std::vector<std::pair<Proposition, Firmness>> targets;
};

struct RevisionRun {
  Ncf result;
  std::vector<RevisionTraceEntry> trace;
};

class RevisionStepError : public ValidationError {
 public:
  RevisionStepError(std::size_t index, const std::string& what);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Left fold of the steps. The first invalid step throws RevisionStepError.
RevisionRun revision_sequence(const Ncf& k, std::span<const RevisionStep> steps);

}  // namespace rankcalc
