#include "rankcalc/revision.hpp"

#include <algorithm>

namespace rankcalc {

EvidenceNcf::EvidenceNcf(PartitionField field, std::vector<std::uint64_t> atom_ranks)
    : field_(std::move(field)), ranks_(std::move(atom_ranks)) {
  // make_ncf carries the validation.
  (void)make_ncf(field_, ranks_);
}

namespace {

// New world ranks: for each atom B of `evidence`, lambda(B) + k(w|B).
Ncf shift_parts(const Ncf& k, const PartitionField& evidence,
                std::span<const std::uint64_t> evidence_ranks) {
  require_same_space(k.space(), evidence.space());
  std::vector<std::uint64_t> base(evidence.atom_count());
  for (std::size_t i = 0; i < evidence.atom_count(); ++i)
    base[i] = rank_prop(k, evidence.atoms()[i]).value();

  auto refined = common_refinement(k.field(), evidence);
  std::vector<std::uint64_t> atom_ranks(refined.atom_count());
  for (std::size_t i = 0; i < refined.atom_count(); ++i) {
    const auto w = refined.atoms()[i].worlds().front();
    const auto b = evidence.atom_of(w);
    atom_ranks[i] = (Rank(evidence_ranks[b]) + Rank(k.rank(w) - base[b])).value();
  }
  return make_ncf(refined, atom_ranks);
}

}  // namespace

Ncf conditionalize(const Ncf& k, const Proposition& a, std::uint64_t m) {
  require_same_space(k.space(), a.space());
  if (!a.is_contingent())
    throw ValidationError("conditionalization needs a contingent proposition, got " +
                          a.to_string());
  const std::uint64_t ranks[] = {0, m};
  return shift_parts(k, PartitionField(a.space(), {a, ~a}), ranks);
}

Ncf jeffrey_conditionalize(const Ncf& k, const EvidenceNcf& lambda) {
  if (!same_space(k.space(), lambda.field().space()))
    throw ValidationError("evidence field is not over the space of the NCF");
  return shift_parts(k, lambda.field(), lambda.atom_ranks());
}

RevisionStepError::RevisionStepError(std::size_t index, const std::string& what)
    : ValidationError("revision step " + std::to_string(index + 1) + ": " + what),
      index_(index) {}

RevisionRun revision_sequence(const Ncf& k, std::span<const RevisionStep> steps) {
  RevisionRun run{k, {}};
  for (std::size_t i = 0; i < steps.size(); ++i) {
    RevisionTraceEntry entry{i, Proposition::empty(k.space()), {}};
    try {
      if (const auto* step = std::get_if<PropositionStep>(&steps[i])) {
        run.result = conditionalize(run.result, step->target, step->firmness);
        entry.targets.emplace_back(step->target, firmness(run.result, step->target));
      } else {
        const auto& lambda = std::get<EvidenceNcf>(steps[i]);
        run.result = jeffrey_conditionalize(run.result, lambda);
        for (const auto& atom : lambda.field().atoms())
          if (atom.is_contingent()) entry.targets.emplace_back(atom, firmness(run.result, atom));
      }
    } catch (const RevisionStepError&) {
      throw;
    } catch (const Error& e) {
      throw RevisionStepError(i, e.what());
    }
    entry.core = belief_core(run.result);
    run.trace.push_back(std::move(entry));
  }
  return run;
}

}  // namespace rankcalc
