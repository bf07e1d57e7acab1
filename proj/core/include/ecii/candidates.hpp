#pragma once

#include <vector>

#include "ecii/expr.hpp"
#include "ecii/kb.hpp"

namespace ecii {

/// B ⊓ ¬(D₁ ⊔ … ⊔ D_k). The negated disjunct may be empty, in which case the
/// clause is the bare head; the head never recurs among the negated atoms.
struct HornClause {
  ConceptId head;
  std::vector<ConceptId> neg;  // sorted by id, deduplicated, head excluded

  int length() const { return 1 + static_cast<int>(neg.size()); }
  friend auto operator<=>(const HornClause&, const HornClause&) = default;
};

HornClause make_horn(ConceptId head, std::vector<ConceptId> neg);

/// Disjunction of Horn clauses.
struct CandidateClass {
  std::vector<HornClause> clauses;  // sorted, deduplicated, nonempty

  int length() const;
  friend auto operator<=>(const CandidateClass&, const CandidateClass&) = default;
};

CandidateClass make_candidate_class(std::vector<HornClause> clauses);

/// A ⊓ ⊓ᵢ ∃Rᵢ.Cᵢ with candidate classes Cᵢ and pairwise distinct roles.
/// No restrictions and top alone is allowed; top may be Thing.
struct SolutionCandidate {
  ConceptId top;
  std::vector<std::pair<RoleId, CandidateClass>> restrictions;  // sorted by role

  friend auto operator<=>(const SolutionCandidate&, const SolutionCandidate&) = default;
};

SolutionCandidate make_solution_candidate(ConceptId top,
                                          std::vector<std::pair<RoleId, CandidateClass>> restrictions);

/// Lowering into the expression algebra. Thing conjuncts and empty negated
/// disjuncts are elided; the result is canonical.
ExprPtr to_expression(const HornClause& h, const KnowledgeBase& kb);
ExprPtr to_expression(const CandidateClass& c, const KnowledgeBase& kb);
ExprPtr to_expression(const SolutionCandidate& s, const KnowledgeBase& kb);

}  // namespace ecii
