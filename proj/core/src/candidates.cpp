#include "ecii/candidates.hpp"

#include <algorithm>

namespace ecii {

HornClause make_horn(ConceptId head, std::vector<ConceptId> neg) {
  std::sort(neg.begin(), neg.end());
  neg.erase(std::unique(neg.begin(), neg.end()), neg.end());
  // B ⊓ ¬(… ⊔ B ⊔ …) is unsatisfiable; Thing inside a negated disjunct
  // empties the clause the same way.
  if (std::binary_search(neg.begin(), neg.end(), head))
    throw SemanticError("Horn clause head recurs in its negated disjunct");
  if (std::binary_search(neg.begin(), neg.end(), kThing))
    throw SemanticError("Thing may not appear in a negated disjunct");
  return HornClause{head, std::move(neg)};
}

int CandidateClass::length() const {
  int n = 0;
  for (const auto& h : clauses) n += h.length();
  return n;
}

CandidateClass make_candidate_class(std::vector<HornClause> clauses) {
  if (clauses.empty()) throw SemanticError("candidate class needs at least one clause");
  std::sort(clauses.begin(), clauses.end());
  clauses.erase(std::unique(clauses.begin(), clauses.end()), clauses.end());
  return CandidateClass{std::move(clauses)};
}

SolutionCandidate make_solution_candidate(
    ConceptId top, std::vector<std::pair<RoleId, CandidateClass>> restrictions) {
  std::sort(restrictions.begin(), restrictions.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < restrictions.size(); ++i)
    if (restrictions[i].first == restrictions[i - 1].first)
      throw SemanticError("solution candidate repeats a role");
  return SolutionCandidate{top, std::move(restrictions)};
}

ExprPtr to_expression(const HornClause& h, const KnowledgeBase& kb) {
  ExprPtr negated;
  if (!h.neg.empty()) {
    std::vector<ExprPtr> ds;
    ds.reserve(h.neg.size());
    for (ConceptId d : h.neg) ds.push_back(Expr::atomic(d));
    negated = Expr::neg(Expr::disj(std::move(ds), kb));
  }
  if (!negated) return Expr::atomic(h.head);
  if (h.head == kThing) return negated;  // Thing conjunct elided
  return Expr::conj({Expr::atomic(h.head), std::move(negated)}, kb);
}

ExprPtr to_expression(const CandidateClass& c, const KnowledgeBase& kb) {
  std::vector<ExprPtr> parts;
  parts.reserve(c.clauses.size());
  for (const auto& h : c.clauses) parts.push_back(to_expression(h, kb));
  return Expr::disj(std::move(parts), kb);
}

ExprPtr to_expression(const SolutionCandidate& s, const KnowledgeBase& kb) {
  std::vector<ExprPtr> parts;
  if (s.top != kThing || s.restrictions.empty()) parts.push_back(Expr::atomic(s.top));
  for (const auto& [role, cls] : s.restrictions)
    parts.push_back(Expr::exists(role, to_expression(cls, kb)));
  if (parts.size() == 1) return canonicalize(parts.front(), kb);
  return Expr::conj(std::move(parts), kb);
}

}  // namespace ecii
