#pragma once

#include <map>
#include <optional>
#include <set>

#include "ecii/candidates.hpp"
#include "ecii/examples.hpp"
#include "ecii/expr.hpp"
#include "ecii/kb.hpp"
#include "ecii/report.hpp"

namespace ecii {

/// Desk-scale reference semantics: the least model of the knowledge base
/// over all individuals, built with plain sets and per-individual structural
/// evaluation. Deliberately shares no machinery with the bitset engine it
/// cross-checks. Negation reads as absence in the least model; under
/// open-world entailment negated facts would almost never follow and the
/// exact accuracy would be degenerate.
class CanonicalModel {
 public:
  explicit CanonicalModel(const KnowledgeBase& kb);

  bool member(IndividualId ind, ConceptId cls) const;

  /// Structural evaluation of an arbitrary expression at an individual:
  /// conjunction/disjunction/negation over memberships, ∃R.C over the
  /// knowledge base's named role successors.
  bool holds(const Expr& e, IndividualId ind) const;

 private:
  const KnowledgeBase& kb_;
  std::map<IndividualId, std::set<ConceptId>> member_;
  std::map<std::pair<IndividualId, RoleId>, std::set<IndividualId>> successors_;
};

/// O ⊨ expr(a) under the canonical-model reading.
bool entails_instance(const KnowledgeBase& kb, const Expr& expr, IndividualId a);

/// (|P_S| + |N_S|) / |P ∪ N| with P_S the covered positives and N_S the
/// uncovered negatives, evaluated by the reference semantics.
Accuracy alpha3(const Expr& expr, const ExampleSet& examples, const KnowledgeBase& kb);

struct TheoremVerdict {
  bool extension_check = false;  // P ⊆ ↓S and N ∩ ↓S = ∅, set-theoretic path
  bool oracle_check = false;     // solution per the reference semantics
  bool agree = false;
  std::optional<IndividualId> counterexample;  // first example whose membership differs
};

/// Runs both the extension-based approximate check and the oracle check for
/// one solution candidate and reports whether they agree.
TheoremVerdict check_theorem(const KnowledgeBase& kb, const SolutionCandidate& candidate,
                             const ExampleSet& examples);

}  // namespace ecii
