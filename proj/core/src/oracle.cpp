#include "ecii/oracle.hpp"

#include "ecii/induce.hpp"

namespace ecii {

namespace {

/// Definition bodies during model construction: and/some over atomics.
bool eval_definition_at(const Expr& e, IndividualId ind,
                        const std::map<IndividualId, std::set<ConceptId>>& member,
                        const std::map<std::pair<IndividualId, RoleId>, std::set<IndividualId>>&
                            successors) {
  switch (e.kind) {
    case ExprKind::Atomic: {
      auto it = member.find(ind);
      return it != member.end() && it->second.contains(e.atom);
    }
    case ExprKind::Conj:
      for (const auto& k : e.kids)
        if (!eval_definition_at(*k, ind, member, successors)) return false;
      return true;
    case ExprKind::Exists: {
      auto it = successors.find({ind, e.role});
      if (it == successors.end()) return false;
      for (IndividualId b : it->second)
        if (eval_definition_at(*e.kids.front(), b, member, successors)) return true;
      return false;
    }
    default:
      throw SemanticError("definition outside the and/some fragment");
  }
}

}  // namespace

CanonicalModel::CanonicalModel(const KnowledgeBase& kb) : kb_(kb) {
  for (std::uint32_t i = 0; i < kb.individual_count(); ++i) {
    IndividualId ind{i};
    member_[ind].insert(kThing);
  }
  for (const auto& t : kb.type_assertions()) member_[t.ind].insert(t.cls);
  for (const auto& r : kb.role_assertions()) successors_[{r.subject, r.role}].insert(r.object);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& ax : kb.subsumptions()) {
      for (auto& [ind, types] : member_) {
        if (types.contains(ax.sub) && types.insert(ax.sup).second) changed = true;
      }
    }
    for (const auto& ax : kb.equivalences()) {
      for (auto& [ind, types] : member_) {
        if (types.contains(ax.lhs)) continue;
        if (eval_definition_at(*ax.rhs, ind, member_, successors_)) {
          types.insert(ax.lhs);
          changed = true;
        }
      }
    }
  }
}

bool CanonicalModel::member(IndividualId ind, ConceptId cls) const {
  auto it = member_.find(ind);
  return it != member_.end() && it->second.contains(cls);
}

bool CanonicalModel::holds(const Expr& e, IndividualId ind) const {
  switch (e.kind) {
    case ExprKind::Atomic:
      return member(ind, e.atom);
    case ExprKind::Conj:
      for (const auto& k : e.kids)
        if (!holds(*k, ind)) return false;
      return true;
    case ExprKind::Disj:
      for (const auto& k : e.kids)
        if (holds(*k, ind)) return true;
      return false;
    case ExprKind::Neg:
      return !holds(*e.kids.front(), ind);
    case ExprKind::Exists: {
      auto it = successors_.find({ind, e.role});
      if (it == successors_.end()) return false;
      for (IndividualId b : it->second)
        if (holds(*e.kids.front(), b)) return true;
      return false;
    }
  }
  throw SemanticError("unknown expression kind");
}

bool entails_instance(const KnowledgeBase& kb, const Expr& expr, IndividualId a) {
  kb.check_individual(a);
  return CanonicalModel(kb).holds(expr, a);
}

Accuracy alpha3(const Expr& expr, const ExampleSet& examples, const KnowledgeBase& kb) {
  CanonicalModel model(kb);
  std::int64_t covered_pos = 0, uncovered_neg = 0;
  for (const auto& ex : examples.positives())
    if (model.holds(expr, ex.individual)) ++covered_pos;
  for (const auto& ex : examples.negatives())
    if (!model.holds(expr, ex.individual)) ++uncovered_neg;
  std::int64_t den = static_cast<std::int64_t>(examples.positives().size()) +
                     static_cast<std::int64_t>(examples.negatives().size());
  return Accuracy{covered_pos + uncovered_neg, den};
}

TheoremVerdict check_theorem(const KnowledgeBase& kb, const SolutionCandidate& candidate,
                             const ExampleSet& examples) {
  TheoremVerdict verdict;

  // extension path, exactly as the engine computes it
  InvocationCounter counter;
  auto relevant = examples.mentioned_individuals();
  Materialization m = materialize(kb, relevant, counter);
  FillSets fills = compute_fill_sets(examples);
  DynamicBitset down = extension_solution(candidate, m, fills);

  // reference path
  CanonicalModel model(kb);
  ExprPtr expr = to_expression(candidate, kb);

  bool ext_ok = true, oracle_ok = true;
  for (const auto& ex : examples.positives()) {
    bool in_ext = m.index_of(ex.individual) && down.test(*m.index_of(ex.individual));
    bool in_oracle = model.holds(*expr, ex.individual);
    if (in_ext != in_oracle && !verdict.counterexample) verdict.counterexample = ex.individual;
    ext_ok = ext_ok && in_ext;
    oracle_ok = oracle_ok && in_oracle;
  }
  for (const auto& ex : examples.negatives()) {
    bool in_ext = m.index_of(ex.individual) && down.test(*m.index_of(ex.individual));
    bool in_oracle = model.holds(*expr, ex.individual);
    if (in_ext != in_oracle && !verdict.counterexample) verdict.counterexample = ex.individual;
    ext_ok = ext_ok && !in_ext;
    oracle_ok = oracle_ok && !in_oracle;
  }

  verdict.extension_check = ext_ok;
  verdict.oracle_check = oracle_ok;
  verdict.agree = ext_ok == oracle_ok;
  if (verdict.agree) verdict.counterexample.reset();
  return verdict;
}

}  // namespace ecii
