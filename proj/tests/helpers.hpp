#pragma once

#include <random>
#include <string>
#include <vector>

#include "ecii/examples.hpp"
#include "ecii/expr.hpp"
#include "ecii/induce.hpp"
#include "ecii/io.hpp"
#include "ecii/kb.hpp"

namespace ecii::test {

/// The family fixture used across the suites: alice and bob are parents,
/// carol and dave their children; P = {alice}, N = {bob}.
inline const char* kFamKb = R"(# family fixture
concept Person
concept Male
concept Female
concept Parent
role hasChild
ind alice
ind bob
ind carol
ind dave
sub Male Person
sub Female Person
equiv Parent (some hasChild Person)
type alice Female
type bob Male
type carol Female
type dave Male
rel alice hasChild carol
rel bob hasChild dave
)";

inline const char* kFamConfig = R"(kb = fam.kb
positives = { alice }
negatives = { bob }
)";

inline KnowledgeBase fam_kb() { return parse_kb(kFamKb); }

inline ExampleSet fam_examples(const KnowledgeBase& kb) {
  return ExampleSet::from_kb(kb, {"alice"}, {"bob"});
}

/// FAM plus the moral-reasoner vocabulary, for rendering and length checks.
inline KnowledgeBase fam_kb_with_moral() {
  KnowledgeBase kb = fam_kb();
  kb.declare_concept("guilty");
  kb.declare_concept("plan_known");
  kb.declare_concept("careful");
  return kb;
}

// Deterministic draws: mt19937 output is pinned by the standard,
// uniform_int_distribution is not.
inline std::size_t draw(std::mt19937& rng, std::size_t bound) { return rng() % bound; }

struct RandomKbOptions {
  std::size_t max_concepts = 6;
  std::size_t max_roles = 2;
  std::size_t max_individuals = 12;
  std::size_t max_subsumptions = 6;
  std::size_t max_equivalences = 0;  // equivalences leave the theorem's fragment
  std::size_t max_types = 16;
  std::size_t max_relations = 10;
};

inline KnowledgeBase random_kb(std::mt19937& rng, const RandomKbOptions& opt = {}) {
  KnowledgeBase kb;
  std::size_t concepts = 1 + draw(rng, opt.max_concepts);
  std::size_t roles = opt.max_roles == 0 ? 0 : draw(rng, opt.max_roles + 1);
  std::size_t individuals = 1 + draw(rng, opt.max_individuals);
  for (std::size_t i = 0; i < concepts; ++i) kb.declare_concept("C" + std::to_string(i));
  for (std::size_t i = 0; i < roles; ++i) kb.declare_role("R" + std::to_string(i));
  for (std::size_t i = 0; i < individuals; ++i) kb.declare_individual("i" + std::to_string(i));

  auto concept_at = [&](std::size_t i) { return ConceptId{static_cast<std::uint32_t>(i + 1)}; };
  for (std::size_t i = 0, n = draw(rng, opt.max_subsumptions + 1); i < n; ++i) {
    std::size_t a = draw(rng, concepts), b = draw(rng, concepts);
    if (a != b) kb.add_subsumption(concept_at(a), concept_at(b));
  }
  for (std::size_t i = 0, n = draw(rng, opt.max_equivalences + 1); i < n && roles > 0; ++i) {
    std::size_t lhs = draw(rng, concepts);
    if (kb.definition_of(concept_at(lhs))) continue;
    ExprPtr rhs = Expr::exists(RoleId{static_cast<std::uint32_t>(draw(rng, roles))},
                               Expr::atomic(concept_at(draw(rng, concepts))));
    kb.add_equivalence(concept_at(lhs), rhs);
  }
  for (std::size_t i = 0, n = draw(rng, opt.max_types + 1); i < n; ++i)
    kb.add_type(IndividualId{static_cast<std::uint32_t>(draw(rng, individuals))},
                concept_at(draw(rng, concepts)));
  for (std::size_t i = 0, n = draw(rng, opt.max_relations + 1); i < n && roles > 0; ++i)
    kb.add_relation(IndividualId{static_cast<std::uint32_t>(draw(rng, individuals))},
                    RoleId{static_cast<std::uint32_t>(draw(rng, roles))},
                    IndividualId{static_cast<std::uint32_t>(draw(rng, individuals))});
  return kb;
}

/// Random P/N split over distinct individuals; at least one on each side.
inline ExampleSet random_examples(std::mt19937& rng, const KnowledgeBase& kb) {
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < kb.individual_count(); ++i)
    names.push_back(kb.individual_name(IndividualId{i}));
  for (std::size_t i = names.size(); i > 1; --i) std::swap(names[i - 1], names[draw(rng, i)]);
  std::size_t total = names.size() >= 2 ? 2 + draw(rng, names.size() - 1) : 2;
  if (total > names.size()) total = names.size();
  std::size_t positives = 1 + draw(rng, total - 1);
  std::vector<std::string> pos(names.begin(), names.begin() + positives);
  std::vector<std::string> neg(names.begin() + positives, names.begin() + total);
  return ExampleSet::from_kb(kb, pos, neg);
}

/// Arbitrary expression over the knowledge base, negations and disjunctions
/// included; used by canonicalization and rendering properties.
inline ExprPtr random_expr(std::mt19937& rng, const KnowledgeBase& kb, int depth) {
  auto random_atom = [&] {
    return Expr::atomic(ConceptId{static_cast<std::uint32_t>(draw(rng, kb.concept_count()))});
  };
  if (depth <= 0 || draw(rng, 3) == 0) return random_atom();
  switch (draw(rng, kb.role_count() > 0 ? 4 : 3)) {
    case 0: {
      std::vector<ExprPtr> kids;
      for (std::size_t i = 0, n = 2 + draw(rng, 2); i < n; ++i)
        kids.push_back(random_expr(rng, kb, depth - 1));
      return Expr::conj(std::move(kids), kb);
    }
    case 1: {
      std::vector<ExprPtr> kids;
      for (std::size_t i = 0, n = 2 + draw(rng, 2); i < n; ++i)
        kids.push_back(random_expr(rng, kb, depth - 1));
      return Expr::disj(std::move(kids), kb);
    }
    case 2:
      return Expr::neg(random_expr(rng, kb, depth - 1));
    default:
      return Expr::exists(RoleId{static_cast<std::uint32_t>(draw(rng, kb.role_count()))},
                          random_expr(rng, kb, depth - 1));
  }
}

/// Random Horn clause over non-Thing concepts of the knowledge base.
inline HornClause random_horn(std::mt19937& rng, const KnowledgeBase& kb) {
  std::size_t named = kb.concept_count() - 1;
  ConceptId head{static_cast<std::uint32_t>(named == 0 ? 0 : 1 + draw(rng, named))};
  std::vector<ConceptId> neg;
  for (std::size_t i = 0, n = draw(rng, 3); i < n && named > 0; ++i) {
    ConceptId d{static_cast<std::uint32_t>(1 + draw(rng, named))};
    if (d != head) neg.push_back(d);
  }
  return make_horn(head, std::move(neg));
}

/// Random solution candidate whose restrictions stay within the roles the
/// examples actually use.
inline SolutionCandidate random_candidate(std::mt19937& rng, const KnowledgeBase& kb,
                                          const FillSets& fills) {
  ConceptId top{static_cast<std::uint32_t>(draw(rng, kb.concept_count()))};
  std::vector<std::pair<RoleId, CandidateClass>> restrictions;
  for (const auto& rf : fills.roles) {
    if (draw(rng, 2) == 0) continue;
    std::vector<HornClause> clauses;
    for (std::size_t i = 0, n = 1 + draw(rng, 2); i < n; ++i)
      clauses.push_back(random_horn(rng, kb));
    restrictions.emplace_back(rf.role, make_candidate_class(std::move(clauses)));
  }
  return make_solution_candidate(top, std::move(restrictions));
}

}  // namespace ecii::test
