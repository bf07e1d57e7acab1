#include <random>

#include "doctest.h"
#include "ecii/candidates.hpp"
#include "ecii/expr.hpp"
#include "helpers.hpp"

using namespace ecii;

namespace {

KnowledgeBase abc_kb() {
  KnowledgeBase kb;
  kb.declare_concept("A");
  kb.declare_concept("B");
  kb.declare_concept("C");
  kb.declare_role("R");
  return kb;
}

}  // namespace

TEST_CASE("canonicalize sorts commutative children") {
  KnowledgeBase kb = abc_kb();
  ConceptId a = *kb.find_concept("A"), b = *kb.find_concept("B");
  ExprPtr e = Expr::conj({Expr::atomic(b), Expr::atomic(a)}, kb);
  CHECK(render_expression(e, kb) == "A and B");
}

TEST_CASE("canonicalize collapses idempotent conjunction") {
  KnowledgeBase kb = abc_kb();
  ConceptId a = *kb.find_concept("A");
  ExprPtr e = Expr::conj({Expr::atomic(a), Expr::atomic(a)}, kb);
  CHECK(e->kind == ExprKind::Atomic);
  CHECK(render_expression(e, kb) == "A");
}

TEST_CASE("canonicalize flattens nested conjunction") {
  KnowledgeBase kb = abc_kb();
  ConceptId a = *kb.find_concept("A"), b = *kb.find_concept("B"), c = *kb.find_concept("C");
  ExprPtr inner = Expr::conj({Expr::atomic(b), Expr::atomic(c)}, kb);
  ExprPtr e = Expr::conj({Expr::atomic(a), inner}, kb);
  CHECK(e->kids.size() == 3);
  CHECK(render_expression(e, kb) == "A and B and C");
}

TEST_CASE("canonicalize is idempotent on random expressions") {
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    KnowledgeBase kb = test::random_kb(rng);
    ExprPtr e = test::random_expr(rng, kb, 4);
    ExprPtr once = canonicalize(e, kb);
    ExprPtr twice = canonicalize(once, kb);
    CHECK(expr_equal(once, twice));
    CHECK(render_expression(once, kb) == render_expression(twice, kb));
  }
}

TEST_CASE("canonicalize rejects undeclared ids") {
  KnowledgeBase kb = abc_kb();
  ExprPtr bad = Expr::atomic(ConceptId{99});
  CHECK_THROWS_AS(canonicalize(bad, kb), SemanticError);
}

TEST_CASE("expression length counts atomic occurrences") {
  KnowledgeBase kb = test::fam_kb_with_moral();
  SUBCASE("single atomic") {
    CHECK(expr_length(*parse_expression("Female", kb)) == 1);
  }
  SUBCASE("disjunction of negated atomics") {
    ExprPtr e = parse_expression("(not plan_known) or (not careful) or guilty", kb);
    CHECK(expr_length(*e) == 3);
  }
  SUBCASE("roles do not count") {
    ExprPtr e = parse_expression("Person and (hasChild some Female)", kb);
    CHECK(expr_length(*e) == 2);
  }
  SUBCASE("Thing counts as one occurrence") {
    CHECK(expr_length(*parse_expression("Thing", kb)) == 1);
  }
}

TEST_CASE("rendering uses and/or/not/some with parentheses") {
  KnowledgeBase kb = test::fam_kb_with_moral();
  ConceptId person = *kb.find_concept("Person"), female = *kb.find_concept("Female");
  RoleId has_child = *kb.find_role("hasChild");
  ExprPtr e = Expr::conj({Expr::atomic(person), Expr::exists(has_child, Expr::atomic(female))}, kb);
  CHECK(render_expression(e, kb) == "Person and (hasChild some Female)");

  // disjuncts come out in canonical (lexicographic) order
  ExprPtr guilty = Expr::atomic(*kb.find_concept("guilty"));
  ExprPtr not_pk = Expr::neg(Expr::atomic(*kb.find_concept("plan_known")));
  ExprPtr not_careful = Expr::neg(Expr::atomic(*kb.find_concept("careful")));
  ExprPtr d = Expr::disj({not_pk, not_careful, guilty}, kb);
  CHECK(render_expression(d, kb) == "guilty or (not careful) or (not plan_known)");

  CHECK(render_expression(Expr::atomic(kThing), kb) == "Thing");
}

TEST_CASE("to_expression lowers candidate forms") {
  KnowledgeBase kb = test::fam_kb();
  ConceptId female = *kb.find_concept("Female"), person = *kb.find_concept("Person");
  ConceptId male = *kb.find_concept("Male");
  RoleId has_child = *kb.find_role("hasChild");

  SUBCASE("bare top") {
    SolutionCandidate s = make_solution_candidate(female, {});
    CHECK(render_expression(to_expression(s, kb), kb) == "Female");
    CHECK(expr_length(to_expression(s, kb)) == 1);
  }
  SUBCASE("empty negated disjunct elided") {
    CandidateClass cc = make_candidate_class({make_horn(female, {})});
    SolutionCandidate s = make_solution_candidate(person, {{has_child, cc}});
    CHECK(render_expression(to_expression(s, kb), kb) == "Person and (hasChild some Female)");
  }
  SUBCASE("Thing conjuncts elided") {
    CandidateClass cc = make_candidate_class({make_horn(kThing, {male})});
    SolutionCandidate s = make_solution_candidate(kThing, {{has_child, cc}});
    CHECK(render_expression(to_expression(s, kb), kb) == "hasChild some (not Male)");
  }
  SUBCASE("bare Thing stays") {
    SolutionCandidate s = make_solution_candidate(kThing, {});
    CHECK(render_expression(to_expression(s, kb), kb) == "Thing");
    CHECK(expr_length(to_expression(s, kb)) == 1);
  }
}

TEST_CASE("lowered solution candidates have length at least one") {
  std::mt19937 rng(7);
  KnowledgeBase kb = test::fam_kb();
  ExampleSet examples = test::fam_examples(kb);
  FillSets fills = compute_fill_sets(examples);
  for (int i = 0; i < 200; ++i) {
    SolutionCandidate s = test::random_candidate(rng, kb, fills);
    CHECK(expr_length(to_expression(s, kb)) >= 1);
  }
}

TEST_CASE("Horn clause construction enforces the invariants") {
  KnowledgeBase kb = test::fam_kb();
  ConceptId female = *kb.find_concept("Female"), male = *kb.find_concept("Male");
  CHECK_THROWS_AS(make_horn(female, {male, female}), SemanticError);
  CHECK_THROWS_AS(make_horn(female, {kThing}), SemanticError);
  HornClause h = make_horn(female, {male, male});
  CHECK(h.neg.size() == 1);
  CHECK(h.length() == 2);
}

TEST_CASE("star shape validation") {
  KnowledgeBase kb = test::fam_kb();
  IndividualId alice = *kb.find_individual("alice"), carol = *kb.find_individual("carol");
  IndividualId dave = *kb.find_individual("dave");
  ConceptId female = *kb.find_concept("Female");
  RoleId has_child = *kb.find_role("hasChild");

  SUBCASE("derived local ABox is valid") {
    Example ex{alice,
               {TypeAssertion{alice, female}, RoleAssertion{alice, has_child, carol},
                TypeAssertion{carol, female}}};
    CHECK(validate_star_shaped(ex).valid);
  }
  SUBCASE("an edge between fillers breaks the star") {
    Example ex{alice, {RoleAssertion{carol, has_child, dave}}};
    StarShapeReport report = validate_star_shaped(ex);
    CHECK_FALSE(report.valid);
    REQUIRE(report.offenders.size() == 1);
    CHECK(describe_statement(report.offenders.front(), kb) == "hasChild(carol,dave)");
  }
  SUBCASE("empty local ABox is vacuously valid") {
    CHECK(validate_star_shaped(Example{alice, {}}).valid);
  }
}

TEST_CASE("example sets reject shared or empty sides") {
  KnowledgeBase kb = test::fam_kb();
  CHECK_THROWS_AS(ExampleSet::from_kb(kb, {"alice"}, {"alice"}), SemanticError);
  CHECK_THROWS_AS(ExampleSet::from_kb(kb, {}, {"bob"}), SemanticError);
  CHECK_THROWS_AS(ExampleSet::from_kb(kb, {"alice"}, {}), SemanticError);
  CHECK_THROWS_AS(ExampleSet::from_kb(kb, {"alice"}, {"nobody"}), SemanticError);
}
