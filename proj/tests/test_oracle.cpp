#include <random>

#include "doctest.h"
#include "ecii/oracle.hpp"
#include "helpers.hpp"

using namespace ecii;

TEST_CASE("instance entailment on the family fixture") {
  KnowledgeBase kb = test::fam_kb();
  IndividualId alice = *kb.find_individual("alice");
  CHECK(entails_instance(kb, *parse_expression("Parent", kb), alice));
  CHECK(entails_instance(kb, *parse_expression("not Male", kb), alice));
  CHECK(entails_instance(kb, *parse_expression("Thing", kb), alice));
  CHECK(entails_instance(kb, *parse_expression("Thing", kb), *kb.find_individual("dave")));
  CHECK_FALSE(entails_instance(kb, *parse_expression("Male", kb), alice));
}

TEST_CASE("alpha3 fixtures") {
  KnowledgeBase kb = test::fam_kb();
  ExampleSet examples = test::fam_examples(kb);
  CHECK(alpha3(*parse_expression("Female", kb), examples, kb) == Accuracy{2, 2});
  CHECK(alpha3(*parse_expression("Thing", kb), examples, kb) == Accuracy{1, 2});
  CHECK(alpha3(*parse_expression("Person and (hasChild some Female)", kb), examples, kb) ==
        Accuracy{2, 2});
}

TEST_CASE("theorem check agrees on the family fixture") {
  KnowledgeBase kb = test::fam_kb();
  ExampleSet examples = test::fam_examples(kb);
  RoleId has_child = *kb.find_role("hasChild");
  ConceptId person = *kb.find_concept("Person"), female = *kb.find_concept("Female");
  ConceptId male = *kb.find_concept("Male");

  SolutionCandidate good = make_solution_candidate(
      person, {{has_child, make_candidate_class({make_horn(female, {})})}});
  TheoremVerdict v = check_theorem(kb, good, examples);
  CHECK(v.agree);
  CHECK(v.extension_check);
  CHECK(v.oracle_check);

  SolutionCandidate bad = make_solution_candidate(male, {});
  TheoremVerdict w = check_theorem(kb, bad, examples);
  CHECK(w.agree);
  CHECK_FALSE(w.extension_check);
  CHECK_FALSE(w.oracle_check);
}

TEST_CASE("extension and oracle checks agree on atomic-hierarchy knowledge bases") {
  std::mt19937 rng(41);
  int checked = 0;
  while (checked < 300) {
    KnowledgeBase kb = test::random_kb(rng);  // subsumptions only
    if (kb.individual_count() < 2) continue;
    ExampleSet examples = test::random_examples(rng, kb);
    FillSets fills = compute_fill_sets(examples);
    for (int i = 0; i < 3; ++i) {
      SolutionCandidate s = test::random_candidate(rng, kb, fills);
      TheoremVerdict v = check_theorem(kb, s, examples);
      CHECK(v.agree);
      if (!v.agree && v.counterexample)
        MESSAGE("counterexample: " << kb.individual_name(*v.counterexample));
      ++checked;
    }
  }
}

TEST_CASE("alpha3 equals alpha2 on atomic-hierarchy knowledge bases") {
  std::mt19937 rng(43);
  int checked = 0;
  while (checked < 150) {
    KnowledgeBase kb = test::random_kb(rng);
    if (kb.individual_count() < 2) continue;
    ExampleSet examples = test::random_examples(rng, kb);
    InvocationCounter counter;
    Materialization m = materialize(kb, examples.mentioned_individuals(), counter);
    FillSets fills = compute_fill_sets(examples);
    for (int i = 0; i < 3; ++i) {
      SolutionCandidate s = test::random_candidate(rng, kb, fills);
      Accuracy a2 = alpha2(s, examples, m, fills);
      Accuracy a3 = alpha3(*to_expression(s, kb), examples, kb);
      CHECK(a2 == a3);
      ++checked;
    }
  }
}

TEST_CASE("entailment is monotone in ABox additions for negation-free expressions") {
  std::mt19937 rng(47);
  int checked = 0;
  while (checked < 100) {
    test::RandomKbOptions opt;
    opt.max_equivalences = 2;
    KnowledgeBase kb = test::random_kb(rng, opt);
    if (kb.individual_count() < 1) continue;

    // negation-free random expression: conj/disj/exists over atomics
    std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
      auto atom = [&] {
        return Expr::atomic(ConceptId{static_cast<std::uint32_t>(
            test::draw(rng, kb.concept_count()))});
      };
      if (depth <= 0 || test::draw(rng, 3) == 0) return atom();
      switch (test::draw(rng, kb.role_count() > 0 ? 3 : 2)) {
        case 0:
          return Expr::conj({gen(depth - 1), gen(depth - 1)}, kb);
        case 1:
          return Expr::disj({gen(depth - 1), gen(depth - 1)}, kb);
        default:
          return Expr::exists(RoleId{static_cast<std::uint32_t>(test::draw(rng, kb.role_count()))},
                              gen(depth - 1));
      }
    };
    ExprPtr e = gen(3);

    KnowledgeBase grown = kb;
    if (test::draw(rng, 2) == 0 || grown.role_count() == 0) {
      grown.add_type(
          IndividualId{static_cast<std::uint32_t>(test::draw(rng, grown.individual_count()))},
          ConceptId{static_cast<std::uint32_t>(test::draw(rng, grown.concept_count()))});
    } else {
      grown.add_relation(
          IndividualId{static_cast<std::uint32_t>(test::draw(rng, grown.individual_count()))},
          RoleId{static_cast<std::uint32_t>(test::draw(rng, grown.role_count()))},
          IndividualId{static_cast<std::uint32_t>(test::draw(rng, grown.individual_count()))});
    }

    CanonicalModel before(kb), after(grown);
    for (std::uint32_t i = 0; i < kb.individual_count(); ++i) {
      if (before.holds(*e, IndividualId{i})) CHECK(after.holds(*e, IndividualId{i}));
    }
    ++checked;
  }
}
