#include <random>
#include <set>

#include "doctest.h"
#include "ecii/enrich.hpp"
#include "ecii/io.hpp"
#include "helpers.hpp"

using namespace ecii;

namespace {

KnowledgeBase small_kb(std::size_t atoms, std::size_t roles) {
  KnowledgeBase kb;
  for (std::size_t i = 0; i < atoms; ++i) kb.declare_concept(std::string(1, char('A' + i)));
  for (std::size_t i = 0; i < roles; ++i) kb.declare_role(std::string(1, char('R' + i)));
  return kb;
}

/// Independent generate-all-then-filter oracle: apply the grammar
/// productions exhaustively within the budgets, canonicalize every raw tree,
/// count distinct renders. No dedup shortcuts during generation.
std::set<std::string> brute_force_grammar(const KnowledgeBase& kb, int n1, int n2) {
  std::vector<ExprPtr> atoms;
  for (std::uint32_t c = 0; c < kb.concept_count(); ++c)
    if (ConceptId id{c}; id != kThing) atoms.push_back(Expr::atomic(id));

  struct Raw {
    ExprPtr e;
    int conjs, exists;
  };
  std::vector<Raw> all;
  for (const auto& a : atoms) all.push_back({a, 0, 0});

  // grow until no production adds a new tree shape
  bool grew = true;
  std::set<std::string> seen;
  auto note = [&](const Raw& r) { return seen.insert(render_expression(r.e, kb) + "|" +
                                                     std::to_string(r.conjs) + "|" +
                                                     std::to_string(r.exists)).second; };
  for (auto& r : all) note(r);
  while (grew) {
    grew = false;
    std::vector<Raw> next;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::uint32_t role = 0; role < kb.role_count(); ++role) {
        if (all[i].exists + 1 > n2) continue;
        Raw r{Expr::exists(RoleId{role}, all[i].e), all[i].conjs, all[i].exists + 1};
        if (note(r)) next.push_back(r);
      }
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (all[i].conjs + all[j].conjs + 1 > n1) continue;
        if (all[i].exists + all[j].exists > n2) continue;
        Raw r{Expr::conj({all[i].e, all[j].e}, kb), all[i].conjs + all[j].conjs + 1,
              all[i].exists + all[j].exists};
        if (note(r)) next.push_back(r);
      }
    }
    if (!next.empty()) {
      grew = true;
      all.insert(all.end(), next.begin(), next.end());
    }
  }

  std::set<std::string> out;
  for (const auto& r : all)
    if (r.e->kind != ExprKind::Atomic) out.insert(render_expression(r.e, kb));
  return out;
}

}  // namespace

TEST_CASE("one atom, one role, exists budget only") {
  KnowledgeBase kb = small_kb(1, 1);
  auto result = enumerate_expressions(kb, 0, 1);
  REQUIRE(result.exprs.size() == 1);
  CHECK(render_expression(result.exprs[0], kb) == "R some A");
  CHECK_FALSE(result.truncated);
}

TEST_CASE("two atoms, no roles, one conjunction") {
  KnowledgeBase kb = small_kb(2, 0);
  auto result = enumerate_expressions(kb, 1, 0);
  REQUIRE(result.exprs.size() == 1);
  CHECK(render_expression(result.exprs[0], kb) == "A and B");
}

TEST_CASE("zero budgets generate nothing") {
  KnowledgeBase kb = small_kb(3, 2);
  CHECK(enumerate_expressions(kb, 0, 0).exprs.empty());
}

TEST_CASE("every generated expression respects both budgets") {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    KnowledgeBase kb = small_kb(1 + test::draw(rng, 3), test::draw(rng, 3));
    int n1 = static_cast<int>(test::draw(rng, 3));
    int n2 = static_cast<int>(test::draw(rng, 3));
    for (const auto& e : enumerate_expressions(kb, n1, n2).exprs) {
      CHECK(count_conj_occurrences(*e) <= n1);
      CHECK(count_exists_occurrences(*e) <= n2);
      CHECK(e->kind != ExprKind::Atomic);
    }
  }
}

TEST_CASE("no two generated expressions are equal after canonicalization") {
  KnowledgeBase kb = small_kb(3, 2);
  auto result = enumerate_expressions(kb, 2, 2);
  std::set<std::string> seen;
  for (const auto& e : result.exprs) CHECK(seen.insert(render_expression(e, kb)).second);
}

TEST_CASE("enumeration counts match the brute-force grammar oracle") {
  for (auto [atoms, roles] : {std::pair<std::size_t, std::size_t>{2, 1}, {3, 2}, {4, 1}}) {
    KnowledgeBase kb = small_kb(atoms, roles);
    auto result = enumerate_expressions(kb, 1, 1);
    REQUIRE_FALSE(result.truncated);
    auto oracle = brute_force_grammar(kb, 1, 1);
    CHECK(result.exprs.size() == oracle.size());
    for (const auto& e : result.exprs) CHECK(oracle.contains(render_expression(e, kb)));
  }
}

TEST_CASE("enumeration matches the oracle across asymmetric budgets") {
  for (auto [n1, n2] : {std::pair<int, int>{2, 1}, {1, 2}, {2, 0}, {0, 2}, {2, 2}}) {
    KnowledgeBase kb = small_kb(2, 1);
    auto result = enumerate_expressions(kb, n1, n2);
    REQUIRE_FALSE(result.truncated);
    auto oracle = brute_force_grammar(kb, n1, n2);
    CHECK(result.exprs.size() == oracle.size());
    for (const auto& e : result.exprs) CHECK(oracle.contains(render_expression(e, kb)));
  }
}

TEST_CASE("enumeration order is (length, lexicographic) and truncation is deterministic") {
  KnowledgeBase kb = small_kb(3, 1);
  auto full = enumerate_expressions(kb, 2, 1);
  for (std::size_t i = 1; i < full.exprs.size(); ++i) {
    int la = expr_length(full.exprs[i - 1]), lb = expr_length(full.exprs[i]);
    CHECK(la <= lb);
    if (la == lb)
      CHECK(render_expression(full.exprs[i - 1], kb) < render_expression(full.exprs[i], kb));
  }
  auto capped = enumerate_expressions(kb, 2, 1, 4);
  CHECK(capped.truncated);
  REQUIRE(capped.exprs.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(render_expression(capped.exprs[i], kb) == render_expression(full.exprs[i], kb));
}

TEST_CASE("enrichment appends deterministic fresh equivalences") {
  KnowledgeBase kb = test::fam_kb();
  ExprPtr expr = parse_expression("hasChild some Female", kb);
  KnowledgeBase enriched = enrich_kb(kb, std::vector<ExprPtr>{expr});
  CHECK(kb.concept_count() == 5);  // input untouched
  CHECK(enriched.concept_count() == 6);
  ConceptId fresh = *enriched.find_concept("_ECII_0");
  CHECK(enriched.is_fresh(fresh));
  const EquivAxiom* def = enriched.definition_of(fresh);
  REQUIRE(def != nullptr);
  CHECK(render_expression(def->rhs, enriched) == "hasChild some Female");

  KnowledgeBase again = enrich_kb(kb, std::vector<ExprPtr>{expr});
  CHECK(kb_structurally_equal(enriched, again));
}

TEST_CASE("enriching with nothing is a no-op") {
  KnowledgeBase kb = test::fam_kb();
  KnowledgeBase enriched = enrich_kb(kb, {});
  CHECK(kb_structurally_equal(kb, enriched));
}

TEST_CASE("fresh-name collisions are disambiguated with a warning") {
  KnowledgeBase kb = test::fam_kb();
  kb.declare_concept("_ECII_0");
  ExprPtr expr = parse_expression("hasChild some Female", kb);
  std::vector<std::string> warnings;
  KnowledgeBase enriched = enrich_kb(kb, std::vector<ExprPtr>{expr}, &warnings);
  CHECK(enriched.find_concept("_ECII_0_x").has_value());
  CHECK(warnings.size() == 1);
}
