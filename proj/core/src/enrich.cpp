#include "ecii/enrich.hpp"

#include <algorithm>
#include <string>

namespace ecii {

namespace {

struct Item {
  ExprPtr expr;
  int atoms;
  int conjs;
  int exists;
  std::string text;
};

/// Wrap wave members in ∃R.· until the n2 budget is exhausted. Atom count is
/// unchanged by wrapping, so the results stay in the same wave.
void close_under_exists(std::vector<Item>& wave, const KnowledgeBase& kb, int n2) {
  for (std::size_t i = 0; i < wave.size(); ++i) {
    if (wave[i].exists >= n2) continue;
    for (std::uint32_t r = 0; r < kb.role_count(); ++r) {
      ExprPtr wrapped = Expr::exists(RoleId{r}, wave[i].expr);
      wave.push_back({wrapped, wave[i].atoms, wave[i].conjs, wave[i].exists + 1,
                      render_expression(*wrapped, kb)});
    }
  }
}

/// Conjunction children are non-Conj blocks from strictly smaller waves;
/// distinct child sets yield distinct canonical conjunctions, so no dedup
/// pass is required.
void assemble_conjunctions(const std::vector<Item>& blocks, std::size_t first, int remaining_atoms,
                           int used_conjs, int used_exists, std::vector<ExprPtr>& picked,
                           const KnowledgeBase& kb, int n1, int n2, std::vector<Item>& out) {
  if (remaining_atoms == 0) {
    if (picked.size() >= 2) {
      ExprPtr e = Expr::conj(std::vector<ExprPtr>(picked), kb);
      out.push_back({e, expr_length(*e), used_conjs + static_cast<int>(picked.size()) - 1,
                     used_exists, render_expression(*e, kb)});
    }
    return;
  }
  for (std::size_t i = first; i < blocks.size(); ++i) {
    const Item& b = blocks[i];
    if (b.atoms > remaining_atoms) continue;
    int conjs = used_conjs + b.conjs;
    int exists = used_exists + b.exists;
    // the (k-1) connective cost is accounted at emission; bound children here
    if (conjs + static_cast<int>(picked.size()) > n1 || exists > n2) continue;
    picked.push_back(b.expr);
    assemble_conjunctions(blocks, i + 1, remaining_atoms - b.atoms, conjs, exists, picked, kb, n1,
                          n2, out);
    picked.pop_back();
  }
}

}  // namespace

EnumerationResult enumerate_expressions(const KnowledgeBase& kb, int n1, int n2, std::size_t cap) {
  EnumerationResult result;
  if (n1 < 0 || n2 < 0) throw SemanticError("n1 and n2 must be non-negative");

  std::vector<ConceptId> atoms;
  for (std::uint32_t c = 0; c < kb.concept_count(); ++c) {
    ConceptId id{c};
    if (id == kThing || kb.is_fresh(id)) continue;
    atoms.push_back(id);
  }

  const int max_atoms = n1 + 1;  // every conjunction adds one leaf beyond the first
  std::vector<Item> blocks;      // non-Conj members of completed waves, for assembly

  for (int length = 1; length <= max_atoms; ++length) {
    std::vector<Item> wave;
    if (length == 1) {
      for (ConceptId a : atoms) {
        ExprPtr e = Expr::atomic(a);
        wave.push_back({e, 1, 0, 0, render_expression(*e, kb)});
      }
    } else {
      std::vector<ExprPtr> picked;
      assemble_conjunctions(blocks, 0, length, 0, 0, picked, kb, n1, n2, wave);
    }
    close_under_exists(wave, kb, n2);

    std::sort(wave.begin(), wave.end(),
              [](const Item& a, const Item& b) { return a.text < b.text; });

    for (const Item& item : wave) {
      if (item.expr->kind != ExprKind::Conj) blocks.push_back(item);
      if (item.expr->kind == ExprKind::Atomic) continue;  // bare atomics add nothing
      if (result.exprs.size() >= cap) {
        result.truncated = true;
        return result;
      }
      result.exprs.push_back(item.expr);
    }
  }
  return result;
}

KnowledgeBase enrich_kb(const KnowledgeBase& kb, std::span<const ExprPtr> exprs,
                        std::vector<std::string>* warnings) {
  KnowledgeBase out = kb;
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    std::string name = "_ECII_" + std::to_string(i);
    while (out.find_concept(name)) {
      if (warnings)
        warnings->push_back("fresh name " + name + " collides with a declared concept");
      name += "_x";
    }
    ConceptId id = out.declare_concept(name, /*fresh=*/true);
    out.add_equivalence(id, exprs[i]);
  }
  return out;
}

}  // namespace ecii
