#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ecii/kb.hpp"

namespace ecii {

enum class ExprKind : std::uint8_t { Atomic, Conj, Disj, Neg, Exists };

/// Class expressions as immutable trees. Conj/Disj nodes are canonical:
/// children deduplicated, flattened (no nested node of the same kind) and
/// sorted by rendered text, so structural equality coincides with semantic
/// equality up to commutativity, associativity and idempotence.
class Expr {
 public:
  ExprKind kind;
  ConceptId atom;               // Atomic
  RoleId role;                  // Exists
  std::vector<ExprPtr> kids;    // Conj/Disj: >=2, Neg/Exists: 1

  static ExprPtr atomic(ConceptId id);
  /// Canonicalizing constructors: flatten, dedupe, sort, collapse singletons.
  static ExprPtr conj(std::vector<ExprPtr> kids, const KnowledgeBase& kb);
  static ExprPtr disj(std::vector<ExprPtr> kids, const KnowledgeBase& kb);
  static ExprPtr neg(ExprPtr kid);
  static ExprPtr exists(RoleId role, ExprPtr kid);
};

bool expr_equal(const Expr& a, const Expr& b);
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) { return expr_equal(*a, *b); }

/// Rebuilds the tree bottom-up through the canonicalizing constructors.
/// Idempotent. Throws SemanticError on ids outside the knowledge base.
ExprPtr canonicalize(const ExprPtr& e, const KnowledgeBase& kb);

/// Number of atomic-concept occurrences; Thing counts as one, roles and
/// connectives count as zero.
int expr_length(const Expr& e);
inline int expr_length(const ExprPtr& e) { return expr_length(*e); }

/// Human-readable surface syntax: `and` / `or` / `not` / `R some C`, with
/// every non-atomic subexpression parenthesized. Doubles as the canonical
/// serialization used for ordering and deduplication.
std::string render_expression(const Expr& e, const KnowledgeBase& kb);
inline std::string render_expression(const ExprPtr& e, const KnowledgeBase& kb) {
  return render_expression(*e, kb);
}

/// Counts toward the n1 bound of the enrichment grammar: a flattened
/// conjunction of k children stands for k-1 binary conjunctions.
int count_conj_occurrences(const Expr& e);
int count_exists_occurrences(const Expr& e);

/// True if e uses only atomics, conjunction and existential restriction
/// (the fragment allowed on equivalence right-hand sides).
bool within_definition_grammar(const Expr& e);

/// Replaces enrichment-introduced atomics by their definitions and
/// re-canonicalizes; expressions over declared names pass through unchanged.
ExprPtr expand_fresh(const ExprPtr& e, const KnowledgeBase& kb);

}  // namespace ecii
