#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ecii/expr.hpp"
#include "ecii/kb.hpp"

namespace ecii {

/// The grammar C ::= B | C1 ⊓ C2 | ∃R.C explodes combinatorially; enrichment
/// size is a user-controlled runtime knob, so generation is capped and
/// truncated deterministically by (length, lexicographic).
inline constexpr std::size_t kDefaultEnumerationCap = 10000;

struct EnumerationResult {
  std::vector<ExprPtr> exprs;  // canonical, ordered by (length, rendered text)
  bool truncated = false;
};

/// All canonical expressions of the grammar over the declared (non-fresh,
/// non-Thing) atomics and roles, with at most n1 conjunction and n2
/// existential occurrences. Bare atomics are excluded: a fresh name defined
/// as a single atomic adds nothing.
EnumerationResult enumerate_expressions(const KnowledgeBase& kb, int n1, int n2,
                                        std::size_t cap = kDefaultEnumerationCap);

/// O' = O ∪ { A_i ≡ C_i } with deterministic fresh names _ECII_<i> in
/// enumeration order; suffix-disambiguated on collision with a declared name.
/// The input knowledge base is left untouched.
KnowledgeBase enrich_kb(const KnowledgeBase& kb, std::span<const ExprPtr> exprs,
                        std::vector<std::string>* warnings = nullptr);

}  // namespace ecii
