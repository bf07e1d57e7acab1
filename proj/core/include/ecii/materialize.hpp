#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ecii/bitset.hpp"
#include "ecii/expr.hpp"
#include "ecii/kb.hpp"

namespace ecii {

/// Counts reasoner uses. One induction run performs exactly one
/// materialization, computed or loaded; every run reports the final count.
struct InvocationCounter {
  int count = 0;
};

/// The per-run membership table: for every covered individual its atomic
/// concepts, and for every atomic concept its extension ↓B as a bitset over
/// a dense individual index. Immutable once built and safe to share.
class Materialization {
 public:
  std::size_t individual_count() const { return index_to_ind_.size(); }
  IndividualId individual_at(std::size_t index) const { return index_to_ind_[index]; }
  std::optional<std::size_t> index_of(IndividualId ind) const;
  bool covers(IndividualId ind) const { return index_of(ind).has_value(); }

  /// ↓B. O(1); throws SemanticError for ids outside the knowledge base
  /// this table was built from.
  const DynamicBitset& extension(ConceptId b) const;
  std::size_t concept_count() const { return extensions_.size(); }

  /// Atomic concepts of one individual, sorted by id.
  std::span<const ConceptId> types(IndividualId ind) const;

  bool member(IndividualId ind, ConceptId b) const;

  std::vector<IndividualId> extension_individuals(ConceptId b) const;

  DynamicBitset make_individual_set(std::span<const IndividualId> inds) const;

 private:
  friend Materialization materialize(const KnowledgeBase&, std::span<const IndividualId>,
                                     InvocationCounter&);
  friend Materialization load_materialization(std::string_view, const KnowledgeBase&,
                                              InvocationCounter&, std::vector<std::string>*);
  friend void apply_fresh_definitions(Materialization&, const KnowledgeBase&);

  std::vector<IndividualId> index_to_ind_;
  std::vector<std::uint32_t> ind_to_index_;      // by individual id; UINT32_MAX = not covered
  std::vector<DynamicBitset> extensions_;        // by concept id
  std::vector<std::vector<ConceptId>> types_;    // by dense index, sorted
  void rebuild_types();
};

/// Least fixpoint of
///   (R1) asserted types hold, and everything is a Thing;
///   (R2) A(a), A ⊑ B  ⇒  B(a);
///   (R3) A ≡ C, C holds structurally at a  ⇒  A(a);
/// over the given individuals plus everything reachable from them through
/// role assertions (structural evaluation of ∃R.C needs successor types).
/// An empty `relevant` means all individuals. Bumps the counter once.
Materialization materialize(const KnowledgeBase& kb_prime, std::span<const IndividualId> relevant,
                            InvocationCounter& counter);

/// `# ecii-mat v1` header, `# kb.fnv1a=<hex>`, then sorted `type <ind> <concept>` lines.
std::string dump_materialization(const Materialization& m, const KnowledgeBase& kb);

/// Loads a dump verbatim over all individuals of kb. Checks closure under R1
/// and R2 for the knowledge base's own axioms and warns when the table is
/// not closed; unknown entity names are errors. Bumps the counter once.
Materialization load_materialization(std::string_view text, const KnowledgeBase& kb,
                                     InvocationCounter& counter,
                                     std::vector<std::string>* warnings = nullptr);

/// Evaluates the definitions of fresh concepts against an existing table.
/// Fresh definitions mention declared names only, so a single pass suffices;
/// used when a run starts from a pre-materialized base table.
void apply_fresh_definitions(Materialization& m, const KnowledgeBase& kb_prime);

/// The hash a dump was produced against, if present.
std::optional<std::uint64_t> dump_kb_hash(std::string_view text);

}  // namespace ecii
