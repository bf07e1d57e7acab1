#pragma once

#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ecii/bitset.hpp"
#include "ecii/candidates.hpp"
#include "ecii/enrich.hpp"
#include "ecii/examples.hpp"
#include "ecii/io.hpp"
#include "ecii/materialize.hpp"
#include "ecii/report.hpp"

namespace ecii {

/// Per-example R-filler sets R(a) and the pooled filler sets per role:
/// R̄⁺ over positives, R̄⁻ over negatives, R̄ their union. A role is listed
/// exactly when some example has a nonempty R(a).
struct FillSets {
  struct ExampleFills {
    IndividualId individual;
    bool positive = false;
    // (role, sorted fillers), sorted by role
    std::vector<std::pair<RoleId, std::vector<IndividualId>>> fills;
  };
  struct RoleFills {
    RoleId role;
    std::vector<IndividualId> pos, neg, all;  // R̄⁺, R̄⁻, R̄, sorted
  };

  std::vector<ExampleFills> examples;  // positives first, input order
  std::vector<RoleFills> roles;        // sorted by role id

  const RoleFills* find_role(RoleId role) const;
  std::span<const IndividualId> fillers_of(IndividualId individual, RoleId role) const;
};

FillSets compute_fill_sets(const ExampleSet& examples);

/// R⁻(X) = {a | some b ∈ X has R(a,b) ∈ A(a)}; only example individuals.
std::vector<IndividualId> inverse_fillers(RoleId role, std::span<const IndividualId> x,
                                          const ExampleSet& examples);

/// ↓(B ⊓ ¬(D₁ ⊔ …)) = ↓B \ (↓D₁ ∪ …), over the materialization's index.
DynamicBitset extension_horn(const HornClause& h, const Materialization& m);
/// Union of the clause extensions.
DynamicBitset extension_candidate_class(const CandidateClass& c, const Materialization& m);
/// ↓A ∩ ⋂ᵢ Rᵢ⁻(↓Cᵢ). Throws when a restriction uses a role absent from the
/// examples.
DynamicBitset extension_solution(const SolutionCandidate& s, const Materialization& m,
                                 const FillSets& fills);

/// (|R̄⁺ ∩ ↓H| + |R̄⁻ \ ↓H|) / |R̄|. The role must occur in the examples.
Accuracy alpha1(const HornClause& h, RoleId role, const FillSets& fills,
                const Materialization& m);
/// (|P ∩ ↓S| + |N \ ↓S|) / |P ∪ N|, over individuals.
Accuracy alpha2(const SolutionCandidate& s, const ExampleSet& examples, const Materialization& m,
                const FillSets& fills);
/// P ⊆ ↓S and N ∩ ↓S = ∅.
bool is_approximate_solution(const SolutionCandidate& s, const ExampleSet& examples,
                             const Materialization& m, const FillSets& fills);

/// Atomic concepts appearing in the type sets of both sides, sorted by id.
std::vector<ConceptId> common_types(const ExampleSet& examples, const Materialization& m);

/// H₀: every Horn clause over the pool with at most k1 atomics total.
/// Thing never enters a negated disjunct. Deterministic order.
std::vector<HornClause> horn_space(std::span<const ConceptId> pool, int k1);
/// Closed-form |H₀| for a Thing-free pool: Σ_{j<k1} n·C(n-1, j).
std::uint64_t horn_space_size(std::size_t pool_size, int k1);

/// Everything the three stages share. The filler and example bitsets live on
/// the materialization's dense index.
struct StageContext {
  const KnowledgeBase& kb;  // enriched
  const ExampleSet& examples;
  const JobConfig& cfg;
  const Materialization& m;
  const FillSets& fills;

  std::vector<ConceptId> common;  // commonTypes, sorted
  DynamicBitset pos_mask, neg_mask, example_mask;       // example individuals
  std::vector<DynamicBitset> role_pos, role_neg, role_all;  // per fills.roles entry
  // per fills.roles entry, per fills.examples entry: that example's fillers
  std::vector<std::vector<DynamicBitset>> example_fillers;

  bool filtered_out(ConceptId c) const;  // in commonTypes while filtering is on
};

StageContext make_stage_context(const KnowledgeBase& kb_prime, const ExampleSet& examples,
                                const JobConfig& cfg, const Materialization& m,
                                const FillSets& fills);

/// Stage one: Horn clauses over the concepts covering R's fillers, ranked by
/// (alpha1, length, text), top k4.
std::vector<HornClause> stage1_horn_clauses(RoleId role, const StageContext& ctx,
                                            std::vector<std::string>* warnings = nullptr);

/// Stage two: disjunctions of at most k2 stage-one clauses, ranked by the
/// alpha1 formula lifted to candidate-class extensions, top k5.
std::vector<CandidateClass> stage2_candidate_classes(RoleId role,
                                                     std::span<const HornClause> horn_clauses,
                                                     const StageContext& ctx);

/// A candidate solution: the top-and-restrictions shape, or a top-level
/// candidate class on the roleless path. `expr` is the canonical lowering
/// with fresh names left in place; `length` counts its atomics.
struct ScoredSolution {
  std::variant<SolutionCandidate, CandidateClass> form;
  ExprPtr expr;
  Accuracy alpha2;
  int length = 0;
  std::optional<Accuracy> alpha3;
};

struct InductionHooks {
  /// Called for every candidate scored in stage three, with its alpha2.
  std::function<void(const std::variant<SolutionCandidate, CandidateClass>&, const Accuracy&)>
      on_candidate;
};

/// Stage three: tops from the enriched KB (minus commonTypes unless kept)
/// crossed with role subsets of size at most k3 and candidate-class choices;
/// when the examples have no role assertions at all, top-level candidate
/// classes are admitted as well. Top maxSolutions by (alpha2, length, text).
std::vector<ScoredSolution> stage3_solutions(
    const StageContext& ctx,
    std::span<const std::pair<RoleId, std::vector<CandidateClass>>> per_role_candidates,
    const InductionHooks& hooks = {}, std::vector<std::string>* warnings = nullptr);

struct RunOptions {
  const Materialization* preloaded = nullptr;  // base-KB table; fresh parts are filled in
  InvocationCounter* counter = nullptr;        // defaults to a run-local counter
  std::int64_t parse_ms = 0;
  int threads = 0;  // concurrent per-role stage workers; 0 = hardware default, 1 = off
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  InductionHooks hooks;
};

/// The full pipeline: enrich, materialize exactly once, fill sets, the three
/// stages, optional α3 per emitted row. Deterministic for fixed inputs.
ResultReport run_induction(const KnowledgeBase& kb, const ExampleSet& examples,
                           const JobConfig& cfg, const RunOptions& opts = {});

}  // namespace ecii
