#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ecii/errors.hpp"

namespace ecii {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Interned entity handles. All name lookups happen once, at declaration or
/// parse time; everything downstream moves ids around.
struct ConceptId {
  std::uint32_t value = UINT32_MAX;
  friend auto operator<=>(ConceptId, ConceptId) = default;
  bool valid() const { return value != UINT32_MAX; }
};
struct RoleId {
  std::uint32_t value = UINT32_MAX;
  friend auto operator<=>(RoleId, RoleId) = default;
  bool valid() const { return value != UINT32_MAX; }
};
struct IndividualId {
  std::uint32_t value = UINT32_MAX;
  friend auto operator<=>(IndividualId, IndividualId) = default;
  bool valid() const { return value != UINT32_MAX; }
};

/// The universal concept. Present in every knowledge base, always id 0,
/// rendered as "Thing".
inline constexpr ConceptId kThing{0};
inline constexpr std::string_view kThingName = "Thing";

struct ConceptInfo {
  std::string name;
  bool is_top = false;
  bool is_fresh = false;  // introduced by enrichment, not declared by the user
};

/// A ⊑ B with both sides atomic.
struct SubAxiom {
  ConceptId sub, sup;
  friend auto operator<=>(const SubAxiom&, const SubAxiom&) = default;
};

/// A ≡ C where C is built from atomics with conjunction and existential
/// restriction only (the enrichment grammar).
struct EquivAxiom {
  ConceptId lhs;
  ExprPtr rhs;
};

struct TypeAssertion {
  IndividualId ind;
  ConceptId cls;
  friend auto operator<=>(const TypeAssertion&, const TypeAssertion&) = default;
};

struct RoleAssertion {
  IndividualId subject;
  RoleId role;
  IndividualId object;
  friend auto operator<=>(const RoleAssertion&, const RoleAssertion&) = default;
};

/// Declarations, TBox and ABox. Immutable once built; induction runs share
/// one instance across workers.
class KnowledgeBase {
 public:
  KnowledgeBase();

  ConceptId declare_concept(std::string name, bool fresh = false);
  RoleId declare_role(std::string name);
  IndividualId declare_individual(std::string name);

  std::optional<ConceptId> find_concept(std::string_view name) const;
  std::optional<RoleId> find_role(std::string_view name) const;
  std::optional<IndividualId> find_individual(std::string_view name) const;

  ConceptId concept_or_throw(std::string_view name) const;
  RoleId role_or_throw(std::string_view name) const;
  IndividualId individual_or_throw(std::string_view name) const;

  void add_subsumption(ConceptId sub, ConceptId sup);
  /// Validates that rhs stays within the conj/exists grammar over declared
  /// atomics; anything else is out of the supported TBox fragment.
  void add_equivalence(ConceptId lhs, ExprPtr rhs);
  void add_type(IndividualId ind, ConceptId cls);
  void add_relation(IndividualId subject, RoleId role, IndividualId object);

  std::size_t concept_count() const { return concepts_.size(); }
  std::size_t role_count() const { return roles_.size(); }
  std::size_t individual_count() const { return individuals_.size(); }

  const ConceptInfo& concept_info(ConceptId id) const { return concepts_.at(id.value); }
  const std::string& concept_name(ConceptId id) const { return concepts_.at(id.value).name; }
  const std::string& role_name(RoleId id) const { return roles_.at(id.value); }
  const std::string& individual_name(IndividualId id) const { return individuals_.at(id.value); }
  bool is_fresh(ConceptId id) const { return concepts_.at(id.value).is_fresh; }
  bool is_top(ConceptId id) const { return id == kThing; }

  const std::vector<SubAxiom>& subsumptions() const { return subs_; }
  const std::vector<EquivAxiom>& equivalences() const { return equivs_; }
  const std::vector<TypeAssertion>& type_assertions() const { return types_; }
  const std::vector<RoleAssertion>& role_assertions() const { return rels_; }

  /// The equivalence defining a fresh concept, if any.
  const EquivAxiom* definition_of(ConceptId id) const;

  void check_concept(ConceptId id) const;
  void check_role(RoleId id) const;
  void check_individual(IndividualId id) const;

 private:
  std::vector<ConceptInfo> concepts_;
  std::vector<std::string> roles_;
  std::vector<std::string> individuals_;
  std::unordered_map<std::string, std::uint32_t> concept_by_name_;
  std::unordered_map<std::string, std::uint32_t> role_by_name_;
  std::unordered_map<std::string, std::uint32_t> individual_by_name_;
  std::vector<SubAxiom> subs_;
  std::vector<EquivAxiom> equivs_;
  std::vector<TypeAssertion> types_;
  std::vector<RoleAssertion> rels_;
  std::unordered_map<std::uint32_t, std::size_t> equiv_by_lhs_;
  // set-semantics guards for the assertion vectors
  std::set<SubAxiom> sub_keys_;
  std::set<TypeAssertion> type_keys_;
  std::set<RoleAssertion> rel_keys_;
};

}  // namespace ecii

template <>
struct std::hash<ecii::ConceptId> {
  std::size_t operator()(ecii::ConceptId id) const noexcept { return id.value; }
};
template <>
struct std::hash<ecii::RoleId> {
  std::size_t operator()(ecii::RoleId id) const noexcept { return id.value; }
};
template <>
struct std::hash<ecii::IndividualId> {
  std::size_t operator()(ecii::IndividualId id) const noexcept { return id.value; }
};
