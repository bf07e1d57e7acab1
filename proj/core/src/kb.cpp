#include "ecii/kb.hpp"

#include <algorithm>

#include "ecii/expr.hpp"

namespace ecii {

KnowledgeBase::KnowledgeBase() {
  concepts_.push_back({std::string(kThingName), /*is_top=*/true, /*is_fresh=*/false});
  concept_by_name_.emplace(std::string(kThingName), 0);
}

ConceptId KnowledgeBase::declare_concept(std::string name, bool fresh) {
  if (concept_by_name_.contains(name))
    throw SemanticError("duplicate concept declaration: " + name);
  if (role_by_name_.contains(name))
    throw SemanticError("concept name collides with a role: " + name);
  ConceptId id{static_cast<std::uint32_t>(concepts_.size())};
  concept_by_name_.emplace(name, id.value);
  concepts_.push_back({std::move(name), false, fresh});
  return id;
}

RoleId KnowledgeBase::declare_role(std::string name) {
  if (role_by_name_.contains(name))
    throw SemanticError("duplicate role declaration: " + name);
  if (concept_by_name_.contains(name))
    throw SemanticError("role name collides with a concept: " + name);
  RoleId id{static_cast<std::uint32_t>(roles_.size())};
  role_by_name_.emplace(name, id.value);
  roles_.push_back(std::move(name));
  return id;
}

IndividualId KnowledgeBase::declare_individual(std::string name) {
  if (individual_by_name_.contains(name))
    throw SemanticError("duplicate individual declaration: " + name);
  IndividualId id{static_cast<std::uint32_t>(individuals_.size())};
  individual_by_name_.emplace(name, id.value);
  individuals_.push_back(std::move(name));
  return id;
}

std::optional<ConceptId> KnowledgeBase::find_concept(std::string_view name) const {
  auto it = concept_by_name_.find(std::string(name));
  if (it == concept_by_name_.end()) return std::nullopt;
  return ConceptId{it->second};
}

std::optional<RoleId> KnowledgeBase::find_role(std::string_view name) const {
  auto it = role_by_name_.find(std::string(name));
  if (it == role_by_name_.end()) return std::nullopt;
  return RoleId{it->second};
}

std::optional<IndividualId> KnowledgeBase::find_individual(std::string_view name) const {
  auto it = individual_by_name_.find(std::string(name));
  if (it == individual_by_name_.end()) return std::nullopt;
  return IndividualId{it->second};
}

ConceptId KnowledgeBase::concept_or_throw(std::string_view name) const {
  if (auto id = find_concept(name)) return *id;
  throw SemanticError("undeclared concept: " + std::string(name));
}

RoleId KnowledgeBase::role_or_throw(std::string_view name) const {
  if (auto id = find_role(name)) return *id;
  throw SemanticError("undeclared role: " + std::string(name));
}

IndividualId KnowledgeBase::individual_or_throw(std::string_view name) const {
  if (auto id = find_individual(name)) return *id;
  throw SemanticError("undeclared individual: " + std::string(name));
}

void KnowledgeBase::check_concept(ConceptId id) const {
  if (!id.valid() || id.value >= concepts_.size())
    throw SemanticError("concept id out of range");
}

void KnowledgeBase::check_role(RoleId id) const {
  if (!id.valid() || id.value >= roles_.size()) throw SemanticError("role id out of range");
}

void KnowledgeBase::check_individual(IndividualId id) const {
  if (!id.valid() || id.value >= individuals_.size())
    throw SemanticError("individual id out of range");
}

void KnowledgeBase::add_subsumption(ConceptId sub, ConceptId sup) {
  check_concept(sub);
  check_concept(sup);
  SubAxiom ax{sub, sup};
  if (sub_keys_.insert(ax).second) subs_.push_back(ax);
}

void KnowledgeBase::add_equivalence(ConceptId lhs, ExprPtr rhs) {
  check_concept(lhs);
  if (!rhs) throw SemanticError("equivalence right-hand side missing");
  if (!within_definition_grammar(*rhs))
    throw SemanticError("equivalence right-hand side outside the and/some fragment: " +
                        concept_name(lhs));
  rhs = canonicalize(rhs, *this);
  if (equiv_by_lhs_.contains(lhs.value))
    throw SemanticError("duplicate equivalence for concept: " + concept_name(lhs));
  equiv_by_lhs_.emplace(lhs.value, equivs_.size());
  equivs_.push_back({lhs, std::move(rhs)});
}

void KnowledgeBase::add_type(IndividualId ind, ConceptId cls) {
  check_individual(ind);
  check_concept(cls);
  TypeAssertion a{ind, cls};
  if (type_keys_.insert(a).second) types_.push_back(a);
}

void KnowledgeBase::add_relation(IndividualId subject, RoleId role, IndividualId object) {
  check_individual(subject);
  check_role(role);
  check_individual(object);
  RoleAssertion a{subject, role, object};
  if (rel_keys_.insert(a).second) rels_.push_back(a);
}

const EquivAxiom* KnowledgeBase::definition_of(ConceptId id) const {
  auto it = equiv_by_lhs_.find(id.value);
  if (it == equiv_by_lhs_.end()) return nullptr;
  return &equivs_[it->second];
}

}  // namespace ecii
