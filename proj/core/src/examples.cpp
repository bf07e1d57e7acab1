#include "ecii/examples.hpp"

#include <algorithm>
#include <set>

namespace ecii {

StarShapeReport validate_star_shaped(const Example& ex) {
  StarShapeReport report;
  for (const auto& st : ex.local_abox) {
    if (const auto* rel = std::get_if<RoleAssertion>(&st)) {
      // all role edges must radiate from the example individual
      if (rel->subject != ex.individual) {
        report.valid = false;
        report.offenders.push_back(st);
      }
    }
    // type assertions match A(a) or B(b) as-is
  }
  return report;
}

std::string describe_statement(const Statement& st, const KnowledgeBase& kb) {
  if (const auto* t = std::get_if<TypeAssertion>(&st))
    return kb.concept_name(t->cls) + "(" + kb.individual_name(t->ind) + ")";
  const auto& r = std::get<RoleAssertion>(st);
  return kb.role_name(r.role) + "(" + kb.individual_name(r.subject) + "," +
         kb.individual_name(r.object) + ")";
}

ExampleSet::ExampleSet(std::vector<Example> p, std::vector<Example> n)
    : positives_(std::move(p)), negatives_(std::move(n)) {}

ExampleSet ExampleSet::from_examples(std::vector<Example> positives,
                                     std::vector<Example> negatives) {
  if (positives.empty()) throw SemanticError("empty positive example set");
  if (negatives.empty()) throw SemanticError("empty negative example set");
  std::set<IndividualId> pos;
  for (const auto& e : positives)
    if (!pos.insert(e.individual).second)
      throw SemanticError("duplicate positive example individual");
  for (const auto& e : negatives)
    if (pos.contains(e.individual))
      throw SemanticError("example individual appears as both positive and negative");
  std::set<IndividualId> neg;
  for (const auto& e : negatives)
    if (!neg.insert(e.individual).second)
      throw SemanticError("duplicate negative example individual");
  return ExampleSet(std::move(positives), std::move(negatives));
}

namespace {

Example derive_example(const KnowledgeBase& kb, IndividualId a) {
  Example ex;
  ex.individual = a;
  std::set<IndividualId> fillers;
  for (const auto& t : kb.type_assertions())
    if (t.ind == a) ex.local_abox.push_back(t);
  for (const auto& r : kb.role_assertions()) {
    if (r.subject == a) {
      ex.local_abox.push_back(r);
      fillers.insert(r.object);
    }
  }
  for (const auto& t : kb.type_assertions())
    if (t.ind != a && fillers.contains(t.ind)) ex.local_abox.push_back(t);
  return ex;
}

}  // namespace

ExampleSet ExampleSet::from_kb(const KnowledgeBase& kb, const std::vector<std::string>& positives,
                               const std::vector<std::string>& negatives) {
  std::vector<Example> pos, neg;
  pos.reserve(positives.size());
  neg.reserve(negatives.size());
  for (const auto& name : positives) pos.push_back(derive_example(kb, kb.individual_or_throw(name)));
  for (const auto& name : negatives) neg.push_back(derive_example(kb, kb.individual_or_throw(name)));
  return from_examples(std::move(pos), std::move(neg));
}

namespace {

std::vector<IndividualId> sorted_individuals(const std::vector<Example>& xs) {
  std::vector<IndividualId> out;
  out.reserve(xs.size());
  for (const auto& e : xs) out.push_back(e.individual);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<IndividualId> ExampleSet::positive_individuals() const {
  return sorted_individuals(positives_);
}

std::vector<IndividualId> ExampleSet::negative_individuals() const {
  return sorted_individuals(negatives_);
}

std::vector<IndividualId> ExampleSet::example_individuals() const {
  auto out = positive_individuals();
  auto n = negative_individuals();
  out.insert(out.end(), n.begin(), n.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IndividualId> ExampleSet::mentioned_individuals() const {
  std::set<IndividualId> seen;
  for (const auto* side : {&positives_, &negatives_}) {
    for (const auto& ex : *side) {
      seen.insert(ex.individual);
      for (const auto& st : ex.local_abox) {
        if (const auto* t = std::get_if<TypeAssertion>(&st)) {
          seen.insert(t->ind);
        } else {
          const auto& r = std::get<RoleAssertion>(st);
          seen.insert(r.subject);
          seen.insert(r.object);
        }
      }
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Statement> ExampleSet::pooled_abox() const {
  std::vector<Statement> out;
  for (const auto* side : {&positives_, &negatives_})
    for (const auto& ex : *side)
      out.insert(out.end(), ex.local_abox.begin(), ex.local_abox.end());
  return out;
}

}  // namespace ecii
