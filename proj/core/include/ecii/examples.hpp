#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ecii/kb.hpp"

namespace ecii {

using Statement = std::variant<TypeAssertion, RoleAssertion>;

/// An example individual with its local ABox A(a). For star-shaped examples
/// the statements are limited to A(a), R(a,b) and B(b).
struct Example {
  IndividualId individual;
  std::vector<Statement> local_abox;
};

struct StarShapeReport {
  bool valid = true;
  std::vector<Statement> offenders;
};

/// Accepts iff every statement has one of the three star shapes: a type
/// assertion (about the example individual or a filler) or a role assertion
/// whose subject is the example individual itself.
StarShapeReport validate_star_shaped(const Example& ex);

std::string describe_statement(const Statement& st, const KnowledgeBase& kb);

/// Positive and negative examples with the pooled ABox. Construction rejects
/// empty sides and shared individuals.
class ExampleSet {
 public:
  static ExampleSet from_examples(std::vector<Example> positives, std::vector<Example> negatives);

  /// Derives each local ABox as the restriction of the knowledge base's ABox
  /// to statements about the example individual plus the types of its role
  /// fillers; the result is star-shaped by construction.
  static ExampleSet from_kb(const KnowledgeBase& kb,
                            const std::vector<std::string>& positives,
                            const std::vector<std::string>& negatives);

  const std::vector<Example>& positives() const { return positives_; }
  const std::vector<Example>& negatives() const { return negatives_; }

  std::vector<IndividualId> positive_individuals() const;
  std::vector<IndividualId> negative_individuals() const;
  /// P ∪ N, sorted.
  std::vector<IndividualId> example_individuals() const;
  /// Every individual mentioned in the pooled ABox (examples and fillers), sorted.
  std::vector<IndividualId> mentioned_individuals() const;

  std::vector<Statement> pooled_abox() const;

 private:
  ExampleSet(std::vector<Example> p, std::vector<Example> n);
  std::vector<Example> positives_, negatives_;
};

}  // namespace ecii
