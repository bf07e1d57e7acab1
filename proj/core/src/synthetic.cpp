#include "ecii/synthetic.hpp"

#include <algorithm>
#include <random>

#include "ecii/errors.hpp"

namespace ecii {

SyntheticProblem make_family_problem(std::size_t individuals, std::uint32_t seed) {
  if (individuals < 4) throw SemanticError("synthetic problem needs at least 4 individuals");

  SyntheticProblem problem;
  KnowledgeBase& kb = problem.kb;

  ConceptId person = kb.declare_concept("Person");
  ConceptId male = kb.declare_concept("Male");
  ConceptId female = kb.declare_concept("Female");
  static const char* kProfessions[] = {"Doctor", "Lawyer", "Teacher", "Engineer", "Artist"};
  std::vector<ConceptId> professions;
  for (const char* name : kProfessions) professions.push_back(kb.declare_concept(name));
  RoleId has_child = kb.declare_role("hasChild");
  kb.add_subsumption(male, person);
  kb.add_subsumption(female, person);
  for (ConceptId p : professions) kb.add_subsumption(p, person);

  const std::size_t adults = individuals / 2;
  const std::size_t children = individuals - adults;
  std::vector<IndividualId> inds;
  inds.reserve(individuals);
  for (std::size_t i = 0; i < individuals; ++i)
    inds.push_back(kb.declare_individual("p" + std::to_string(i)));

  // raw engine output only: uniform_int_distribution is not portable
  std::mt19937 rng(seed);
  for (std::size_t i = 0; i < individuals; ++i)
    kb.add_type(inds[i], rng() % 2 == 0 ? male : female);

  // adults 0 and 1 always get a child so both example sides can be planted
  std::vector<std::vector<std::size_t>> kids_of(adults);
  for (std::size_t c = 0; c < children; ++c) {
    std::size_t parent = c < 2 ? c : rng() % adults;
    kids_of[parent].push_back(c);
    kb.add_relation(inds[parent], has_child, inds[adults + c]);
  }

  std::vector<std::size_t> child_prof(children);
  for (std::size_t c = 0; c < children; ++c) child_prof[c] = rng() % professions.size();
  child_prof[kids_of[0].front()] = 0;                           // adult 0: a Doctor child
  for (std::size_t c : kids_of[1]) child_prof[c] = 1 + c % 4;   // adult 1: no Doctor children
  for (std::size_t c = 0; c < children; ++c)
    kb.add_type(inds[adults + c], professions[child_prof[c]]);

  const std::size_t per_side =
      std::max<std::size_t>(3, std::min<std::size_t>(50, individuals / 20));
  for (std::size_t a = 0; a < adults; ++a) {
    if (kids_of[a].empty()) continue;
    bool has_doctor = false;
    for (std::size_t c : kids_of[a]) has_doctor = has_doctor || child_prof[c] == 0;
    auto& side = has_doctor ? problem.positives : problem.negatives;
    if (side.size() < per_side) side.push_back(kb.individual_name(inds[a]));
  }
  return problem;
}

}  // namespace ecii
