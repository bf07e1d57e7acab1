#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ecii/kb.hpp"

namespace ecii {

/// A scalable person/child knowledge base for benchmarking. Adults in the
/// first half link to children in the second half through hasChild; children
/// carry a profession. Positives are parents of at least one Doctor, the
/// negatives are parents with children but no Doctor among them, so
/// enrichment can always reach an exact separator (∃hasChild.Doctor) and a
/// run has a known α2 = 1.0 target. Fully deterministic for a fixed seed.
struct SyntheticProblem {
  KnowledgeBase kb;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
};

SyntheticProblem make_family_problem(std::size_t individuals, std::uint32_t seed = 7);

}  // namespace ecii
