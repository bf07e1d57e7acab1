#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ecii/expr.hpp"
#include "ecii/kb.hpp"
#include "ecii/report.hpp"

namespace ecii {

/// Induction job parameters. Defaults follow the engine's documented knobs:
/// n1 = n2 = 3, k1 = k2 = k3 = 3, k4 = k5 = 50, keepCommonTypes off.
struct JobConfig {
  std::string kb_path;
  std::vector<std::string> positives;
  std::vector<std::string> negatives;
  int n1 = 3, n2 = 3;
  int k1 = 3, k2 = 3, k3 = 3;
  int k4 = 50, k5 = 50;
  bool keep_common_types = false;
  int max_solutions = 10;
  bool compute_alpha3 = false;
};

/// Line-based KB text:
///   concept <N> | role <N> | ind <N>
///   sub <A> <B>
///   equiv <A> <s-expr>        s-expr ::= name | (and e e ...) | (some role e)
///   type <ind> <concept>
///   rel <ind> <role> <ind>
/// `#` starts a comment; entities must be declared before use.
KnowledgeBase parse_kb(std::string_view text);

/// Canonical text form: sections in fixed order, lines sorted. Stable across
/// calls; parse_kb(serialize_kb(kb)) is structurally identical to kb.
std::string serialize_kb(const KnowledgeBase& kb);

bool kb_structurally_equal(const KnowledgeBase& a, const KnowledgeBase& b);

/// FNV-1a over the canonical serialization; embedded in result and
/// materialization files to detect stale caches.
std::uint64_t kb_content_hash(const KnowledgeBase& kb);

/// `key = value` lines, set values in `{ a, b }`. Missing keys default,
/// unknown keys are errors, k1 must be at least 1.
JobConfig parse_config(std::string_view text);

/// Inverse of render_expression: the and/or/not/some surface syntax.
ExprPtr parse_expression(std::string_view text, const KnowledgeBase& kb);

std::string write_report(const ResultReport& report);
ResultReport read_report(std::string_view text);

}  // namespace ecii
