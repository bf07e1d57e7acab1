#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ecii {

/// Exact accuracy value num/den. Comparisons cross-multiply so ranking never
/// depends on floating-point rounding.
struct Accuracy {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / den; }
  bool is_one() const { return num == den; }

  friend bool operator==(const Accuracy& a, const Accuracy& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend bool operator<(const Accuracy& a, const Accuracy& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator>(const Accuracy& a, const Accuracy& b) { return b < a; }
};

/// Decimal rendering: "1.0", "0.5", "0.666667".
std::string format_accuracy(const Accuracy& a);

struct ResultRow {
  int rank = 0;
  Accuracy alpha2;
  int length = 0;
  std::string expression;
  std::optional<Accuracy> alpha3;
};

struct PhaseTimings {
  std::int64_t parse_ms = 0;
  std::int64_t enrich_ms = 0;
  std::int64_t materialize_ms = 0;
  std::int64_t induce_ms = 0;
  std::int64_t total_ms = 0;
};

struct ResultReport {
  std::vector<ResultRow> rows;
  PhaseTimings times;
  int materializer_invocations = 0;
  std::uint64_t kb_hash = 0;
  std::vector<std::string> warnings;
};

}  // namespace ecii
