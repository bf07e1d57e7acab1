#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace ecii::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // unreadable/malformed configs, files, results
inline constexpr int kExitSemantic = 2;  // KB semantic errors, stale hashes
inline constexpr int kExitInternal = 3;

struct RunFlags {
  std::string config_path;
  std::string out_path;  // empty: <config stem>.results.tsv
  bool alpha3 = false;
  std::string mat_path;  // pre-materialized table; skips the fixpoint
  std::optional<int> max_solutions;
  bool quiet = false;
  int threads = 0;  // 0 = auto
};

struct VerifyFlags {
  std::string config_path;
  std::string results_path;
  std::string out_path;  // empty: <results stem>.verify.tsv
  bool quiet = false;
};

struct MaterializeFlags {
  std::string kb_path;
  std::string out_path;
};

struct BenchFlags {
  std::vector<std::size_t> sizes;
  int repetitions = 3;
  std::string out_path;  // empty: stdout only
  bool quiet = false;
  int threads = 0;
};

struct BenchRow {
  std::size_t individuals = 0;
  int repetitions = 0;
  double parse_ms = 0, enrich_ms = 0, materialize_ms = 0, induce_ms = 0, total_ms = 0;  // means
  bool target_met = false;       // rank-1 α2 was exactly 1.0 in every run
  bool single_invocation = false;  // every run reported exactly one materializer use
};

/// Runs induction with the file workflow: parse config and KB, optionally
/// load a materialization, write the result report, print the rank-1 row and
/// timing summary.
int cmd_run(const RunFlags& flags, std::ostream& out, std::ostream& err);

/// Re-scores a result file with the reference semantics and writes
/// `candidate<TAB>alpha2<TAB>alpha3<TAB>agree` rows. Disagreements are
/// findings, not failures; stale results exit 2.
int cmd_verify(const VerifyFlags& flags, std::ostream& out, std::ostream& err);

/// Standalone materialization dump for reuse across example sets.
int cmd_materialize(const MaterializeFlags& flags, std::ostream& out, std::ostream& err);

/// Synthetic scaling harness; every run is checked for the planted α2 = 1.0
/// solution and the single-invocation property.
std::vector<BenchRow> run_bench(std::span<const std::size_t> sizes, int repetitions, int threads);
int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err);

}  // namespace ecii::cli
