#include "ecii/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ecii/enrich.hpp"
#include "ecii/induce.hpp"
#include "ecii/io.hpp"
#include "ecii/oracle.hpp"
#include "ecii/synthetic.hpp"

namespace ecii::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

std::string default_out(const std::string& input, const char* suffix) {
  fs::path p(input);
  p.replace_extension();
  return p.string() + suffix;
}

/// KB paths in configs resolve relative to the config file's directory.
std::string resolve_kb_path(const std::string& config_path, const std::string& kb_path) {
  fs::path kb(kb_path);
  if (kb.is_absolute()) return kb.string();
  return (fs::path(config_path).parent_path() / kb).string();
}

struct LoadedJob {
  JobConfig cfg;
  KnowledgeBase kb;
  std::int64_t parse_ms = 0;
};

LoadedJob load_job(const std::string& config_path) {
  auto start = std::chrono::steady_clock::now();
  LoadedJob job;
  job.cfg = parse_config(read_file(config_path));
  job.kb = parse_kb(read_file(resolve_kb_path(config_path, job.cfg.kb_path)));
  job.parse_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return job;
}

int classify(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const ParseError*>(&e)) return kExitUsage;
  if (dynamic_cast<const SemanticError*>(&e)) return kExitSemantic;
  return kExitInternal;
}

}  // namespace

int cmd_run(const RunFlags& flags, std::ostream& out, std::ostream& err) {
  try {
    LoadedJob job = load_job(flags.config_path);
    if (flags.max_solutions) {
      if (*flags.max_solutions < 1) throw ParseError("--max-solutions must be at least 1");
      job.cfg.max_solutions = *flags.max_solutions;
    }
    if (flags.alpha3) job.cfg.compute_alpha3 = true;

    ExampleSet examples =
        ExampleSet::from_kb(job.kb, job.cfg.positives, job.cfg.negatives);
    for (const auto* side : {&examples.positives(), &examples.negatives()}) {
      for (const auto& ex : *side) {
        StarShapeReport star = validate_star_shaped(ex);
        if (!star.valid)
          throw SemanticError("example " + job.kb.individual_name(ex.individual) +
                              " is not star-shaped: " +
                              describe_statement(star.offenders.front(), job.kb));
      }
    }

    RunOptions opts;
    opts.parse_ms = job.parse_ms;
    opts.threads = flags.threads;
    InvocationCounter counter;
    opts.counter = &counter;

    Materialization preloaded;
    std::vector<std::string> load_warnings;
    if (!flags.mat_path.empty()) {
      std::string dump = read_file(flags.mat_path);
      if (auto h = dump_kb_hash(dump); h && *h != kb_content_hash(job.kb))
        throw SemanticError("materialization is stale: KB hash mismatch for " + flags.mat_path);
      preloaded = load_materialization(dump, job.kb, counter, &load_warnings);
      opts.preloaded = &preloaded;
    }

    ResultReport report = run_induction(job.kb, examples, job.cfg, opts);
    report.warnings.insert(report.warnings.begin(), load_warnings.begin(), load_warnings.end());

    std::string out_path =
        flags.out_path.empty() ? default_out(flags.config_path, ".results.tsv") : flags.out_path;
    write_file(out_path, write_report(report));

    if (!flags.quiet) {
      if (report.rows.empty()) {
        out << "no solutions\n";
      } else {
        const ResultRow& best = report.rows.front();
        out << "rank-1: " << best.expression << " (alpha2=" << format_accuracy(best.alpha2)
            << ", length=" << best.length;
        if (best.alpha3) out << ", alpha3=" << format_accuracy(*best.alpha3);
        out << ")\n";
      }
      out << "time: parse=" << report.times.parse_ms << "ms enrich=" << report.times.enrich_ms
          << "ms materialize=" << report.times.materialize_ms
          << "ms induce=" << report.times.induce_ms << "ms total=" << report.times.total_ms
          << "ms\n";
      out << "materializer invocations: " << report.materializer_invocations << "\n";
      for (const auto& w : report.warnings) out << "warning: " << w << "\n";
      out << "results: " << out_path << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return classify(e, err);
  }
}

int cmd_verify(const VerifyFlags& flags, std::ostream& out, std::ostream& err) {
  try {
    LoadedJob job = load_job(flags.config_path);
    ResultReport results = read_report(read_file(flags.results_path));
    if (results.rows.empty()) throw ParseError("empty results file: " + flags.results_path);
    if (results.kb_hash != kb_content_hash(job.kb))
      throw SemanticError("stale results: KB hash mismatch for " + flags.results_path);

    ExampleSet examples =
        ExampleSet::from_kb(job.kb, job.cfg.positives, job.cfg.negatives);

    std::string table;
    std::size_t agreements = 0;
    for (const auto& row : results.rows) {
      ExprPtr expr = parse_expression(row.expression, job.kb);
      Accuracy a3 = alpha3(*expr, examples, job.kb);
      bool agree = row.alpha2.is_one() == a3.is_one();
      agreements += agree;
      table += row.expression + "\t" + format_accuracy(row.alpha2) + "\t" + format_accuracy(a3) +
               "\t" + (agree ? "true" : "false") + "\n";
    }

    std::string out_path =
        flags.out_path.empty() ? default_out(flags.results_path, ".verify.tsv") : flags.out_path;
    write_file(out_path, table);
    if (!flags.quiet) {
      out << "verified " << results.rows.size() << " row(s): " << agreements << " agree, "
          << results.rows.size() - agreements << " disagree\n";
      out << "verification: " << out_path << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return classify(e, err);
  }
}

int cmd_materialize(const MaterializeFlags& flags, std::ostream& out, std::ostream& err) {
  try {
    KnowledgeBase kb = parse_kb(read_file(flags.kb_path));
    InvocationCounter counter;
    Materialization m = materialize(kb, {}, counter);
    write_file(flags.out_path, dump_materialization(m, kb));
    out << "materialized " << m.individual_count() << " individual(s) into " << flags.out_path
        << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    return classify(e, err);
  }
}

std::vector<BenchRow> run_bench(std::span<const std::size_t> sizes, int repetitions,
                                int threads) {
  if (repetitions < 1) throw ParseError("repetitions must be at least 1");
  for (std::size_t s : sizes)
    if (s == 0) throw ParseError("bench size 0 rejected");

  std::vector<BenchRow> rows;
  for (std::size_t size : sizes) {
    SyntheticProblem problem = make_family_problem(size, /*seed=*/1234);
    ExampleSet examples = ExampleSet::from_kb(problem.kb, problem.positives, problem.negatives);
    JobConfig cfg;
    cfg.max_solutions = 5;

    BenchRow row;
    row.individuals = size;
    row.repetitions = repetitions;
    row.target_met = true;
    row.single_invocation = true;
    for (int r = 0; r < repetitions; ++r) {
      InvocationCounter counter;
      RunOptions opts;
      opts.counter = &counter;
      opts.threads = threads;
      ResultReport report = run_induction(problem.kb, examples, cfg, opts);
      row.parse_ms += static_cast<double>(report.times.parse_ms);
      row.enrich_ms += static_cast<double>(report.times.enrich_ms);
      row.materialize_ms += static_cast<double>(report.times.materialize_ms);
      row.induce_ms += static_cast<double>(report.times.induce_ms);
      row.total_ms += static_cast<double>(report.times.total_ms);
      row.target_met =
          row.target_met && !report.rows.empty() && report.rows.front().alpha2.is_one();
      row.single_invocation = row.single_invocation && report.materializer_invocations == 1;
    }
    row.parse_ms /= repetitions;
    row.enrich_ms /= repetitions;
    row.materialize_ms /= repetitions;
    row.induce_ms /= repetitions;
    row.total_ms /= repetitions;
    rows.push_back(row);
  }
  return rows;
}

int cmd_bench(const BenchFlags& flags, std::ostream& out, std::ostream& err) {
  try {
    if (flags.sizes.empty()) throw ParseError("no bench sizes given");
    auto rows = run_bench(flags.sizes, flags.repetitions, flags.threads);

    std::string table = "# ecii-bench v1\n";
    table +=
        "individuals\treps\tparse_ms\tenrich_ms\tmaterialize_ms\tinduce_ms\ttotal_ms\t"
        "alpha2_target\tsingle_invocation\tnote\n";
    char buf[64];
    for (const auto& row : rows) {
      table += std::to_string(row.individuals) + "\t" + std::to_string(row.repetitions);
      for (double v :
           {row.parse_ms, row.enrich_ms, row.materialize_ms, row.induce_ms, row.total_ms}) {
        std::snprintf(buf, sizeof(buf), "%.1f", v);
        table += std::string("\t") + buf;
      }
      table += std::string("\t") + (row.target_met ? "met" : "MISSED");
      table += std::string("\t") + (row.single_invocation ? "1" : "VIOLATED");
      table += std::string("\t") + (row.repetitions == 1 ? "single-sample" : "");
      table += "\n";
    }
    if (!flags.out_path.empty()) write_file(flags.out_path, table);
    if (!flags.quiet) out << table;
    return kExitOk;
  } catch (const std::exception& e) {
    return classify(e, err);
  }
}

}  // namespace ecii::cli
