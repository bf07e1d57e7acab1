#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ecii/cli.hpp"

namespace {

int env_threads() {
  const char* env = std::getenv("ECII_THREADS");
  if (!env) return 0;
  int n = std::atoi(env);
  return n < 0 ? 0 : n;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ECII concept induction: learn class expressions separating positive from "
               "negative individuals with a single materialization pass"};
  app.require_subcommand(1);

  ecii::cli::RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run an induction job from a config file");
  run->add_option("--config", run_flags.config_path, "job config file")->required();
  run->add_option("--out", run_flags.out_path, "result file (default <config stem>.results.tsv)");
  run->add_flag("--alpha3", run_flags.alpha3, "also compute exact accuracy per solution");
  run->add_option("--mat", run_flags.mat_path, "pre-materialized type table to load");
  int max_solutions = 0;
  CLI::Option* max_opt =
      run->add_option("--max-solutions", max_solutions, "override maxSolutions");
  run->add_flag("--quiet", run_flags.quiet, "suppress console output");

  ecii::cli::VerifyFlags verify_flags;
  CLI::App* verify = app.add_subcommand("verify", "re-score a result file with the oracle");
  verify->add_option("--config", verify_flags.config_path, "job config file")->required();
  verify->add_option("--results", verify_flags.results_path, "result file to verify")->required();
  verify->add_option("--out", verify_flags.out_path,
                     "verification file (default <results stem>.verify.tsv)");
  verify->add_flag("--quiet", verify_flags.quiet, "suppress console output");

  ecii::cli::MaterializeFlags mat_flags;
  CLI::App* mat = app.add_subcommand("materialize", "write the type table of a knowledge base");
  mat->add_option("--kb", mat_flags.kb_path, "knowledge base file")->required();
  mat->add_option("--out", mat_flags.out_path, "dump file")->required();

  ecii::cli::BenchFlags bench_flags;
  CLI::App* bench = app.add_subcommand("bench", "time induction on synthetic scaled problems");
  bench->add_option("--sizes", bench_flags.sizes, "individual counts, e.g. --sizes 100 1000")
      ->required();
  bench->add_option("--reps", bench_flags.repetitions, "repetitions per size (default 3)");
  bench->add_option("--out", bench_flags.out_path, "also write the table to a file");
  bench->add_flag("--quiet", bench_flags.quiet, "suppress console output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : ecii::cli::kExitUsage;
  }

  run_flags.threads = env_threads();
  bench_flags.threads = env_threads();

  if (run->parsed()) {
    if (*max_opt) run_flags.max_solutions = max_solutions;
    return ecii::cli::cmd_run(run_flags, std::cout, std::cerr);
  }
  if (verify->parsed()) return ecii::cli::cmd_verify(verify_flags, std::cout, std::cerr);
  if (mat->parsed()) return ecii::cli::cmd_materialize(mat_flags, std::cout, std::cerr);
  if (bench->parsed()) return ecii::cli::cmd_bench(bench_flags, std::cout, std::cerr);
  return ecii::cli::kExitUsage;
}
