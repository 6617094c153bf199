#include <CLI11.hpp>
#include <iostream>

#include "fredproj/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "fredproj: particular solutions of A x + phi = x under <x, y_i> = 0, "
      "with series-identity certification and solution-region estimates"};
  app.require_subcommand(1);

  fredproj::SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve a constrained problem");
  solve->add_option("--corpus", solve_args.corpus_name, "Built-in problem name");
  solve->add_option("--config", solve_args.config_path, "Problem config JSON");
  solve->add_option("--override", solve_args.overrides,
                    "Solver setting key=value (repeatable)");
  solve->add_option("--out", solve_args.out_dir, "Output directory");

  fredproj::LemmasArgs lemmas_args;
  auto* lemmas =
      app.add_subcommand("lemmas", "Run the series-identity certification checks");
  lemmas->add_option("--seed", lemmas_args.seed, "Base seed (trial t uses seed + t)");
  lemmas->add_option("--trials", lemmas_args.trials, "Trials per check");
  lemmas->add_option("--which", lemmas_args.which,
                     "Subset of checks: pairing reorder cauchy perturb split");

  fredproj::RegionArgs region_args;
  auto* region =
      app.add_subcommand("region", "Estimate the solution-region radius around k");
  region->add_option("--corpus", region_args.corpus_name, "Built-in problem name");
  region->add_option("--config", region_args.config_path, "Problem config JSON");
  region->add_option("--k", region_args.k_csv,
                     "CSV of k free coefficients, (dim - m) x m");
  region->add_option("--override", region_args.overrides,
                     "Solver setting key=value (repeatable)");
  region->add_option("--probe", region_args.probe,
                     "Random perturbation solves at 0.9 epsilon");
  region->add_option("--seed", region_args.seed, "Seed for the probes");
  region->add_option("--out", region_args.out_dir, "Also write region.json here");

  fredproj::CorpusArgs corpus_args;
  auto* corpus = app.add_subcommand("corpus", "List or dump built-in problems");
  corpus->add_option("action", corpus_args.action, "list | dump")->required();
  corpus->add_option("name", corpus_args.name, "Problem name (for dump)");
  corpus->add_option("--out", corpus_args.out_dir, "Output directory for dump");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (solve->parsed())
    return fredproj::cmd_solve(solve_args, std::cout, std::cerr);
  if (lemmas->parsed())
    return fredproj::cmd_lemmas(lemmas_args, std::cout, std::cerr);
  if (region->parsed())
    return fredproj::cmd_region(region_args, std::cout, std::cerr);
  if (corpus->parsed())
    return fredproj::cmd_corpus(corpus_args, std::cout, std::cerr);
  return 1;
}
