#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tcoq/baselines.hpp"
#include "tcoq/experiment.hpp"

namespace {

int cmd_solve(const tcoq::ExperimentConfig& config) {
  const tcoq::ExperimentOutcome outcome = tcoq::run_experiment(config);
  std::cout << "runs: " << outcome.runs << "\n"
            << "fval_min: " << outcome.fval_min << " (" << outcome.fval_min_source
            << ")\n"
            << "results: " << outcome.results_csv.string() << "\n";
  return 0;
}

int cmd_brute(const std::string& manifest, int cap, const std::string& out_dir) {
  const tcoq::io::Dataset data = tcoq::io::load_dataset(manifest);
  const tcoq::QuadraticForm form = tcoq::expand(data.spec);
  const tcoq::Assignment best = tcoq::brute_force(form, cap);
  std::printf("mask=%s fval=%.10g\n", tcoq::io::selection_mask(best.z).c_str(),
              best.fval);
  if (!out_dir.empty()) {
    tcoq::io::RunSummary summary;
    summary.dataset = data.name;
    summary.algorithm = "brute";
    summary.best_fval = best.fval;
    summary.num_eva = 1L << data.spec.size();
    summary.mask = tcoq::io::selection_mask(best.z);
    summary.fval_min = best.fval;
    summary.fval_min_source = "exact";
    std::filesystem::create_directories(out_dir);
    tcoq::io::write_run_summary(summary,
                                std::filesystem::path(out_dir) /
                                    (data.name + "_brute.json"));
  }
  return 0;
}

int cmd_gen(std::size_t n, std::size_t eff, std::size_t cost,
            const tcoq::io::GenParams& params, std::uint64_t seed,
            const std::string& name, const std::string& out_dir) {
  const tcoq::io::SyntheticDataset data =
      tcoq::io::generate_synthetic(n, eff, cost, params, seed, name);
  tcoq::io::write_synthetic(data, out_dir);
  std::cout << (std::filesystem::path(out_dir) / (name + ".manifest")).string()
            << "\n";
  return 0;
}

int cmd_stats(const std::string& input, const std::string& group_by,
              const std::string& metric, std::string out) {
  const tcoq::GroupedComparison comparison =
      tcoq::compare_results(input, group_by, metric);
  std::cout << tcoq::render_comparison(comparison);
  if (out.empty()) out = input + ".report.json";
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + out);
  file << tcoq::comparison_to_json(comparison) << "\n";
  std::cout << "report: " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Test-suite selection workbench: QAOA decomposition solver, "
               "classical baselines, dataset tools, and rank statistics"};
  app.require_subcommand(1);

  tcoq::ExperimentConfig config;
  std::string manifest;
  std::string algo = "loch";
  std::string out_dir = "results";

  auto* solve = app.add_subcommand("solve", "run a solver sweep on a dataset");
  solve->add_option("--manifest", manifest, "dataset manifest path")->required();
  solve->add_option("--algo", algo, "loch|div|ga|rs|qaoa-direct|brute");
  solve->add_option("--N", config.sub_sizes, "sub-problem sizes to sweep");
  solve->add_option("--p", config.depths, "QAOA depths to sweep");
  solve->add_option("--pop", config.pop_sizes, "GA population sizes to sweep");
  solve->add_option("--reps", config.repetitions, "runs per sweep cell");
  solve->add_option("--iters", config.rs_iterations, "random-search draws per run");
  solve->add_option("--runs", config.div_total_runs, "div: QAOA executions per run");
  solve->add_option("--ga-budget", config.ga_budget, "GA objective evaluations");
  solve->add_option("--shots", config.shots, "measurements per QAOA execution");
  solve->add_option("--opt-budget", config.optimizer_budget,
                    "objective evaluations per angle search");
  solve->add_option("--seed", config.base_seed, "base seed for the batch");
  solve->add_option("--brute-cap", config.brute_cap,
                    "exact reference minimum up to this size");
  solve->add_option("--workers", config.workers,
                    "worker threads (default: TCOQ_WORKERS or all cores)");
  solve->add_option("--out", out_dir, "output directory");

  std::size_t gen_n = 16;
  std::size_t gen_eff = 1;
  std::size_t gen_cost = 1;
  std::uint64_t gen_seed = 42;
  std::string gen_name;
  tcoq::io::GenParams params;
  params.minimize_size = true;
  bool tcs = false;

  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  gen->add_option("--n", gen_n, "test case count")->required();
  gen->add_option("--eff", gen_eff, "effectiveness group count");
  gen->add_option("--cost", gen_cost, "cost group count");
  gen->add_option("--zero-frac", params.eff_zero_fraction,
                  "fraction of zero effectiveness values");
  gen->add_option("--cost-lo", params.cost_lo, "cost range lower bound");
  gen->add_option("--cost-hi", params.cost_hi, "cost range upper bound");
  gen->add_flag("--tcs", tcs, "plain selection problem (no size objective)");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--name", gen_name, "dataset name (default synth_n<n>_s<seed>)");
  gen->add_option("--out", out_dir, "output directory");

  std::string stats_input;
  std::string group_by = "algorithm";
  std::string metric = "ar";
  std::string stats_out;

  auto* stats = app.add_subcommand("stats", "compare groups of a results CSV");
  stats->add_option("--input", stats_input, "results CSV path")->required();
  stats->add_option("--groupby", group_by, "dataset|algorithm|N|p|pop_size");
  stats->add_option("--metric", metric, "ar|fval|numEva");
  stats->add_option("--out", stats_out, "report JSON path");

  auto* brute = app.add_subcommand("brute", "exact minimum of a dataset");
  brute->add_option("--manifest", manifest, "dataset manifest path")->required();
  brute->add_option("--brute-cap", config.brute_cap, "variable limit");
  std::string brute_out;
  brute->add_option("--out", brute_out, "optional summary output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      config.manifest = manifest;
      config.algo = tcoq::parse_algo(algo);
      config.out_dir = out_dir;
      return cmd_solve(config);
    }
    if (gen->parsed()) {
      if (tcs) params.minimize_size = false;
      if (gen_name.empty())
        gen_name = "synth_n" + std::to_string(gen_n) + "_s" + std::to_string(gen_seed);
      return cmd_gen(gen_n, gen_eff, gen_cost, params, gen_seed, gen_name, out_dir);
    }
    if (stats->parsed()) return cmd_stats(stats_input, group_by, metric, stats_out);
    if (brute->parsed()) return cmd_brute(manifest, config.brute_cap, brute_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
