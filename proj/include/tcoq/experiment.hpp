#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tcoq/dataio.hpp"
#include "tcoq/record.hpp"
#include "tcoq/stats.hpp"

namespace tcoq {

enum class Algo { Loch, Div, Ga, Rs, QaoaDirect, Brute };

Algo parse_algo(const std::string& name);
std::string algo_name(Algo algo);

/// One sweep over one dataset with one algorithm. Cells are the cartesian
/// product of the applicable sweep lists; every cell is repeated
/// `repetitions` times, and the i-th run overall draws seed
/// base_seed ^ splitmix64(i).
struct ExperimentConfig {
  std::filesystem::path manifest;
  Algo algo = Algo::Loch;
  int repetitions = 10;
  std::vector<int> sub_sizes = {7};   // loch, div
  std::vector<int> depths = {1};      // loch, div, qaoa-direct
  std::vector<int> pop_sizes = {10};  // ga
  long rs_iterations = 0;             // rs: draws per run
  long ga_budget = 400000;
  int div_total_runs = 0;             // div: QAOA executions per run
  int shots = 1024;
  int optimizer_budget = 100;
  std::uint64_t base_seed = 0;
  int brute_cap = 26;  // exact reference minimum up to this many variables
  int workers = 0;     // 0: TCOQ_WORKERS env var, else hardware concurrency
  std::filesystem::path out_dir;
};

struct ExperimentOutcome {
  std::filesystem::path results_csv;
  double fval_min = 0.0;
  std::string fval_min_source;  // "exact" or "best-known"
  std::size_t runs = 0;
};

/// Run the full sweep and write results.csv plus one JSON summary per run
/// into out_dir. The approximation-ratio denominator is the exact brute-force
/// minimum when the instance is small enough, otherwise the best value seen
/// across the batch.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// Group the final rows of a results CSV by a column and compare the chosen
/// metric across groups (omnibus + pairwise). group_by must be one of
/// dataset, algorithm, N, p, pop_size.
struct GroupedComparison {
  std::vector<std::pair<std::string, std::vector<double>>> groups;
  stats::ComparisonReport report;
};

GroupedComparison compare_results(const std::filesystem::path& results_csv,
                                  const std::string& group_by,
                                  const std::string& metric = "ar");

std::string render_comparison(const GroupedComparison& comparison);
std::string comparison_to_json(const GroupedComparison& comparison);

}  // namespace tcoq
