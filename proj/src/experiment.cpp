#include "tcoq/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "tcoq/baselines.hpp"
#include "tcoq/loch.hpp"
#include "tcoq/rng.hpp"

namespace tcoq {

Algo parse_algo(const std::string& name) {
  if (name == "loch") return Algo::Loch;
  if (name == "div") return Algo::Div;
  if (name == "ga") return Algo::Ga;
  if (name == "rs") return Algo::Rs;
  if (name == "qaoa-direct") return Algo::QaoaDirect;
  if (name == "brute") return Algo::Brute;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::Loch: return "loch";
    case Algo::Div: return "div";
    case Algo::Ga: return "ga";
    case Algo::Rs: return "rs";
    case Algo::QaoaDirect: return "qaoa-direct";
    case Algo::Brute: return "brute";
  }
  return "?";
}

namespace {

struct Cell {
  int sub_size = 0;
  int depth = 0;
  int pop_size = 0;
};

std::vector<Cell> build_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  switch (config.algo) {
    case Algo::Loch:
    case Algo::Div:
      for (int n : config.sub_sizes)
        for (int p : config.depths) cells.push_back({n, p, 0});
      break;
    case Algo::QaoaDirect:
      for (int p : config.depths) cells.push_back({0, p, 0});
      break;
    case Algo::Ga:
      for (int pop : config.pop_sizes) cells.push_back({0, 0, pop});
      break;
    case Algo::Rs:
    case Algo::Brute:
      cells.push_back({});
      break;
  }
  if (cells.empty()) throw std::invalid_argument("empty parameter sweep");
  return cells;
}

int worker_count(const ExperimentConfig& config, std::size_t jobs) {
  int workers = config.workers;
  if (workers <= 0) {
    if (const char* env = std::getenv("TCOQ_WORKERS")) workers = std::atoi(env);
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  return static_cast<int>(std::min<std::size_t>(workers, jobs));
}

RunRecord run_one(const ExperimentConfig& config, const io::Dataset& data,
                  const QuadraticForm& form, const Cell& cell,
                  std::uint64_t seed) {
  QaoaConfig qaoa;
  qaoa.depth = cell.depth > 0 ? cell.depth : 1;
  qaoa.shots = config.shots;
  qaoa.optimizer_budget = config.optimizer_budget;
  qaoa.seed = seed;

  switch (config.algo) {
    case Algo::Loch: {
      LochConfig lc;
      lc.sub_size = cell.sub_size;
      lc.qaoa = qaoa;
      lc.seed = seed;
      return solve(form, lc);
    }
    case Algo::Div: {
      DivQaoaConfig dc;
      dc.sub_size = cell.sub_size;
      dc.total_runs = config.div_total_runs;
      dc.qaoa = qaoa;
      dc.seed = seed;
      return div_qaoa(form, dc);
    }
    case Algo::Ga: {
      GaConfig gc;
      gc.pop_size = cell.pop_size;
      gc.eval_budget = config.ga_budget;
      gc.seed = seed;
      return ga_minimize(data.spec, gc);
    }
    case Algo::Rs:
      return random_search(form, config.rs_iterations, seed);
    case Algo::QaoaDirect: {
      const auto t0 = std::chrono::steady_clock::now();
      const QaoaResult qr = run_qaoa(form, qaoa);
      RunRecord record;
      record.seed = seed;
      record.best_fval = qr.best_energy + form.constant();
      record.best_z = decode(qr.best_bitstring, static_cast<int>(form.size()));
      record.num_eva = 1;
      record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - t0);
      record.qaoa_time = record.wall_time;
      record.trace.push_back(
          {1, record.best_fval, 1, record.wall_time, record.qaoa_time});
      return record;
    }
    case Algo::Brute: {
      const auto t0 = std::chrono::steady_clock::now();
      const Assignment best = brute_force(form, config.brute_cap);
      RunRecord record;
      record.seed = seed;
      record.best_fval = best.fval;
      record.best_z = best.z;
      record.num_eva = 1L << form.size();
      record.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - t0);
      record.trace.push_back({1, best.fval, record.num_eva, record.wall_time,
                              std::chrono::nanoseconds{0}});
      return record;
    }
  }
  throw std::logic_error("unreachable");
}

double ms(std::chrono::nanoseconds t) {
  return static_cast<double>(t.count()) / 1e6;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  if (config.repetitions < 1)
    throw std::invalid_argument("repetitions must be at least 1");
  if (config.out_dir.empty())
    throw std::invalid_argument("output directory required");
  const io::Dataset data = io::load_dataset(config.manifest);
  const QuadraticForm form = expand(data.spec);
  std::filesystem::create_directories(config.out_dir);

  const std::vector<Cell> cells = build_cells(config);
  const int reps = config.algo == Algo::Brute ? 1 : config.repetitions;
  const std::size_t total = cells.size() * static_cast<std::size_t>(reps);

  std::vector<RunRecord> records(total);
  std::vector<std::string> errors(total);
  std::atomic<std::size_t> cursor{0};
  const int workers = worker_count(config, total);

  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= total) return;
      const Cell& cell = cells[i / reps];
      try {
        records[i] = run_one(config, data, form, cell,
                             derive_seed(config.base_seed, i));
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < total; ++i)
    if (!errors[i].empty())
      throw std::runtime_error("run " + std::to_string(i) + " failed: " + errors[i]);

  ExperimentOutcome outcome;
  outcome.runs = total;
  if (data.spec.size() <= static_cast<std::size_t>(config.brute_cap)) {
    outcome.fval_min = brute_force(form, config.brute_cap).fval;
    outcome.fval_min_source = "exact";
  } else {
    outcome.fval_min = records[0].best_fval;
    for (const RunRecord& r : records)
      outcome.fval_min = std::min(outcome.fval_min, r.best_fval);
    outcome.fval_min_source = "best-known";
  }
  if (!(outcome.fval_min > 0.0))
    throw std::runtime_error("reference minimum is not positive; "
                             "approximation ratios are undefined");

  const bool uses_qaoa = config.algo == Algo::Loch || config.algo == Algo::Div ||
                         config.algo == Algo::QaoaDirect;
  std::vector<io::ResultRow> rows;
  for (std::size_t i = 0; i < total; ++i) {
    const Cell& cell = cells[i / reps];
    const RunRecord& record = records[i];
    for (const TraceEntry& entry : record.trace) {
      io::ResultRow row;
      row.dataset = data.name;
      row.algorithm = algo_name(config.algo);
      row.sub_size = cell.sub_size;
      row.depth = uses_qaoa ? cell.depth : 0;
      row.pop_size = cell.pop_size;
      row.seed = record.seed;
      row.iteration = entry.iteration;
      row.fval = entry.fval;
      row.ar = entry.fval / outcome.fval_min;
      row.num_eva = entry.num_eva;
      row.qaoa_ms = ms(entry.qaoa_time);
      row.classical_ms = ms(entry.elapsed - entry.qaoa_time);
      rows.push_back(std::move(row));
    }

    io::RunSummary summary;
    summary.dataset = data.name;
    summary.algorithm = algo_name(config.algo);
    summary.sub_size = cell.sub_size;
    summary.pop_size = cell.pop_size;
    summary.depth = uses_qaoa ? cell.depth : 0;
    summary.seed = record.seed;
    summary.best_fval = record.best_fval;
    summary.num_eva = record.num_eva;
    summary.mask = io::selection_mask(record.best_z);
    summary.fval_min = outcome.fval_min;
    summary.fval_min_source = outcome.fval_min_source;
    summary.qaoa_ms = ms(record.qaoa_time);
    summary.classical_ms = ms(record.wall_time - record.qaoa_time);

    std::ostringstream name;
    name << data.name << '_' << algo_name(config.algo);
    if (cell.sub_size) name << "_N" << cell.sub_size;
    if (summary.depth) name << "_p" << summary.depth;
    if (cell.pop_size) name << "_pop" << cell.pop_size;
    name << "_seed" << record.seed << ".json";
    io::write_run_summary(summary, config.out_dir / name.str());
  }

  outcome.results_csv = config.out_dir / "results.csv";
  io::write_results(rows, outcome.results_csv);
  return outcome;
}

GroupedComparison compare_results(const std::filesystem::path& results_csv,
                                  const std::string& group_by,
                                  const std::string& metric) {
  const std::vector<io::ResultRow> rows = io::read_results(results_csv);
  if (rows.empty()) throw std::runtime_error("results file has no rows");

  auto group_key = [&](const io::ResultRow& r) -> std::string {
    if (group_by == "dataset") return r.dataset;
    if (group_by == "algorithm") return r.algorithm;
    if (group_by == "N") return std::to_string(r.sub_size);
    if (group_by == "p") return std::to_string(r.depth);
    if (group_by == "pop_size") return std::to_string(r.pop_size);
    throw std::invalid_argument("cannot group by '" + group_by + "'");
  };
  auto metric_value = [&](const io::ResultRow& r) -> double {
    if (metric == "ar") return r.ar;
    if (metric == "fval") return r.fval;
    if (metric == "numEva") return static_cast<double>(r.num_eva);
    throw std::invalid_argument("unknown metric '" + metric + "'");
  };

  // Keep each run's final trace row: the highest iteration per run key.
  std::map<std::string, const io::ResultRow*> finals;
  for (const io::ResultRow& r : rows) {
    std::ostringstream key;
    key << r.dataset << '|' << r.algorithm << '|' << r.sub_size << '|'
        << r.depth << '|' << r.pop_size << '|' << r.seed;
    auto [it, inserted] = finals.try_emplace(key.str(), &r);
    if (!inserted && r.iteration > it->second->iteration) it->second = &r;
  }

  std::map<std::string, std::vector<double>> by_group;
  for (const auto& [key, row] : finals)
    by_group[group_key(*row)].push_back(metric_value(*row));

  GroupedComparison comparison;
  for (auto& [name, values] : by_group) {
    std::sort(values.begin(), values.end());
    comparison.groups.emplace_back(name, std::move(values));
  }
  if (comparison.groups.size() < 2)
    throw std::runtime_error("grouping by '" + group_by +
                             "' yields a single group; nothing to compare");
  comparison.report = stats::compare_groups(comparison.groups);
  return comparison;
}

std::string render_comparison(const GroupedComparison& comparison) {
  std::ostringstream out;
  out << "groups:";
  for (const auto& [name, values] : comparison.groups) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    out << "  " << name << " (n=" << values.size() << ", mean=" << mean << ")";
  }
  out << "\nkruskal-wallis: H=" << comparison.report.kw.h
      << " p=" << comparison.report.kw.p
      << (comparison.report.kw.p < comparison.report.alpha
              ? " (significant at 0.05)"
              : " (not significant at 0.05)")
      << "\n";
  for (const auto& pc : comparison.report.pairwise)
    out << pc.group_a << " vs " << pc.group_b << ": U=" << pc.u
        << " p=" << pc.p << " A12=" << pc.a12 << "\n";
  return out.str();
}

std::string comparison_to_json(const GroupedComparison& comparison) {
  nlohmann::json j;
  j["alpha"] = comparison.report.alpha;
  for (const auto& [name, values] : comparison.groups)
    j["groups"][name] = values;
  j["kruskal_wallis"] = {{"H", comparison.report.kw.h},
                         {"p", comparison.report.kw.p}};
  j["pairwise"] = nlohmann::json::array();
  for (const auto& pc : comparison.report.pairwise)
    j["pairwise"].push_back({{"a", pc.group_a},
                             {"b", pc.group_b},
                             {"U", pc.u},
                             {"p", pc.p},
                             {"A12", pc.a12}});
  return j.dump(2);
}

}  // namespace tcoq
