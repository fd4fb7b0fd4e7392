// Writes the bundled stand-in datasets. The upstream industrial suites are
// not redistributable, so the repository ships deterministic synthetic
// stand-ins of the same shape: same row counts, same column style (raw
// failure/execution history or precomputed rates), and value distributions
// coarse enough to behave like real CI history. Re-running this tool
// reproduces data/ byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "tcoq/rng.hpp"

namespace {

using tcoq::Rng;

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    std::exit(2);
  }
  out << body;
}

std::string format(const char* fmt, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

// CI suite with raw execution history: per test a duration bucket plus
// failure/execution counts. Failure rates fall into a few recurring classes,
// as they do in real regression history where the same flaky tests fail at
// steady rates; `never_fails` of the suite has a clean record. Execution
// counts are multiples of ten so every class rate is exactly representable.
std::string history_csv(std::size_t n, std::uint64_t seed, double never_fails,
                        int rate_classes, double rate_lo, double rate_hi,
                        const std::vector<long>& durations) {
  Rng rng(seed);
  std::ostringstream csv;
  csv << "id,duration,failures,executions\n";
  for (std::size_t i = 0; i < n; ++i) {
    const long executions = 10 * (2 + static_cast<long>(rng.below(19)));
    const long duration = durations[rng.below(durations.size())];
    long failures = 0;
    if (rng.uniform01() >= never_fails) {
      const int c = static_cast<int>(rng.below(rate_classes));
      const double rate =
          rate_classes == 1
              ? rate_lo
              : rate_lo + (rate_hi - rate_lo) * c / (rate_classes - 1);
      failures = std::lround(rate * static_cast<double>(executions));
    }
    csv << "tc" << i << "," << duration << "," << failures << ","
        << executions << "\n";
  }
  return csv.str();
}

std::string history_manifest(const std::string& name) {
  std::ostringstream man;
  man << "# Synthetic stand-in for a CI test suite with execution history.\n"
      << "name = " << name << "\n"
      << "csv = " << name << ".csv\n"
      << "id_column = id\n"
      << "problem = tcm\n"
      << "attribute = failures / executions, effectiveness\n"
      << "attribute = duration, cost\n";
  return man.str();
}

// Large suite with precomputed failure rates. Exactly `zeros` of the n rows
// never failed (the bulk of the suite); the rest fall into the usual rate
// classes.
std::string sparse_rate_csv(std::size_t n, std::uint64_t seed,
                            std::size_t zeros) {
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(i + 1)]);
  std::vector<char> is_zero(n, 0);
  for (std::size_t i = 0; i < zeros; ++i) is_zero[order[i]] = 1;

  const long durations[] = {15, 20, 30};
  std::ostringstream csv;
  csv << "id,duration,failure_rate\n";
  for (std::size_t i = 0; i < n; ++i) {
    const long duration = durations[rng.below(3)];
    double rate = 0.0;
    if (!is_zero[i]) rate = 0.5 + 0.2 * static_cast<double>(rng.below(3));
    csv << "tc" << i << "," << duration << "," << format("%.1f", rate) << "\n";
  }
  return csv.str();
}

// Simulation-driven suite scored by scenario diversity rather than failure
// history. Two manifests select different objective subsets of the same CSV.
std::string scenario_csv(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::ostringstream csv;
  csv << "id,execution_time,input_diversity,passenger_count,travel_distance\n";
  for (std::size_t i = 0; i < n; ++i) {
    const double time = std::exp(rng.uniform(std::log(10.0), std::log(600.0)));
    const double diversity = rng.uniform01();
    const long passengers = 1 + static_cast<long>(rng.below(30));
    const double distance = std::exp(rng.uniform(std::log(5.0), std::log(300.0)));
    csv << "tc" << i << "," << format("%.2f", time) << ","
        << format("%.4f", diversity) << "," << passengers << ","
        << format("%.2f", distance) << "\n";
  }
  return csv.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);

  write_file(dir / "running_example.csv",
             "id,failure_rate,duration\n"
             "tc0,0.5,3\n"
             "tc1,0.7,6\n"
             "tc2,0.8,1\n");
  write_file(dir / "running_example.manifest",
             "# Three-test example used throughout the test suite.\n"
             "name = running_example\n"
             "csv = running_example.csv\n"
             "id_column = id\n"
             "problem = tcm\n"
             "attribute = failure_rate, effectiveness\n"
             "attribute = duration, cost\n");

  write_file(dir / "paintcontrol.csv",
             history_csv(90, 0x70c1, 0.22, 3, 0.5, 0.9, {15, 20}));
  write_file(dir / "paintcontrol.manifest", history_manifest("paintcontrol"));

  write_file(dir / "iofrol.csv",
             history_csv(1941, 0x10f2, 0.55, 3, 0.5, 0.9, {10, 30, 60}));
  write_file(dir / "iofrol.manifest", history_manifest("iofrol"));

  write_file(dir / "gsdtsr.csv", sparse_rate_csv(5555, 0x95d3, 5266));
  write_file(dir / "gsdtsr.manifest",
             "# Synthetic stand-in for a very large suite; failure rates are\n"
             "# precomputed and almost all zero.\n"
             "name = gsdtsr\n"
             "csv = gsdtsr.csv\n"
             "id_column = id\n"
             "problem = tcm\n"
             "attribute = failure_rate, effectiveness\n"
             "attribute = duration, cost\n");

  write_file(dir / "elevator.csv", scenario_csv(1925, 0xe1e4));
  write_file(dir / "elevator_o2.manifest",
             "# Scenario suite, two objectives: cheap to run, diverse inputs.\n"
             "name = elevator_o2\n"
             "csv = elevator.csv\n"
             "id_column = id\n"
             "problem = tcs\n"
             "attribute = execution_time, cost\n"
             "attribute = input_diversity, effectiveness\n");
  write_file(dir / "elevator_o3.manifest",
             "# Scenario suite, three objectives: cheap to run, heavy load,\n"
             "# long travel.\n"
             "name = elevator_o3\n"
             "csv = elevator.csv\n"
             "id_column = id\n"
             "problem = tcs\n"
             "attribute = execution_time, cost\n"
             "attribute = passenger_count, effectiveness\n"
             "attribute = travel_distance, effectiveness\n");

  std::cout << "wrote stand-in datasets to " << dir.string() << "\n";
  return 0;
}
