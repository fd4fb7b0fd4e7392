#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tcoq/ising.hpp"

namespace tcoq::io {

/// A parsed CSV table: header plus rows, all fields as strings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::optional<std::size_t> column(const std::string& name) const;
};

/// Strict RFC-4180 parser (quoted fields, doubled-quote escapes, CRLF or LF
/// line ends). The first record is the header; ragged rows are rejected.
CsvTable parse_csv(const std::string& text);

/// Quote a field only when it needs quoting.
std::string csv_escape(const std::string& field);

/// A dataset loaded through a manifest.
struct Dataset {
  std::string name;
  std::vector<std::string> ids;
  ProblemSpec spec;
};

/// Load a dataset described by a manifest file. The manifest is line-based
/// `key = value` text with `#` comments:
///
///   name = paintcontrol
///   csv = paintcontrol.csv          (path relative to the manifest)
///   id_column = id                  (optional; row numbers otherwise)
///   problem = tcm                   (tcs, or tcm to also minimize size)
///   attribute = duration, cost      (column, kind[, weight]; repeatable)
///   attribute = failures / executions, effectiveness
///
/// A `num / den` column expression derives a per-row rate from two raw
/// history columns; the denominator must be positive on every row. Weights
/// default to equal. Validation failures throw with a row/line diagnostic.
Dataset load_dataset(const std::filesystem::path& manifest_path);

/// Synthetic instance generator parameters. Effectiveness values are drawn
/// uniformly (optionally zero-inflated), cost values log-uniformly.
struct GenParams {
  double eff_lo = 0.0;
  double eff_hi = 1.0;
  double eff_zero_fraction = 0.0;
  double cost_lo = 0.1;
  double cost_hi = 100.0;
  bool minimize_size = false;
};

struct SyntheticDataset {
  std::string name;
  std::string csv;       // file body for <name>.csv
  std::string manifest;  // file body for <name>.manifest
  ProblemSpec spec;      // identical to loading the two files back
};

/// Deterministic: one seed, one byte sequence. Values are quantized to the
/// precision written to the CSV, so the returned spec and a reload of the
/// written files agree exactly.
SyntheticDataset generate_synthetic(std::size_t n, std::size_t eff_groups,
                                    std::size_t cost_groups,
                                    const GenParams& params, std::uint64_t seed,
                                    const std::string& name);

/// Write a synthetic dataset's two files into a directory.
void write_synthetic(const SyntheticDataset& data,
                     const std::filesystem::path& dir);

/// One row of the run-results table (one solver trace entry).
struct ResultRow {
  std::string dataset;
  std::string algorithm;
  int sub_size = 0;  // 0 renders as an empty column
  int depth = 0;
  int pop_size = 0;
  std::uint64_t seed = 0;
  int iteration = 0;
  double fval = 0.0;
  double ar = 0.0;
  long num_eva = 0;
  double qaoa_ms = 0.0;
  double classical_ms = 0.0;
};

/// Append rows to a results CSV, writing the fixed header first when the
/// file is new or empty. Doubles are printed round-trip exact.
void write_results(const std::vector<ResultRow>& rows,
                   const std::filesystem::path& path);

std::vector<ResultRow> read_results(const std::filesystem::path& path);

/// Selection mask of an assignment: character i is '1' when variable i is
/// selected (spin -1).
std::string selection_mask(std::span<const spin_t> z);

/// Per-run summary written next to the results CSV.
struct RunSummary {
  std::string dataset;
  std::string algorithm;
  int sub_size = 0;
  int depth = 0;
  int pop_size = 0;
  std::uint64_t seed = 0;
  double best_fval = 0.0;
  long num_eva = 0;
  std::string mask;
  double fval_min = 0.0;
  std::string fval_min_source;  // "exact" or "best-known"
  double qaoa_ms = 0.0;
  double classical_ms = 0.0;
};

void write_run_summary(const RunSummary& summary,
                       const std::filesystem::path& path);

}  // namespace tcoq::io
