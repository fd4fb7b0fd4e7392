#include "tcoq/dataio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "tcoq/rng.hpp"

namespace tcoq::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& where) {
  const std::string t = trim(field);
  if (t.empty()) fail(where + ": empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    fail(where + ": not a number: '" + field + "'");
  if (!std::isfinite(v)) fail(where + ": non-finite value: '" + field + "'");
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == name) return c;
  return std::nullopt;
}

CsvTable parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_was_quoted = false;

  const auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  const auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted)
          fail("csv: stray quote inside an unquoted field");
        quoted = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 >= text.size() || text[i + 1] != '\n')
          fail("csv: bare carriage return");
        break;
      case '\n':
        end_record();
        break;
      default:
        if (field_was_quoted) fail("csv: content after a closing quote");
        field += c;
    }
  }
  if (quoted) fail("csv: unterminated quoted field");
  if (!field.empty() || field_was_quoted || !record.empty()) end_record();

  if (records.empty()) fail("csv: missing header record");
  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size())
      fail("csv: row " + std::to_string(r) + " has " +
           std::to_string(records[r].size()) + " fields, header has " +
           std::to_string(table.header.size()));
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

struct AttributeDecl {
  std::string column;                // value column, or ratio numerator
  std::optional<std::string> denom;  // ratio denominator
  GroupKind kind{GroupKind::Effectiveness};
  std::optional<double> weight;
};

struct Manifest {
  std::string name;
  std::string csv;
  std::optional<std::string> id_column;
  bool minimize_size = false;
  std::vector<AttributeDecl> attributes;
};

Manifest parse_manifest(const std::string& text,
                        const std::string& where) {
  Manifest m;
  bool have_problem = false;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string at = where + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(at + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) fail(at + ": empty value for '" + key + "'");

    if (key == "name") {
      m.name = value;
    } else if (key == "csv") {
      m.csv = value;
    } else if (key == "id_column") {
      m.id_column = value;
    } else if (key == "problem") {
      if (value == "tcs") m.minimize_size = false;
      else if (value == "tcm") m.minimize_size = true;
      else fail(at + ": problem must be 'tcs' or 'tcm'");
      have_problem = true;
    } else if (key == "attribute") {
      std::vector<std::string> parts;
      std::istringstream pstream(value);
      std::string part;
      while (std::getline(pstream, part, ',')) parts.push_back(trim(part));
      if (parts.size() < 2 || parts.size() > 3)
        fail(at + ": attribute needs 'column, kind[, weight]'");
      AttributeDecl decl;
      const auto slash = parts[0].find('/');
      if (slash != std::string::npos) {
        decl.column = trim(parts[0].substr(0, slash));
        decl.denom = trim(parts[0].substr(slash + 1));
        if (decl.column.empty() || decl.denom->empty())
          fail(at + ": ratio needs 'numerator / denominator'");
      } else {
        decl.column = parts[0];
      }
      if (parts[1] == "effectiveness") decl.kind = GroupKind::Effectiveness;
      else if (parts[1] == "cost") decl.kind = GroupKind::Cost;
      else fail(at + ": kind must be 'effectiveness' or 'cost'");
      if (parts.size() == 3) decl.weight = parse_number(parts[2], at);
      m.attributes.push_back(std::move(decl));
    } else {
      fail(at + ": unknown key '" + key + "'");
    }
  }
  if (m.name.empty()) fail(where + ": manifest must set 'name'");
  if (m.csv.empty()) fail(where + ": manifest must set 'csv'");
  if (!have_problem) fail(where + ": manifest must set 'problem'");
  if (m.attributes.empty()) fail(where + ": manifest declares no attributes");
  return m;
}

std::vector<double> extract_column(const CsvTable& table,
                                   const AttributeDecl& decl,
                                   const std::string& where) {
  const auto num = table.column(decl.column);
  if (!num) fail(where + ": csv has no column '" + decl.column + "'");
  std::optional<std::size_t> den;
  if (decl.denom) {
    den = table.column(*decl.denom);
    if (!den) fail(where + ": csv has no column '" + *decl.denom + "'");
  }
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string at = where + ": row " + std::to_string(r + 1);
    double v = parse_number(table.rows[r][*num], at);
    if (den) {
      const double d = parse_number(table.rows[r][*den], at);
      if (!(d > 0.0))
        fail(at + ": denominator '" + *decl.denom + "' must be positive");
      v /= d;
    }
    if (v < 0.0) fail(at + ": negative attribute value");
    values.push_back(v);
  }
  return values;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& manifest_path) {
  const std::string where = manifest_path.filename().string();
  const Manifest manifest = parse_manifest(read_file(manifest_path), where);
  const std::filesystem::path csv_path =
      manifest_path.parent_path() / manifest.csv;
  const CsvTable table = parse_csv(read_file(csv_path));
  if (table.rows.empty()) fail(where + ": csv has no data rows");

  std::vector<std::string> ids;
  if (manifest.id_column) {
    const auto idc = table.column(*manifest.id_column);
    if (!idc) fail(where + ": csv has no column '" + *manifest.id_column + "'");
    for (const auto& row : table.rows) ids.push_back(row[*idc]);
    auto sorted = ids;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(where + ": duplicate test case ids");
  } else {
    for (std::size_t r = 0; r < table.rows.size(); ++r)
      ids.push_back(std::to_string(r));
  }

  const bool any_weight = std::any_of(
      manifest.attributes.begin(), manifest.attributes.end(),
      [](const AttributeDecl& a) { return a.weight.has_value(); });
  std::vector<AttributeGroup> groups;
  for (const AttributeDecl& decl : manifest.attributes) {
    AttributeGroup g;
    g.kind = decl.kind;
    g.values = extract_column(table, decl, where);
    g.weight = decl.weight.value_or(1.0);
    if (any_weight && !decl.weight)
      fail(where + ": either weight every attribute or none");
    groups.push_back(std::move(g));
  }
  return Dataset{manifest.name, std::move(ids),
                 ProblemSpec::create(table.rows.size(), std::move(groups),
                                     manifest.minimize_size)};
}

SyntheticDataset generate_synthetic(std::size_t n, std::size_t eff_groups,
                                    std::size_t cost_groups,
                                    const GenParams& params, std::uint64_t seed,
                                    const std::string& name) {
  if (n == 0) fail("generator: n must be positive");
  if (eff_groups + cost_groups == 0)
    fail("generator: need at least one attribute group");
  if (params.eff_lo < 0.0 || params.eff_hi < params.eff_lo ||
      !(params.cost_lo > 0.0) || params.cost_hi < params.cost_lo ||
      params.eff_zero_fraction < 0.0 || params.eff_zero_fraction > 1.0)
    fail("generator: invalid distribution parameters");
  if (name.empty() || name.find_first_of(",/\\\" \t\n") != std::string::npos)
    fail("generator: dataset name must be a plain token");

  Rng rng(seed);
  const auto quantize = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::strtod(buf, nullptr);
  };

  std::vector<AttributeGroup> groups;
  for (std::size_t g = 0; g < eff_groups; ++g) {
    AttributeGroup grp;
    grp.kind = GroupKind::Effectiveness;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = 0.0;
      if (rng.uniform01() >= params.eff_zero_fraction)
        v = quantize(rng.uniform(params.eff_lo, params.eff_hi));
      sum += v;
      grp.values.push_back(v);
    }
    if (!(sum > 0.0))
      grp.values[0] = quantize(0.5 * (params.eff_lo + params.eff_hi));
    if (!(grp.values[0] > 0.0) && !(sum > 0.0))
      fail("generator: effectiveness range collapses to zero");
    groups.push_back(std::move(grp));
  }
  for (std::size_t g = 0; g < cost_groups; ++g) {
    AttributeGroup grp;
    grp.kind = GroupKind::Cost;
    for (std::size_t i = 0; i < n; ++i)
      grp.values.push_back(quantize(
          std::exp(rng.uniform(std::log(params.cost_lo), std::log(params.cost_hi)))));
    groups.push_back(std::move(grp));
  }

  std::ostringstream csv;
  csv << "id";
  for (std::size_t g = 0; g < eff_groups; ++g) csv << ",eff_" << g;
  for (std::size_t g = 0; g < cost_groups; ++g) csv << ",cost_" << g;
  csv << "\n";
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    csv << "t" << i;
    for (std::size_t g = 0; g < eff_groups + cost_groups; ++g) {
      std::snprintf(buf, sizeof(buf), "%.6f", groups[g].values[i]);
      csv << "," << buf;
    }
    csv << "\n";
  }

  std::ostringstream man;
  man << "name = " << name << "\n";
  man << "csv = " << name << ".csv\n";
  man << "id_column = id\n";
  man << "problem = " << (params.minimize_size ? "tcm" : "tcs") << "\n";
  for (std::size_t g = 0; g < eff_groups; ++g)
    man << "attribute = eff_" << g << ", effectiveness\n";
  for (std::size_t g = 0; g < cost_groups; ++g)
    man << "attribute = cost_" << g << ", cost\n";

  return SyntheticDataset{
      name, csv.str(), man.str(),
      ProblemSpec::create(n, std::move(groups), params.minimize_size)};
}

void write_synthetic(const SyntheticDataset& data,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& [suffix, body] :
       {std::pair{".csv", &data.csv}, std::pair{".manifest", &data.manifest}}) {
    const auto path = dir / (data.name + suffix);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write " + path.string());
    out << *body;
  }
}

namespace {

constexpr const char* kResultsHeader =
    "dataset,algorithm,N,p,pop_size,seed,iteration,fval,ar,numEva,qaoa_ms,classical_ms";

std::string optional_int(int v) { return v == 0 ? "" : std::to_string(v); }

}  // namespace

void write_results(const std::vector<ResultRow>& rows,
                   const std::filesystem::path& path) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) fail("cannot write " + path.string());
  if (fresh) out << kResultsHeader << "\n";
  for (const ResultRow& r : rows) {
    out << csv_escape(r.dataset) << ',' << csv_escape(r.algorithm) << ','
        << optional_int(r.sub_size) << ',' << optional_int(r.depth) << ','
        << optional_int(r.pop_size) << ',' << r.seed << ',' << r.iteration
        << ',' << format_double(r.fval) << ',' << format_double(r.ar) << ','
        << r.num_eva << ',' << format_double(r.qaoa_ms) << ','
        << format_double(r.classical_ms) << "\n";
  }
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  const CsvTable table = parse_csv(read_file(path));
  std::ostringstream expect;
  for (std::size_t c = 0; c < table.header.size(); ++c)
    expect << (c ? "," : "") << table.header[c];
  if (expect.str() != kResultsHeader)
    fail(path.string() + ": unexpected results header");

  std::vector<ResultRow> rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& f = table.rows[r];
    const std::string at = path.filename().string() + ": row " + std::to_string(r + 1);
    ResultRow row;
    row.dataset = f[0];
    row.algorithm = f[1];
    row.sub_size = f[2].empty() ? 0 : static_cast<int>(parse_number(f[2], at));
    row.depth = f[3].empty() ? 0 : static_cast<int>(parse_number(f[3], at));
    row.pop_size = f[4].empty() ? 0 : static_cast<int>(parse_number(f[4], at));
    row.seed = std::strtoull(f[5].c_str(), nullptr, 10);
    row.iteration = static_cast<int>(parse_number(f[6], at));
    row.fval = parse_number(f[7], at);
    row.ar = parse_number(f[8], at);
    row.num_eva = static_cast<long>(parse_number(f[9], at));
    row.qaoa_ms = parse_number(f[10], at);
    row.classical_ms = parse_number(f[11], at);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string selection_mask(std::span<const spin_t> z) {
  std::string mask(z.size(), '0');
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] == -1) mask[i] = '1';
  return mask;
}

void write_run_summary(const RunSummary& summary,
                       const std::filesystem::path& path) {
  nlohmann::json j;
  j["dataset"] = summary.dataset;
  j["algorithm"] = summary.algorithm;
  nlohmann::json config;
  if (summary.sub_size) config["N"] = summary.sub_size;
  if (summary.depth) config["p"] = summary.depth;
  if (summary.pop_size) config["pop_size"] = summary.pop_size;
  j["config"] = config;
  j["seed"] = summary.seed;
  j["best_fval"] = summary.best_fval;
  j["numEva"] = summary.num_eva;
  j["selection_mask"] = summary.mask;
  j["fval_min"] = summary.fval_min;
  j["fval_min_source"] = summary.fval_min_source;
  j["qaoa_ms"] = summary.qaoa_ms;
  j["classical_ms"] = summary.classical_ms;
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace tcoq::io
