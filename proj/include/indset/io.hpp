#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "indset/deferred.hpp"
#include "indset/stats.hpp"

namespace indset {

inline constexpr const char* kSchemaLine = "# indset-rrg v1";
inline constexpr const char* kRunColumns = "d,N,seed,i_size,alpha,wall_ms";
inline constexpr const char* kTableColumns = "d,N,samples,mean,sd";

/// Malformed or insufficient input data (CLI exit code 3).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_g(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

inline void write_run_header(std::ostream& os) {
  os << kSchemaLine << '\n' << kRunColumns << '\n';
}

inline std::string format_run_row(const RunResult& r) {
  char wall[64];
  std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
  return std::to_string(r.degree) + ',' + std::to_string(r.n_vertices) + ',' +
         std::to_string(r.seed) + ',' + std::to_string(r.independent_size) +
         ',' + format_g(r.alpha, 9) + ',' + wall + '\n';
}

inline void write_table_header(std::ostream& os) {
  os << kSchemaLine << '\n' << kTableColumns << '\n';
}

inline std::string format_table_row(const TableRow& row) {
  return std::to_string(row.degree) + ',' + std::to_string(row.n_vertices) +
         ',' + std::to_string(row.samples) + ',' + format_g(row.mean, 9) + ',' +
         format_g(row.spread, 9) + '\n';
}

/// Contents of a results file: raw runs or published summary rows.
struct ResultsFile {
  enum class Kind { kRuns, kTable } kind = Kind::kRuns;
  std::vector<RunResult> runs;
  std::vector<TableRow> rows;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw DataError(where + ": bad integer '" + s + "'");
  }
  if (used != s.size()) throw DataError(where + ": bad integer '" + s + "'");
  return v;
}

inline double parse_double(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw DataError(where + ": bad number '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw DataError(where + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace detail

/// Reads either CSV schema; the column header line decides which.
inline ResultsFile read_results(std::istream& in) {
  ResultsFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_columns = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# indset-rrg ", 0) == 0 && line != kSchemaLine) {
        throw DataError("unsupported schema: " + line);
      }
      continue;
    }
    const std::string where = "line " + std::to_string(line_no);
    if (!have_columns) {
      if (line == kRunColumns) {
        file.kind = ResultsFile::Kind::kRuns;
      } else if (line == kTableColumns) {
        file.kind = ResultsFile::Kind::kTable;
      } else {
        throw DataError(where + ": unknown column header '" + line + "'");
      }
      have_columns = true;
      continue;
    }
    const auto f = detail::split_csv(line);
    if (f.size() != (file.kind == ResultsFile::Kind::kRuns ? 6u : 5u)) {
      throw DataError(where + ": wrong number of fields");
    }
    const auto degree = detail::parse_u64(f[0], where);
    const auto n = detail::parse_u64(f[1], where);
    if (degree < 3 || n == 0) throw DataError(where + ": invalid d or N");
    if (file.kind == ResultsFile::Kind::kRuns) {
      RunResult r;
      r.degree = static_cast<unsigned>(degree);
      r.n_vertices = n;
      r.seed = detail::parse_u64(f[2], where);
      r.independent_size = detail::parse_u64(f[3], where);
      r.alpha = detail::parse_double(f[4], where);
      r.wall_ms = detail::parse_double(f[5], where);
      file.runs.push_back(r);
    } else {
      TableRow row;
      row.degree = static_cast<unsigned>(degree);
      row.n_vertices = n;
      row.samples = detail::parse_u64(f[2], where);
      row.mean = detail::parse_double(f[3], where);
      row.spread = detail::parse_double(f[4], where);
      file.rows.push_back(row);
    }
  }
  if (!have_columns) throw DataError("no column header found");
  return file;
}

/// Per-(d, N) summaries of a results file. Table rows are converted with
/// `mode`; raw runs use their own sample sd.
inline std::vector<SampleSummary> summaries_of(const ResultsFile& file,
                                               StderrMode mode) {
  if (file.kind == ResultsFile::Kind::kRuns) return summarize(file.runs);
  std::vector<SampleSummary> out;
  for (const TableRow& row : file.rows) {
    try {
      out.push_back(summary_from_row(row, mode));
    } catch (const std::invalid_argument& e) {
      throw DataError(e.what());
    }
  }
  return out;
}

/// Fit report. The fixed-multiplier interval and chi^2 ride along after
/// the core fields.
inline nlohmann::ordered_json fit_json(unsigned degree, const FitResult& fit) {
  nlohmann::ordered_json j;
  j["d"] = degree;
  j["a"] = fit.a;
  j["se_a"] = fit.se_a;
  j["alpha_inf"] = fit.alpha_inf;
  j["se_alpha"] = fit.se_alpha;
  j["ci99_lo"] = fit.ci99_lo;
  j["ci99_hi"] = fit.ci99_hi;
  j["quantile_used"] = fit.quantile_used;
  j["n_points"] = fit.n_points;
  j["ci_fixed_lo"] = fit.fixed_lo;
  j["ci_fixed_hi"] = fit.fixed_hi;
  j["chi2"] = fit.chi2;
  j["chi2_scaled"] = fit.chi2_scaled;
  return j;
}

}  // namespace indset
