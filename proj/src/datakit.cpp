#include "l2boost/datakit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "l2boost/errors.hpp"

namespace l2boost {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delim)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

char detect_delimiter(const std::string& header) {
  const char candidates[] = {',', ';', '\t'};
  char best = ',';
  std::size_t best_count = 0;
  for (char c : candidates) {
    const std::size_t count =
        static_cast<std::size_t>(std::count(header.begin(), header.end(), c));
    if (count > best_count) {
      best_count = count;
      best = c;
    }
  }
  return best;
}

bool is_missing(const std::string& cell) {
  if (cell.empty()) return true;
  std::string low;
  for (char c : cell) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return low == "na" || low == "nan" || low == "null";
}

bool parse_number(const std::string& cell, double& value) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end;
}

Index resolve_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == name) return static_cast<Index>(j);
  throw DataError("unknown column '" + name + "'");
}

}  // namespace

LoadedData load_csv(const std::string& path, const ColumnRoleMap& roles,
                    char delimiter) {
  if (roles.outcome.empty()) throw InvalidInputError("outcome column is required");
  if (roles.treatment && roles.endogenous)
    throw InvalidInputError("treatment and endogenous columns are mutually exclusive");

  std::ifstream in(path);
  if (!in) throw DataError("cannot open file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw DataError("file '" + path + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const char delim = delimiter != '\0' ? delimiter : detect_delimiter(line);
  const std::vector<std::string> header = split(line, delim);

  // Resolve every used column up front so bad names fail before parsing.
  std::vector<Index> used;
  const Index y_col = resolve_column(header, roles.outcome);
  used.push_back(y_col);
  Index d_col = -1;
  if (roles.treatment) d_col = resolve_column(header, *roles.treatment);
  if (roles.endogenous) d_col = resolve_column(header, *roles.endogenous);
  if (d_col >= 0) used.push_back(d_col);
  std::vector<Index> control_cols, instrument_cols;
  for (const std::string& name : roles.controls) {
    control_cols.push_back(resolve_column(header, name));
    used.push_back(control_cols.back());
  }
  for (const std::string& name : roles.instruments) {
    instrument_cols.push_back(resolve_column(header, name));
    used.push_back(instrument_cols.back());
  }

  std::vector<std::vector<double>> rows;
  Index dropped = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split(line, delim);

    std::vector<double> parsed(used.size());
    bool missing = false;
    for (std::size_t k = 0; k < used.size(); ++k) {
      const auto col = static_cast<std::size_t>(used[k]);
      const std::string cell = col < cells.size() ? cells[col] : std::string();
      if (is_missing(cell)) {
        missing = true;
        break;
      }
      if (!parse_number(cell, parsed[k]))
        throw DataError("non-numeric value '" + cell + "' in column '" +
                        header[col] + "' at line " + std::to_string(line_no));
    }
    if (missing) {
      ++dropped;
      continue;
    }
    rows.push_back(std::move(parsed));
  }

  if (rows.empty()) throw DataError("no usable rows in '" + path + "'");

  const Index n = static_cast<Index>(rows.size());
  LoadedData data;
  data.rows_dropped = dropped;
  data.y.resize(n);
  if (d_col >= 0) data.d.resize(n);
  data.controls.resize(n, static_cast<Index>(control_cols.size()));
  data.instruments.resize(n, static_cast<Index>(instrument_cols.size()));
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    std::size_t k = 0;
    data.y(i) = row[k++];
    if (d_col >= 0) data.d(i) = row[k++];
    for (Index j = 0; j < data.controls.cols(); ++j) data.controls(i, j) = row[k++];
    for (Index j = 0; j < data.instruments.cols(); ++j)
      data.instruments(i, j) = row[k++];
  }
  data.control_names = roles.controls;
  data.instrument_names = roles.instruments;
  return data;
}

std::string drop_reason_label(DropReason reason) {
  switch (reason) {
    case DropReason::constant_column: return "constant";
    case DropReason::sparse_indicator: return "sparse-indicator";
    case DropReason::high_correlation: return "high-correlation";
  }
  return "unknown";
}

namespace {

bool is_binary(const Vector& col, Index& ones) {
  ones = 0;
  for (Index i = 0; i < col.size(); ++i) {
    if (col(i) == 1.0)
      ++ones;
    else if (col(i) != 0.0)
      return false;
  }
  return true;
}

double abs_correlation(const Vector& a, const Vector& b) {
  const Vector ac = a.array() - a.mean();
  const Vector bc = b.array() - b.mean();
  const double denom = std::sqrt(ac.squaredNorm() * bc.squaredNorm());
  if (denom == 0.0) return 0.0;
  return std::abs(ac.dot(bc)) / denom;
}

}  // namespace

ExpandedDesign expand_design(const Matrix& table,
                             const std::vector<std::string>& names,
                             const ExpansionConfig& cfg) {
  const Index n = table.rows();
  const Index k = table.cols();
  if (k < 1) throw InvalidInputError("expand_design: need at least one covariate");
  if (!names.empty() && static_cast<Index>(names.size()) != k)
    throw InvalidInputError("expand_design: one name per column required");
  if (cfg.corr_cutoff <= 0.0 || cfg.corr_cutoff > 1.0)
    throw InvalidInputError("expand_design: corr_cutoff must lie in (0, 1]");
  require_finite(table, "expand_design table");

  auto column_name = [&](Index j) {
    return names.empty() ? "x" + std::to_string(j) : names[static_cast<std::size_t>(j)];
  };

  // Candidates: main effects, then two-way products in (i < j) order.
  std::vector<std::pair<std::string, Vector>> candidates;
  for (Index j = 0; j < k; ++j) candidates.emplace_back(column_name(j), table.col(j));
  if (cfg.include_interactions) {
    for (Index i = 0; i < k; ++i)
      for (Index j = i + 1; j < k; ++j)
        candidates.emplace_back(column_name(i) + ":" + column_name(j),
                                table.col(i).cwiseProduct(table.col(j)));
  }

  std::vector<std::string> kept_names;
  std::vector<Vector> kept_cols;
  std::vector<DropRecord> dropped;
  for (auto& [name, col] : candidates) {
    if (col.maxCoeff() == col.minCoeff()) {
      dropped.push_back({name, DropReason::constant_column, "no variation"});
      continue;
    }
    Index ones = 0;
    if (is_binary(col, ones) && ones < cfg.min_ones) {
      dropped.push_back({name, DropReason::sparse_indicator,
                         std::to_string(ones) + " ones"});
      continue;
    }
    bool correlated = false;
    for (std::size_t m = 0; m < kept_cols.size(); ++m) {
      if (abs_correlation(col, kept_cols[m]) > cfg.corr_cutoff) {
        dropped.push_back({name, DropReason::high_correlation,
                           "against " + kept_names[m]});
        correlated = true;
        break;
      }
    }
    if (correlated) continue;
    kept_names.push_back(name);
    kept_cols.push_back(std::move(col));
  }

  if (kept_cols.empty())
    throw DataError("expand_design: every candidate column was dropped");

  Matrix out(n, static_cast<Index>(kept_cols.size()));
  for (std::size_t j = 0; j < kept_cols.size(); ++j)
    out.col(static_cast<Index>(j)) = kept_cols[j];
  return ExpandedDesign{DesignMatrix(std::move(out), std::move(kept_names)),
                        std::move(dropped)};
}

}  // namespace l2boost
