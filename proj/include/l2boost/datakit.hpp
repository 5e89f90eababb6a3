#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l2boost/design.hpp"
#include "l2boost/numerics.hpp"

namespace l2boost {

// Maps dataset columns to their role in an analysis. `treatment` and
// `endogenous` are mutually exclusive.
struct ColumnRoleMap {
  std::string outcome;
  std::optional<std::string> treatment;
  std::optional<std::string> endogenous;
  std::vector<std::string> instruments;
  std::vector<std::string> controls;
};

struct LoadedData {
  Vector y;
  Vector d;  // empty when no treatment/endogenous column was requested
  Matrix controls;
  std::vector<std::string> control_names;
  Matrix instruments;
  std::vector<std::string> instrument_names;
  Index rows_dropped = 0;  // rows removed for missing values in used columns
};

// Delimited text with a header row. delimiter = 0 auto-detects among
// comma/semicolon/tab. Rows missing a value in any used column are dropped
// (listwise) and counted. Empty cells and NA/NaN are treated as missing.
LoadedData load_csv(const std::string& path, const ColumnRoleMap& roles,
                    char delimiter = '\0');

struct ExpansionConfig {
  bool include_interactions = true;  // two-way products of the main effects
  double corr_cutoff = 0.95;
  Index min_ones = 20;
};

enum class DropReason { constant_column, sparse_indicator, high_correlation };

std::string drop_reason_label(DropReason reason);

struct DropRecord {
  std::string name;
  DropReason reason;
  std::string detail;
};

struct ExpandedDesign {
  DesignMatrix design;
  std::vector<DropRecord> dropped;
};

// Builds the working design: main effects in input order, then pairwise
// products in (i < j) order. Candidates are filtered greedily left to right:
// constant columns go first, then 0/1 indicators with fewer than `min_ones`
// ones, then anything correlated above `corr_cutoff` with an earlier kept
// column. Every drop is logged once with its reason.
ExpandedDesign expand_design(const Matrix& table,
                             const std::vector<std::string>& names,
                             const ExpansionConfig& cfg);

}  // namespace l2boost
