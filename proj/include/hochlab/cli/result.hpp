#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochlab/exactalg/poly.hpp"

namespace hochlab {

struct ResultRow {
  int degree = 0;
  std::size_t rank = 0;
  std::vector<Poly> invariant_factors;
  std::string u_action;  // empty when not computed
  bool trusted = true;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ResultTable {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> parameters;  // in display order
  std::vector<ResultRow> rows;                                  // sorted by degree on emission
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Smallest and largest trusted row degree.
  std::optional<std::pair<int, int>> trust_window() const;
  void add_check(std::string name, bool passed, std::string detail = {});
};

enum class OutputFormat { Json, Csv, Text };

/// Throws PreconditionError for anything but json, csv or text.
OutputFormat parse_format(const std::string& name);

inline constexpr const char* kCsvHeader = "degree,rank,invariant_factors,u_action,trusted";
inline constexpr const char* kJsonSchema = "hochlab.result/1";

/// Deterministic rendering; rows are sorted by degree.
std::string emit(const ResultTable& table, OutputFormat format);

/// The sign and grading conventions the results depend on, one per line.
const std::string& convention_table();
/// FNV-1a hash of convention_table(), as 16 hex digits.
std::string convention_hash();

}  // namespace hochlab
