#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochlab/cli/result.hpp"
#include "hochlab/dgcore/algebra.hpp"
#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

/// Bad command-line input: unknown scenario, malformed or unsafe parameters.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct ScenarioParams {
  std::optional<int> n;
  std::optional<std::pair<int, int>> window;
  std::optional<int> u_order;
  std::optional<int> trust_margin;
  std::optional<int> weight_bound;
  std::optional<int> length;
  std::optional<std::uint64_t> seed;
  /// Run outside the safe ranges (n <= 3, window width <= 14, u-order <= 5, weight bound <= 6).
  bool allow_unsafe = false;
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
  std::string model;  // the closed form the result is compared against
};

const std::vector<ScenarioInfo>& scenario_catalog();

/// "a:b" with a <= b; throws UsageError.
std::pair<int, int> parse_window(const std::string& text);

/**
 * Runs a named scenario. Throws UsageError for unknown names or unsafe
 * parameters; warnings about overridden safe ranges go to `warnings`.
 */
ResultTable run_scenario(const std::string& name, const ScenarioParams& params, std::vector<std::string>* warnings = nullptr);

struct HomologyRequest {
  std::pair<int, int> window{0, 6};
  /// Negative cyclic homology with this many u-levels instead of Hochschild homology.
  std::optional<int> u_order;
  int trust_margin = 1;
  std::optional<int> weight_bound;
  /// Drop the unit chain (augmentation-reduced complex).
  bool reduced = false;
};

/**
 * Hochschild (first kind, or second kind when curved) or negative cyclic
 * homology of a presentation. The mixed-complex identities are reported as a check.
 */
ResultTable homology_table(const DgPresentation& P, const HomologyRequest& request);

}  // namespace hochlab
