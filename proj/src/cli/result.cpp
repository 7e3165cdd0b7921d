#include "hochlab/cli/result.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "hochlab/exactalg/errors.hpp"
#include "json.hpp"

namespace hochlab {

bool ResultTable::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::optional<std::pair<int, int>> ResultTable::trust_window() const {
  std::optional<std::pair<int, int>> w;
  for (const auto& r : rows) {
    if (!r.trusted) continue;
    if (!w)
      w = {r.degree, r.degree};
    else
      w = {std::min(w->first, r.degree), std::max(w->second, r.degree)};
  }
  return w;
}

void ResultTable::add_check(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw PreconditionError("unknown output format '" + name + "' (json, csv, text)");
}

namespace {

std::vector<ResultRow> sorted_rows(const ResultTable& t) {
  auto rows = t.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) { return a.degree < b.degree; });
  return rows;
}

std::string factors(const ResultRow& r) {
  std::string s;
  for (std::size_t i = 0; i < r.invariant_factors.size(); ++i) {
    if (i) s += ";";
    s += r.invariant_factors[i].to_string();
  }
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string emit_json(const ResultTable& t) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = kJsonSchema;
  j["scenario"] = t.scenario;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : t.parameters) params[k] = v;
  j["parameters"] = params;
  j["conventions"] = convention_hash();
  if (auto w = t.trust_window())
    j["trust_window"] = {w->first, w->second};
  else
    j["trust_window"] = nullptr;
  ordered_json rows = ordered_json::array();
  for (const auto& r : sorted_rows(t)) {
    ordered_json row;
    row["degree"] = r.degree;
    row["rank"] = r.rank;
    ordered_json inv = ordered_json::array();
    for (const auto& p : r.invariant_factors) inv.push_back(p.to_string());
    row["invariant_factors"] = inv;
    row["u_action"] = r.u_action;
    row["trusted"] = r.trusted;
    rows.push_back(row);
  }
  j["rows"] = rows;
  ordered_json checks = ordered_json::array();
  for (const auto& c : t.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["passed"] = t.passed();
  return j.dump(2) + "\n";
}

std::string emit_csv(const ResultTable& t) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : sorted_rows(t))
    os << r.degree << "," << r.rank << "," << csv_field(factors(r)) << "," << csv_field(r.u_action) << ","
       << (r.trusted ? "true" : "false") << "\n";
  return os.str();
}

std::string emit_text(const ResultTable& t) {
  std::ostringstream os;
  os << "scenario " << t.scenario << "\n";
  for (const auto& [k, v] : t.parameters) os << "  " << k << " = " << v << "\n";
  if (!t.rows.empty()) {
    os << "degree  rank  factors  u-action  trusted\n";
    for (const auto& r : sorted_rows(t)) {
      const std::string f = factors(r);
      os << r.degree << "  " << r.rank << "  " << (f.empty() ? "-" : f) << "  " << (r.u_action.empty() ? "-" : r.u_action)
         << "  " << (r.trusted ? "yes" : "no") << "\n";
    }
  }
  for (const auto& c : t.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << (t.passed() ? "passed" : "FAILED") << "\n";
  return os.str();
}

}  // namespace

std::string emit(const ResultTable& table, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return emit_json(table);
    case OutputFormat::Csv:
      return emit_csv(table);
    case OutputFormat::Text:
      break;
  }
  return emit_text(table);
}

const std::string& convention_table() {
  static const std::string table =
      "homological grading: differentials lower degree by 1\n"
      "base ring Q[x] with x of degree 0 as a coefficient\n"
      "Hochschild chains a0[a1|...|ak] of degree |a0| + sum (|ai| + 1), reduced bar entries\n"
      "e(i) = |a0| + sum_(1<=j<=i) (|aj| + 1)\n"
      "b: +d a0, -(-1)^e(i-1) d ai, +(-1)^e(i) ai a(i+1), -(-1)^((|ak|+1) e(k-1)) ak a0 [a1|..|a(k-1)]\n"
      "second kind: b also inserts h after slot i with sign -(-1)^e(i)\n"
      "B: a0[a1|..|ak] -> sum_i (-1)^(s1 s2) 1[ai|..|ak|a0|..|a(i-1)], s1, s2 the shifted degrees moved past each other\n"
      "B of degree +1, u of degree -2, total differential b + uB\n"
      "de Rham forms: d_dR of degree +1, anticommuting with d unless the commuting convention is chosen\n"
      "bar: d[a1|..|am] = -sum (-1)^f(i-1) [..|d ai|..] - sum (-1)^f(i) [..|ai a(i+1)|..], f(i) = sum_(j<=i) (|aj| + 1)\n"
      "cobar: d(s^-1 c) = -s^-1 dc + sum (-1)^|c'| s^-1 c' s^-1 c''\n"
      "convolution: (f*g)(c1|c2) = (-1)^(|c1||c2|) f(c1) g(c2)\n"
      "big Witt vectors as power series 1 + a1 t + a2 t^2 + ..., addition is multiplication\n"
      "ghost: -t d/dt log of the series, gh_m = -m a_m - sum_(j<m) gh_j a_(m-j)\n";
  return table;
}

std::string convention_hash() {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : convention_table()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hochlab
