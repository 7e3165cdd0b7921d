#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hochlab/cli/presentation_parser.hpp"
#include "hochlab/cli/result.hpp"
#include "hochlab/cli/scenarios.hpp"
#include "json.hpp"

using namespace hochlab;

namespace {

const char* kC2 =
    "# C_2 over Q[x]\n"
    "base = Q[x]\n"
    "algebra = free\n"
    "generator y1 degree 1\n"
    "generator y2 degree 3\n"
    "d y1 = x\n"
    "d y2 = y1*y1\n";

const char* kCurved =
    "base = Q[x]\n"
    "algebra = commutative\n"
    "generator t degree -2 weight 1\n"
    "relation t^2 = 0\n"
    "curvature = -x*t\n";

ParseError parse_failure(const std::string& text) {
  try {
    parse_presentation(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

ResultTable sample_table() {
  ResultTable t;
  t.scenario = "sample";
  t.parameters = {{"n", "2"}, {"note", "a,b"}};
  t.rows.push_back({2, 1, {Poly::x()}, "x", false});
  t.rows.push_back({0, 3, {}, "", true});
  t.add_check("identity", true);
  return t;
}

}  // namespace

TEST_CASE("presentations parse") {
  auto P = parse_presentation(kC2);
  CHECK(P.base() == Ring::Polynomial);
  CHECK(P.kind() == MulKind::FreeAssociative);
  REQUIRE(P.generators().size() == 2);
  CHECK(P.generators()[1].degree == 3);
  CHECK(P.differential(P.gen("y1")) == P.scalar(Poly::x()));
  CHECK(P.differential(P.gen("y2")) == P.multiply(P.gen("y1"), P.gen("y1")));

  auto C = parse_presentation(kCurved);
  CHECK(C.generators()[0].nilpotency == 2);
  CHECK(C.curvature() == -(Poly::x() * C.gen("t")));
}

TEST_CASE("format and parse round trip") {
  for (const char* text : {kC2, kCurved}) {
    auto P = parse_presentation(text);
    auto Q = parse_presentation(format_presentation(P));
    REQUIRE(Q.generators().size() == P.generators().size());
    for (std::size_t g = 0; g < P.generators().size(); ++g) {
      CHECK(Q.generators()[g].name == P.generators()[g].name);
      CHECK(Q.generators()[g].degree == P.generators()[g].degree);
      CHECK(Q.to_string(Q.generator_differential(int(g))) == P.to_string(P.generator_differential(int(g))));
    }
    CHECK(Q.to_string(Q.curvature()) == P.to_string(P.curvature()));
    CHECK(format_presentation(Q) == format_presentation(P));
  }
}

TEST_CASE("parse errors carry positions") {
  auto e = parse_failure("base = Q\nalgebra = free\ngenerator y weight 1\n");
  CHECK(e.line() == 3);

  e = parse_failure("base = Q[x]\nalgebra = free\ngenerator y degree 1\nd y = x + z\n");
  CHECK(e.line() == 4);
  CHECK(e.column() == 11);
  CHECK(std::string(e.what()).find("unknown generator 'z'") != std::string::npos);

  e = parse_failure("base = Q[x]\nalgebra = free\ngenerator y degree 1\nd y = y\n");
  CHECK(e.line() == 4);

  e = parse_failure("base = Q\nfrobnicate\n");
  CHECK(e.line() == 2);
  CHECK(e.column() == 1);

  CHECK_THROWS_AS(parse_presentation("base = Q\nalgebra = free\ngenerator x degree 0\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("base = Q\nalgebra = free\ngenerator y degree 1\ngenerator y degree 3\n"), ParseError);
}

TEST_CASE("csv output") {
  ResultTable empty;
  CHECK(emit(empty, OutputFormat::Csv) == std::string(kCsvHeader) + "\n");
  CHECK(emit(sample_table(), OutputFormat::Csv) ==
        "degree,rank,invariant_factors,u_action,trusted\n0,3,,,true\n2,1,x,x,false\n");
}

TEST_CASE("json output round trips") {
  const auto t = sample_table();
  const auto text = emit(t, OutputFormat::Json);
  CHECK(text == emit(t, OutputFormat::Json));
  auto j = nlohmann::json::parse(text);
  CHECK(j["schema"] == kJsonSchema);
  CHECK(j["conventions"] == convention_hash());
  CHECK(j["parameters"]["note"] == "a,b");
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["degree"] == 0);
  CHECK(j["rows"][1]["invariant_factors"][0] == "x");
  CHECK(j["trust_window"][0] == 0);
  CHECK(j["trust_window"][1] == 0);
  CHECK(j["passed"] == true);
  CHECK_THROWS_AS(parse_format("xml"), PreconditionError);
}

TEST_CASE("golden output for the truncated polynomial scenario") {
  std::ifstream in(HOCHLAB_GOLDEN_DIR "/hh-truncated-n2.csv");
  REQUIRE(in);
  std::stringstream golden;
  golden << in.rdbuf();
  const auto t = run_scenario("hh-truncated", {});
  CHECK(t.passed());
  CHECK(emit(t, OutputFormat::Csv) == golden.str());
  CHECK(emit(run_scenario("hh-truncated", {}), OutputFormat::Json) == emit(t, OutputFormat::Json));
}

TEST_CASE("scenarios pass at their defaults") {
  for (const auto& s : scenario_catalog()) {
    CAPTURE(s.name);
    CHECK(run_scenario(s.name, {}).passed());
  }
}

TEST_CASE("usage errors") {
  CHECK_THROWS_AS(run_scenario("no-such-scenario", {}), UsageError);
  ScenarioParams p;
  p.n = 5;
  CHECK_THROWS_AS(run_scenario("hh-truncated", p), UsageError);
  p.allow_unsafe = true;
  p.n = 4;
  std::vector<std::string> warnings;
  CHECK(run_scenario("hh-truncated", p, &warnings).passed());
  CHECK(warnings.size() == 1);
  ScenarioParams unused;
  unused.length = 3;
  CHECK_THROWS_AS(run_scenario("hh-truncated", unused), UsageError);
  CHECK_THROWS_AS(parse_window("3:1"), UsageError);
  CHECK_THROWS_AS(parse_window("a:b"), UsageError);
  CHECK(parse_window("-2:4") == std::pair<int, int>{-2, 4});
}

TEST_CASE("homology of a presentation") {
  HomologyRequest r;
  r.window = {0, 5};
  r.u_order = 3;
  const auto t = homology_table(parse_presentation("base = Q\nalgebra = commutative\ngenerator x_ degree 0 weight 1 nilpotent 3\n"), r);
  CHECK(t.passed());
  bool seen = false;
  for (const auto& row : t.rows)
    if (row.degree == 1 && row.trusted) {
      seen = true;
      CHECK(row.rank == 2);
    }
  CHECK(seen);
}
