// hochlab: run the verification scenarios and generic homology computations.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hochlab/cli/presentation_parser.hpp"
#include "hochlab/cli/result.hpp"
#include "hochlab/cli/scenarios.hpp"
#include "hochlab/exactalg/smith.hpp"
#include "hochlab/witt/witt.hpp"

using namespace hochlab;

namespace {

enum Exit { Pass = 0, Mismatch = 1, Usage = 2, Resource = 3 };

std::vector<Poly> coefficients(const std::string& text) {
  std::vector<Poly> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      Rational q(item);
      q.canonicalize();
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      out.emplace_back(q);
    } catch (const std::invalid_argument&) {
      throw UsageError("bad coefficient '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty coefficient list");
  return out;
}

std::string series(const std::vector<Poly>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].to_string();
  return s;
}

int run_witt(const std::string& op, const std::string& a, const std::string& b, int k, int degree) {
  const Ring Q = Ring::Rational;
  WittVector u(Q, coefficients(a));
  auto other = [&] {
    if (b.empty()) throw UsageError("witt " + op + " needs --b");
    return WittVector(Q, coefficients(b));
  };
  if (op == "add")
    std::cout << series(witt_add(u, other()).coeffs) << "\n";
  else if (op == "mul")
    std::cout << series(witt_mul(u, other()).coeffs) << "\n";
  else if (op == "neg")
    std::cout << series(witt_neg(u).coeffs) << "\n";
  else if (op == "ghost")
    std::cout << series(ghost(u)) << "\n";
  else if (op == "frobenius")
    std::cout << series(frobenius(u, k).coeffs) << "\n";
  else if (op == "verschiebung")
    std::cout << series(verschiebung(u, k).coeffs) << "\n";
  else if (op == "rational") {
    auto rep = is_rational(u, degree);
    std::cout << rep.to_string() << "\n";
    return rep.rational ? Pass : Mismatch;
  } else
    throw UsageError("unknown witt operation '" + op + "'");
  return Pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Hochschild, cyclic and Koszul duality computations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  std::optional<std::size_t> limit;
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--limit-nonzeros", limit, "nonzero cap for matrices entering Smith normal form");

  auto* list = app.add_subcommand("list", "list the scenarios");
  auto* conventions = app.add_subcommand("conventions", "print the sign and grading conventions");

  auto* verify = app.add_subcommand("verify", "run a named scenario");
  std::string scenario;
  ScenarioParams params;
  std::string window;
  verify->add_option("scenario", scenario)->required();
  verify->add_option("--n", params.n);
  verify->add_option("--window", window, "a:b");
  verify->add_option("--u-order", params.u_order);
  verify->add_option("--trust-margin", params.trust_margin);
  verify->add_option("--weight-bound", params.weight_bound);
  verify->add_option("--length", params.length);
  verify->add_option("--seed", params.seed);
  verify->add_flag("--allow-unsafe", params.allow_unsafe, "run outside the safe parameter ranges");

  auto* hom = app.add_subcommand("homology", "homology of a presentation file");
  std::string file;
  HomologyRequest request;
  std::string hwindow = "0:6";
  hom->add_option("file", file)->required();
  hom->add_option("--window", hwindow, "a:b");
  hom->add_option("--u-order", request.u_order, "negative cyclic homology with N u-levels");
  hom->add_option("--trust-margin", request.trust_margin);
  hom->add_option("--weight-bound", request.weight_bound);
  hom->add_flag("--reduced", request.reduced, "drop the unit chain");

  auto* witt = app.add_subcommand("witt", "big Witt vector arithmetic over Q");
  std::string op, a, b;
  int k = 2, degree = 1;
  witt->add_option("op", op, "add, mul, neg, ghost, frobenius, verschiebung or rational")->required();
  witt->add_option("--a", a, "coefficients a_1,a_2,... of 1 + a_1 t + ...")->required();
  witt->add_option("--b", b, "second operand");
  witt->add_option("--k", k, "index of F_k or V_k");
  witt->add_option("--degree", degree, "degree bound for rational");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Pass : Usage;
  }

  try {
    if (limit) set_nonzero_limit(*limit);
    const OutputFormat fmt = parse_format(format);
    if (list->parsed()) {
      for (const auto& s : scenario_catalog()) std::cout << s.name << "  " << s.summary << " (model: " << s.model << ")\n";
      return Pass;
    }
    if (conventions->parsed()) {
      std::cout << convention_table() << "hash " << convention_hash() << "\n";
      return Pass;
    }
    if (witt->parsed()) return run_witt(op, a, b, k, degree);

    ResultTable table;
    if (verify->parsed()) {
      if (!window.empty()) params.window = parse_window(window);
      std::vector<std::string> warnings;
      table = run_scenario(scenario, params, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    } else {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read " + file);
      std::stringstream text;
      text << in.rdbuf();
      request.window = parse_window(hwindow);
      table = homology_table(parse_presentation(text.str()), request);
    }
    std::cout << emit(table, fmt);
    return table.passed() ? Pass : Mismatch;
  } catch (const ParseError& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return Usage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return Resource;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return Mismatch;
  }
}
