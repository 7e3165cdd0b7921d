// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../support/oracle.hpp"
#include "hochlab/cli/result.hpp"
#include "hochlab/cli/scenarios.hpp"
#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/homology.hpp"
#include "hochlab/exactalg/smith.hpp"
#include "hochlab/hkr/explicit.hpp"
#include "hochlab/hkr/forms.hpp"
#include "hochlab/hochschild/chains.hpp"
#include "hochlab/hochschild/mixed.hpp"

using namespace hochlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + why;
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

// Runs a scenario and records its failed checks.
void scenario(Outcome& out, const std::string& name, ScenarioParams p) {
  p.allow_unsafe = true;
  std::vector<std::string> warnings;
  const auto t = run_scenario(name, p, &warnings);
  std::string label = name;
  if (p.n) label += " n=" + std::to_string(*p.n);
  if (t.passed()) {
    out.note(label + " ok");
    return;
  }
  for (const auto& c : t.checks)
    if (!c.passed) out.fail(label + ": " + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

ScenarioParams with_n(int n) {
  ScenarioParams p;
  p.n = n;
  return p;
}

TruncationPolicy window(int lo, int hi) {
  TruncationPolicy T;
  T.min_degree = lo;
  T.max_degree = hi;
  return T;
}

void oracle_agreement(Outcome& out) {
  std::mt19937 rng(20261018);
  std::size_t complexes = 0, degrees = 0, matrices = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Ring ring = trial % 2 ? Ring::Polynomial : Ring::Rational;
    auto C = oracle::random_complex(rng, ring, -2, 7, 6);  // 10 degrees, rank <= 6 each
    std::size_t total = 0;
    for (int k = C.min_degree(); k <= C.max_degree(); ++k) total += C.rank(k);
    if (total > 60) {
      out.fail("random complex of rank " + std::to_string(total));
      continue;
    }
    ++complexes;
    for (int k = C.min_degree() + 1; k <= C.max_degree(); ++k) {
      const auto& d = C.differential(k);
      if (smith_normal_form(d, {false, false}).diagonal != oracle::smith_diagonal(d.to_dense()))
        out.fail("Smith form differs in trial " + std::to_string(trial) + ", degree " + std::to_string(k));
      ++matrices;
    }
    auto H = homology(C);
    for (const auto& a : oracle::homology(C)) {
      ++degrees;
      if (H.at(a.degree).free_rank != a.free_rank || H.at(a.degree).torsion != a.torsion)
        out.fail("homology differs in trial " + std::to_string(trial) + ", degree " + std::to_string(a.degree));
    }
  }
  out.note(std::to_string(complexes) + " complexes, " + std::to_string(matrices) + " Smith forms, " +
           std::to_string(degrees) + " homology degrees against the dense oracle");
}

void mixed_identities(Outcome& out) {
  std::vector<std::pair<std::string, std::function<MixedComplex()>>> built;
  for (int n = 2; n <= 4; ++n)
    built.push_back({"HH Q[x]/x^" + std::to_string(n), [n] { return hochschild_mixed(standard::truncated_polynomial(n), window(0, 8)); }});
  for (int n = 1; n <= 3; ++n) {
    built.push_back({"HH C_" + std::to_string(n), [n] { return hochschild_mixed(standard::c_algebra(n), window(0, 8)); }});
    built.push_back({"naive C_" + std::to_string(n), [n] { return naive_hochschild(standard::c_algebra(n), window(0, 8)); }});
    built.push_back({"HH Koszul point " + std::to_string(n), [n] { return hochschild_mixed(standard::koszul_point(n), window(0, 6)); }});
  }
  for (int n = 1; n <= 2; ++n) {
    built.push_back({"second kind n=" + std::to_string(n),
                     [n] { return hochschild_second_kind(standard::curved_truncated(n), window(-10, 0)); }});
    built.push_back({"twisted de Rham n=" + std::to_string(n), [n] {
                       auto A = standard::curved_semifree(n);
                       auto D = kaehler(A);
                       return de_rham_mixed(D, twist_curvature(D, A), window(-10, 0));
                     }});
    built.push_back({"de Rham n=" + std::to_string(n), [n] {
                       auto D = kaehler(standard::curved_semifree(n));
                       return de_rham_mixed(D, {}, window(-10, 0));
                     }});
    for (const char* name : {"K", "laurent_dual"})
      built.push_back({std::string(name) + " n=" + std::to_string(n), [n, name] { return explicit_mixed(name, n, -14, 1); }});
    built.push_back({"K_dual n=" + std::to_string(n), [n] { return explicit_mixed("K_dual", n, -1, 14); }});
  }
  std::size_t checked = 0;
  for (const auto& [name, make] : built) {
    try {
      auto M = make();
      verify_mixed(M);
      verify_mixed(dualize(M));
      checked += 2;
    } catch (const Error& e) {
      out.fail(name + ": " + e.what());
    }
  }
  out.note(std::to_string(checked) + " mixed complexes satisfy b^2 = B^2 = bB + Bb = 0");
}

std::string run_cli(const std::string& args) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((std::string(HOCHLAB_CLI) + " " + args + " 2>&1").c_str(), "r"), pclose);
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  return out;
}

void determinism(Outcome& out) {
  std::size_t compared = 0;
  for (const auto& s : scenario_catalog()) {
    const auto a = emit(run_scenario(s.name, {}), OutputFormat::Json);
    const auto b = emit(run_scenario(s.name, {}), OutputFormat::Json);
    if (a != b) out.fail(s.name + " differs between in-process reruns");
    ++compared;
  }
  for (const char* args : {"verify hh-truncated --format json", "verify laurent-dual --format csv", "verify witt-ring --format json"}) {
    const auto a = run_cli(args), b = run_cli(args);
    if (a != b || a.empty()) out.fail(std::string("hochlab ") + args + " differs between runs");
    ++compared;
  }
  out.note(std::to_string(compared) + " outputs byte-identical on rerun");
}

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  bool limit_each;  // limit applies to each scenario run rather than the total
  std::function<void(Outcome&, std::vector<double>&)> body;
};

template <class F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "reduced HH of Q[x]/x^n has dimension n-1 in trusted degrees", 5, true,
       [](Outcome& o, std::vector<double>& t) {
         for (int n = 2; n <= 4; ++n) {
           auto p = with_n(n);
           p.window = {0, 7};
           t.push_back(timed([&] { scenario(o, "hh-truncated", p); }));
         }
       }},
      {2, "HH(A_(n+1)) -> HH(A_n) vanishes on H_2l for l >= n-1", 10, false,
       [](Outcome& o, std::vector<double>& t) {
         for (int n = 1; n <= 3; ++n) t.push_back(timed([&] { scenario(o, "b-operator-freeness", with_n(n)); }));
       }},
      {3, "Laurent dual complex against x^-n Q[x, u/x^n]", 10, false,
       [](Outcome& o, std::vector<double>& t) {
         for (int n = 1; n <= 2; ++n) {
           auto p = with_n(n);
           p.u_order = 5;
           p.window = {-10, 2};
           t.push_back(timed([&] { scenario(o, "laurent-dual", p); }));
         }
       }},
      {4, "curved truncated pipeline: second kind, HKR, spectral pages, phi, K dual", 60, false,
       [](Outcome& o, std::vector<double>& t) {
         for (int n = 1; n <= 2; ++n) t.push_back(timed([&] { scenario(o, "cn-lemma", with_n(n)); }));
       }},
      {5, "stage n monomial models embed into stage n+1", 2, false,
       [](Outcome& o, std::vector<double>& t) {
         for (int n = 1; n <= 2; ++n) t.push_back(timed([&] { scenario(o, "hp-point", with_n(n)); }));
       }},
      {6, "Koszul dual of Cobar((Q[s]/s^n)^*) and the bar-cobar round trip", 20, false,
       [](Outcome& o, std::vector<double>& t) {
         for (int n = 2; n <= 3; ++n) {
           t.push_back(timed([&] { scenario(o, "koszul-end", with_n(n)); }));
           auto p = with_n(n);
           p.weight_bound = 4;
           t.push_back(timed([&] { scenario(o, "bar-cobar", p); }));
         }
       }},
      {7, "Amitsur contracting homotopy dh + hd = id", 5, false,
       [](Outcome& o, std::vector<double>& t) {
         ScenarioParams p;
         p.length = 5;
         t.push_back(timed([&] { scenario(o, "amitsur", p); }));
       }},
      {8, "associated graded of the deformed tensor algebra", 2, false,
       [](Outcome& o, std::vector<double>& t) {
         ScenarioParams p;
         p.length = 5;
         t.push_back(timed([&] { scenario(o, "deformed-tensor", p); }));
       }},
      {9, "big Witt vectors: Teichmuller products, ghost map, rationality", 2, false,
       [](Outcome& o, std::vector<double>& t) {
         ScenarioParams p;
         p.length = 6;
         t.push_back(timed([&] { scenario(o, "witt-ring", p); }));
       }},
      {10, "Smith forms against a dense oracle, mixed complex identities, determinism", 60, false,
       [](Outcome& o, std::vector<double>& t) {
         t.push_back(timed([&] { oracle_agreement(o); }));
         t.push_back(timed([&] { mixed_identities(o); }));
         t.push_back(timed([&] { determinism(o); }));
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    std::vector<double> times;
    try {
      c.body(o, times);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double total = 0, worst = 0;
    for (double s : times) {
      total += s;
      worst = std::max(worst, s);
    }
    const double measured = c.limit_each ? worst : total;
    if (measured >= c.limit_seconds)
      o.fail("runtime " + seconds(measured) + " over the " + seconds(c.limit_seconds) + " limit");
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " [" << seconds(measured)
              << (c.limit_each ? " slowest run" : "") << ", limit " << seconds(c.limit_seconds) << "] " << o.detail
              << std::endl;
    if (!o.ok) ++failed;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
