#include "hochlab/cli/scenarios.hpp"

#include <functional>
#include <map>
#include <set>

#include "hochlab/barcobar/amitsur.hpp"
#include "hochlab/barcobar/coalgebra.hpp"
#include "hochlab/barcobar/deformed.hpp"
#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/homology.hpp"
#include "hochlab/hkr/explicit.hpp"
#include "hochlab/hkr/forms.hpp"
#include "hochlab/hkr/monomial.hpp"
#include "hochlab/hkr/spectral.hpp"
#include "hochlab/hochschild/chains.hpp"
#include "hochlab/hochschild/cyclic.hpp"
#include "hochlab/witt/witt.hpp"

namespace hochlab {

namespace {

enum Param { N, Window, UOrder, Margin, Weight, Length, Seed };

const char* flag_name(Param p) {
  switch (p) {
    case N: return "--n";
    case Window: return "--window";
    case UOrder: return "--u-order";
    case Margin: return "--trust-margin";
    case Weight: return "--weight-bound";
    case Length: return "--length";
    case Seed: return "--seed";
  }
  return "";
}

bool given(const ScenarioParams& p, Param q) {
  switch (q) {
    case N: return p.n.has_value();
    case Window: return p.window.has_value();
    case UOrder: return p.u_order.has_value();
    case Margin: return p.trust_margin.has_value();
    case Weight: return p.weight_bound.has_value();
    case Length: return p.length.has_value();
    case Seed: return p.seed.has_value();
  }
  return false;
}

// Resolved parameters plus the safe-range bookkeeping.
class Context {
 public:
  Context(const std::string& name, const ScenarioParams& p, std::vector<std::string>* warnings, ResultTable& table)
      : name_(name), p_(p), warnings_(warnings), table_(table) {}

  void accepts(std::set<Param> allowed) {
    for (Param q : {N, Window, UOrder, Margin, Weight, Length, Seed})
      if (given(p_, q) && !allowed.count(q)) throw UsageError("scenario " + name_ + " does not take " + flag_name(q));
  }

  int n(int def, int min = 1) {
    const int v = p_.n.value_or(def);
    if (v < min) throw UsageError("--n must be at least " + std::to_string(min));
    guard(v <= 3, "n = " + std::to_string(v) + " exceeds the safe bound 3");
    table_.parameters.emplace_back("n", std::to_string(v));
    return v;
  }
  std::pair<int, int> window(std::pair<int, int> def) {
    const auto w = p_.window.value_or(def);
    guard(w.second - w.first <= 14, "window width " + std::to_string(w.second - w.first) + " exceeds the safe bound 14");
    table_.parameters.emplace_back("window", std::to_string(w.first) + ":" + std::to_string(w.second));
    return w;
  }
  int u_order(int def) {
    const int v = p_.u_order.value_or(def);
    if (v < 1) throw UsageError("--u-order must be at least 1");
    guard(v <= 5, "u-order " + std::to_string(v) + " exceeds the safe bound 5");
    table_.parameters.emplace_back("u_order", std::to_string(v));
    return v;
  }
  int margin(int def) {
    const int v = p_.trust_margin.value_or(def);
    if (v < 0) throw UsageError("--trust-margin must be nonnegative");
    table_.parameters.emplace_back("trust_margin", std::to_string(v));
    return v;
  }
  int weight(int def) {
    const int v = p_.weight_bound.value_or(def);
    if (v < 1) throw UsageError("--weight-bound must be at least 1");
    guard(v <= 6, "weight bound " + std::to_string(v) + " exceeds the safe bound 6");
    table_.parameters.emplace_back("weight_bound", std::to_string(v));
    return v;
  }
  int length(int def, int safe) {
    const int v = p_.length.value_or(def);
    if (v < 1) throw UsageError("--length must be at least 1");
    guard(v <= safe, "length " + std::to_string(v) + " exceeds the safe bound " + std::to_string(safe));
    table_.parameters.emplace_back("length", std::to_string(v));
    return v;
  }
  std::uint64_t seed(std::uint64_t def) {
    const auto v = p_.seed.value_or(def);
    table_.parameters.emplace_back("seed", std::to_string(v));
    return v;
  }

 private:
  void guard(bool safe, const std::string& what) {
    if (safe) return;
    if (!p_.allow_unsafe) throw UsageError(what + " (pass --allow-unsafe to run anyway)");
    if (warnings_) warnings_->push_back(what);
  }

  std::string name_;
  const ScenarioParams& p_;
  std::vector<std::string>* warnings_;
  ResultTable& table_;
};

TruncationPolicy policy(std::pair<int, int> w, int N = 4, int margin = 2) {
  TruncationPolicy T;
  T.min_degree = w.first;
  T.max_degree = w.second;
  T.u_order = N;
  T.trust_margin = margin;
  return T;
}

std::string matrix_entry(const SparseMatrix& U) {
  if (U.rows() == 0 || U.cols() == 0) return {};
  if (U.rows() == 1 && U.cols() == 1) return U.get(0, 0).to_string();
  std::string s = "[";
  for (std::size_t r = 0; r < U.rows(); ++r) {
    if (r) s += ";";
    for (std::size_t c = 0; c < U.cols(); ++c) s += (c ? "," : "") + U.get(r, c).to_string();
  }
  return s + "]";
}

ResultRow row_of(const DegreeHomology& D) {
  return {D.degree, D.free_rank, D.torsion, {}, D.trusted};
}

void add_rows(ResultTable& t, const CyclicHomology& H) {
  for (const auto& D : H.homology.degrees) {
    ResultRow r = row_of(D);
    auto it = H.u_action.find(D.degree);
    if (it != H.u_action.end()) r.u_action = matrix_entry(it->second);
    t.rows.push_back(r);
  }
}

// Trust for a plain truncated complex: d_k and d_{k+1} must both be complete.
void retrust(HomologyReport& H, const MixedComplex& M, int margin) {
  for (auto& D : H.degrees) {
    const bool low = M.exact_below || D.degree >= M.min_degree() + margin;
    const bool high = M.exact_above || D.degree <= M.max_degree() - margin;
    D.trusted = low && high;
  }
}

HomologyReport plain_homology(const MixedComplex& M, int margin, bool generators) {
  HomologyOptions o;
  o.trust_margin = 0;
  o.generators = generators;
  auto H = homology(M.b, o);
  retrust(H, M, margin);
  return H;
}

std::string str(std::size_t v) { return std::to_string(v); }

// ------------------------------------------------------------ scenarios

void hh_truncated(Context& cx, ResultTable& t) {
  cx.accepts({N, Window, Margin});
  const int n = cx.n(2);
  const auto w = cx.window({0, 7});
  const int m = cx.margin(1);
  TruncationPolicy T = policy(w);
  T.drop_unit = true;
  auto M = hochschild_mixed(standard::truncated_polynomial(n), T);
  auto H = plain_homology(M, m, false);
  std::size_t trusted = 0;
  for (const auto& D : H.degrees) {
    t.rows.push_back(row_of(D));
    if (!D.trusted) continue;
    ++trusted;
    t.add_check("dimension in degree " + std::to_string(D.degree), D.free_rank == static_cast<std::size_t>(n - 1) && D.torsion.empty(),
                "dimension " + str(D.size()) + ", model " + std::to_string(n - 1));
  }
  t.add_check("trusted degrees", trusted >= 1, str(trusted) + " trusted");
}

void b_operator_freeness(Context& cx, ResultTable& t) {
  cx.accepts({N, Window, Margin});
  const int n = cx.n(2);
  const auto w = cx.window({0, 6});
  const int m = cx.margin(1);
  auto big = standard::truncated_polynomial(n + 1), small = standard::truncated_polynomial(n);
  AlgebraMorphism f(big, small, {small.gen("x")});
  TruncationPolicy T = policy(w);
  T.drop_unit = true;
  auto src = hochschild_mixed(big, T), dst = hochschild_mixed(small, T);
  auto rep = induced_chain_map(f, src, dst);
  t.add_check("induced chain map", rep.chain_map, rep.message);
  auto hs = plain_homology(src, m, true), hd = plain_homology(dst, m, true);
  for (const auto& D : hs.degrees) t.rows.push_back(row_of(D));
  std::size_t checked = 0;
  for (int l = std::max(0, n - 1); 2 * l <= w.second; ++l) {
    const int k = 2 * l;
    if (k < w.first || !hs.at(k).trusted || !hd.at(k).trusted) continue;
    ++checked;
    auto map = induced_map(hs, k, hd, k, rep.components.at(k));
    t.add_check("H_" + std::to_string(k) + " map is zero", map.is_zero(),
                str(map.rows()) + "x" + str(map.cols()) + (map.is_zero() ? " zero matrix" : " nonzero"));
  }
  t.add_check("degrees checked", checked >= 1, str(checked) + " even degrees with l >= n-1");
}

void affine_line(Context& cx, ResultTable& t) {
  cx.accepts({N, Window, UOrder, Margin});
  const int n = cx.n(2);
  const auto w = cx.window({-6, 4});
  const int N = cx.u_order(5);
  const int m = cx.margin(2);
  TruncationPolicy MT = policy({0, std::max(0, w.second + 2 * N - 1)}, N, m);
  auto A = standard::truncated_polynomial(n);
  auto T = policy(w, N, m);
  MT.drop_unit = true;
  auto reduced = homology_with_u_action(negative_cyclic(hochschild_mixed(A, MT), T), false);
  MT.drop_unit = false;
  // u-action needs homology generators, whose Smith forms outgrow the nonzero cap for n > 2
  const bool with_u = n <= 2;
  t.parameters.emplace_back("u_action", with_u ? "computed" : "skipped for n > 2");
  auto full = homology_with_u_action(negative_cyclic(hochschild_mixed(A, MT), T), with_u);
  add_rows(t, full);
  std::size_t trusted = 0;
  for (const auto& D : full.homology.degrees) {
    if (!D.trusted) continue;
    ++trusted;
    const int k = D.degree;
    const std::size_t odd = (k % 2 != 0 && k > 0) ? static_cast<std::size_t>(n - 1) : 0;
    const std::size_t unit = (k % 2 == 0 && k <= 0) ? 1 : 0;
    const auto& R = reduced.homology.at(k);
    t.add_check("reduced degree " + std::to_string(k), R.free_rank == odd && R.torsion.empty(),
                "rank " + str(R.free_rank) + ", model " + str(odd));
    t.add_check("degree " + std::to_string(k), D.free_rank == odd + unit && D.torsion.empty(),
                "rank " + str(D.free_rank) + ", model " + str(odd + unit));
  }
  // u is an isomorphism between the Q[[u]] classes
  for (const auto& [k, U] : full.u_action)
    if (k % 2 == 0 && k <= 0 && full.homology.at(k - 2).trusted && U.rows() == 1 && U.cols() == 1)
      t.add_check("u on degree " + std::to_string(k), U.get(0, 0).is_constant() && !U.get(0, 0).is_zero(), U.get(0, 0).to_string());
  t.add_check("trusted degrees", trusted >= 1, str(trusted) + " trusted");
}

void laurent_dual(Context& cx, ResultTable& t) {
  cx.accepts({N, Window, UOrder, Margin});
  const int n = cx.n(2);
  const auto w = cx.window({-10, 2});
  const int N = cx.u_order(5);
  const int m = cx.margin(2);
  const auto T = policy(w, N, m);
  auto H = homology_with_u_action(instantiate_explicit("laurent_dual", n, T));
  add_rows(t, H);
  for (const auto& D : H.homology.degrees) {
    if (!D.trusted) continue;
    const std::size_t want = D.degree % 2 == 0 ? 1 : 0;
    t.add_check("degree " + std::to_string(D.degree), D.free_rank == want && D.torsion.empty(),
                "rank " + str(D.free_rank) + (D.torsion.empty() ? "" : " with torsion") + ", expected " + str(want));
  }
  const auto model = laurent_model(n, T);
  auto rep = compare(H, model);
  std::string detail = model.to_string() + ", " + str(rep.degrees_checked) + " degrees, " + str(rep.u_checked) + " u-steps";
  for (const auto& s : rep.mismatches) detail += "; " + s;
  t.add_check("monomial model", rep.ok && rep.degrees_checked >= 1, detail);
}

void cn_lemma(Context& cx, ResultTable& t) {
  cx.accepts({N, Window, UOrder, Margin});
  const int n = cx.n(1);
  const auto w = cx.window({-8, 0});
  const int N = cx.u_order(4);
  const int m = cx.margin(2);
  if (w.second > 0) throw UsageError("cn-lemma needs a window in degrees <= 0");
  const auto T = policy(w, N, m);

  {  // second kind against the dual naive complex
    auto S = hochschild_second_kind(standard::curved_truncated(n), T);
    auto D = dualize(naive_hochschild(standard::c_algebra(n), policy({-w.second, -w.first}, N, m)));
    auto target = tensor_index(D);
    BasisBijection bij = [&](int k, std::size_t i) -> std::optional<std::size_t> {
      const Chain& c = S.tensors.at(k).at(i);
      Word word;
      for (std::size_t j = c.size() - 1; j >= 1; --j) word.push_back(static_cast<int>(c[j].size()) - 1);
      Chain e = c[0].empty() ? Chain{word} : Chain{word, Word{static_cast<int>(c[0].size()) - 1}};
      auto it = target.find(e);
      if (it == target.end() || it->second.first != k) return std::nullopt;
      return it->second.second;
    };
    auto rep = isomorphic_by_scaling(S, D, bij);
    t.add_check("second kind is the dual naive complex", rep.ok, rep.message);
  }

  auto A = standard::curved_semifree(n);
  {  // curved HKR
    auto D = kaehler(A);
    auto M = hochschild_second_kind(A, T);
    auto R = de_rham_mixed(D, twist_curvature(D, A), T);
    auto rep = hkr_map(A, M, D, R);
    t.add_check("curved HKR chain map", rep.chain_map, rep.message);
    t.add_check("curved HKR quasi-isomorphism", rep.quasi_isomorphism() && !rep.quasi_iso.empty(),
                str(rep.quasi_iso.size()) + " trusted degrees");
  }

  for (int l : {0, 1}) {  // d_2 on the form filtration
    const Rational c = Rational(-1) / ((n + 1) * (l + 1));
    auto rep = g_filtration_d2(n, l, c, FormSign::Commuting);
    t.add_check("d2 of t^" + std::to_string(n) + " dxi^" + std::to_string(l) + " is " + c.get_str() + " x^2 dt dxi^" + std::to_string(l + 1),
                rep.lifted && rep.target_nonzero && rep.matches, rep.message);
  }
  {
    auto D = kaehler(A, FormSign::Commuting);
    auto S = spectral_sequence(form_filtration(D, de_rham_complex(D, twist_curvature(D, A), T)), 3);
    const Page& E3 = S.page(3);
    std::size_t even = 0, trusted = 0;
    for (const auto& [pk, e] : E3.entries)
      if (e.trusted && !e.is_zero()) {
        ++trusted;
        if (pk.second % 2 == 0) ++even;
      }
    t.add_check("E3 in odd degrees", even == 0 && trusted >= 1 && E3.d_zero,
                str(trusted) + " nonzero trusted entries, " + str(even) + " even");
  }

  {  // phi : K -> twisted de Rham
    auto rep = verify_phi(n, T);
    t.add_check("phi is a quasi-isomorphism of mixed complexes", rep.ok(), rep.message());
  }

  // K^v against the monomial model, in the mirrored window
  const auto TD = policy({-w.second, -w.first}, N, m);
  t.parameters.emplace_back("dual_window", std::to_string(TD.min_degree) + ":" + std::to_string(TD.max_degree));
  auto H = homology_with_u_action(instantiate_explicit("K_dual", n, TD));
  add_rows(t, H);
  const auto model = cn_model(n, TD);
  auto rep = compare(H, model);
  std::string detail = model.to_string() + ", " + str(rep.degrees_checked) + " degrees, " + str(rep.u_checked) + " u-steps";
  for (const auto& s : rep.mismatches) detail += "; " + s;
  t.add_check("K dual matches the monomial model", rep.ok && rep.degrees_checked >= 1, detail);
}

void hp_point(Context& cx, ResultTable& t) {
  cx.accepts({N, Window});
  const int n = cx.n(1);
  const auto w = cx.window({-6, 6});
  const auto T = policy(w);
  const auto a = cn_model(n, T), b = cn_model(n + 1, T);
  for (int k = w.first; k <= w.second; ++k) {
    ResultRow r{k, a.rank(k), {}, {}, true};
    if (k % 2 == 0)
      if (auto i = a.i_min(-k / 2)) r.u_action = "x^" + std::to_string(*i);
    t.rows.push_back(r);
  }
  auto rep = embeds(a, b);
  std::string detail = a.to_string() + " in " + b.to_string() + ", " + str(rep.degrees_checked) + " degrees";
  for (const auto& s : rep.mismatches) detail += "; " + s;
  t.add_check("stage " + std::to_string(n) + " embeds in stage " + std::to_string(n + 1), rep.ok, detail);
  t.add_check("stage " + std::to_string(n + 1) + " does not embed in stage " + std::to_string(n), !embeds(b, a).ok);
}

void add_dimension_rows(ResultTable& t, const std::map<std::pair<int, int>, std::size_t>& dims) {
  std::map<int, std::size_t> by_degree;
  for (const auto& [wd, d] : dims) by_degree[wd.second] += d;
  for (const auto& [k, d] : by_degree) t.rows.push_back({k, d, {}, {}, true});
}

void bar_cobar(Context& cx, ResultTable& t) {
  cx.accepts({N, Weight});
  const int n = cx.n(2, 2);
  const int W = cx.weight(4);
  auto rep = bar_cobar_roundtrip(truncated_dual(n), W);
  add_dimension_rows(t, rep.bar_cobar_dims);
  std::string detail;
  for (const auto& s : rep.mismatches) detail += (detail.empty() ? "" : "; ") + s;
  t.add_check("homology of Bar Cobar C equals C", rep.coalgebra_dims == rep.bar_cobar_dims, detail);
  t.add_check("unit is a chain map", rep.unit_chain_map);
  t.add_check("unit is a coalgebra map", rep.unit_coalgebra_map);
  t.add_check("unit is a quasi-isomorphism", rep.unit_quasi_iso);
  t.add_check("roundtrip", rep.ok);
}

void koszul_end(Context& cx, ResultTable& t) {
  cx.accepts({N, Weight});
  const int n = cx.n(2, 2);
  const int W = cx.weight(n + 1);
  auto rep = koszul_dual_endomorphisms(cobar(truncated_dual(n)), W);
  add_dimension_rows(t, rep.dimensions);
  t.add_check("total dimension", rep.total_dimension == static_cast<std::size_t>(n),
              str(rep.total_dimension) + ", expected " + std::to_string(n));
  t.add_check("generator nilpotent of order n", rep.nilpotency == n,
              rep.nilpotency ? "order " + std::to_string(*rep.nilpotency) : "no unique generator or order above the weight bound");
  t.add_check("associative", rep.associative);
}

void amitsur(Context& cx, ResultTable& t) {
  cx.accepts({Length, Seed});
  const int L = cx.length(5, 6);
  const auto seed = cx.seed(1);
  auto record = [&](const std::string& name, const AmitsurReport& rep) {
    std::string detail = "ranks up to " + str(rep.ranks.back());
    for (const auto& f : rep.failures) detail += "; " + f;
    t.add_check(name, rep.ok, detail);
  };
  record("trivial coalgebra", amitsur_homotopy(unit_coalgebra(), L));
  CoalgebraData C;
  C.basis = {{"e0", 0, 0}, {"e1", 0, 0}};
  C.counit = {1, 0};
  C.coproduct = {{{{0, 0}, Rational(1)}, {{0, 1}, Rational(1)}}, {{{1, 0}, Rational(1)}, {{1, 1}, Rational(1)}}};
  record("rank two", amitsur_homotopy(C, L));
  std::size_t ok = 0;
  std::string failed;
  for (std::uint64_t s = seed; s < seed + 20; ++s) {
    auto rep = amitsur_homotopy(random_section_coalgebra(2 + s % 2, s), L);
    if (rep.ok)
      ++ok;
    else
      failed += " " + std::to_string(s);
  }
  t.add_check("random section coalgebras", ok == 20, str(ok) + " of 20" + (failed.empty() ? "" : ", failing seeds" + failed));
}

void deformed_tensor(Context& cx, ResultTable& t) {
  cx.accepts({Length});
  const int L = cx.length(5, 6);
  auto record = [&](const std::string& name, const DeformedTensorAlgebra& T) {
    auto rep = check_associated_graded(T);
    std::string detail = str(rep.graded_checked) + " weights";
    for (const auto& s : rep.mismatches) detail += "; " + s;
    t.add_check(name, rep.ok && rep.graded_checked == static_cast<std::size_t>(L + 1), detail);
    return rep;
  };
  record("rank one", deformed_tensor_algebra(GradedModule{{"e"}, {1}, {}}, {1}, L, 0, L));
  auto rep = record("rank two", deformed_tensor_algebra(GradedModule{{"a", "b"}, {1, 0}, {{{1, Rational(1)}}, {}}}, {1, 0}, L, -1, L));
  for (const auto& [k, d] : rep.filtration_homology.back()) t.rows.push_back({k, d, {}, {}, true});
}

void witt_ring(Context& cx, ResultTable& t) {
  cx.accepts({Length, Seed});
  const int L = cx.length(6, 12);
  const auto seed = cx.seed(1);
  const Ring Q = Ring::Rational;
  {
    bool ok = true;
    for (long a = -3; a <= 3; ++a)
      for (long b = -3; b <= 3; ++b)
        ok = ok && witt_mul(WittVector::teichmuller(Q, Poly(a), L), WittVector::teichmuller(Q, Poly(b), L)) ==
                       WittVector::teichmuller(Q, Poly(a * b), L);
    t.add_check("(1-at)(1-bt) = 1-abt", ok, "a, b in -3..3");
  }
  {
    std::size_t ok = 0;
    for (std::uint64_t s = seed; s < seed + 50; ++s) {
      auto u = random_witt(L, s), v = random_witt(L, s + 1000);
      auto gu = ghost(u), gv = ghost(v), gs = ghost(witt_add(u, v)), gp = ghost(witt_mul(u, v));
      bool good = true;
      for (std::size_t m = 0; m < gu.size(); ++m) good = good && gs[m] == gu[m] + gv[m] && gp[m] == gu[m] * gv[m];
      if (good) ++ok;
    }
    t.add_check("ghost is a ring homomorphism", ok == 50, str(ok) + " of 50");
  }
  {
    auto u = random_witt(L, seed), v = random_witt(L, seed + 1), w = random_witt(L, seed + 2);
    const auto e = WittVector::one(Q, L);
    const bool ok = witt_mul(u, e) == u && witt_mul(u, v) == witt_mul(v, u) &&
                    witt_mul(witt_mul(u, v), w) == witt_mul(u, witt_mul(v, w)) &&
                    witt_mul(u, witt_add(v, w)) == witt_add(witt_mul(u, v), witt_mul(u, w)) &&
                    witt_add(u, witt_neg(u)) == WittVector::zero(Q, L);
    t.add_check("ring axioms", ok);
  }
  {
    const std::vector<Poly> f{Poly(1), Poly(-1)}, g{Poly(1), Poly(-2)};
    const int P = std::max(L, 4);
    auto rep = is_rational(WittVector::quotient(Q, f, g, P), 1);
    const bool ok = rep.rational && rep.certificate &&
                    rep.certificate->first == std::vector<Rational>{1, -1} &&
                    rep.certificate->second == std::vector<Rational>{1, -2};
    t.add_check("(1-t)/(1-2t) certificate", ok, rep.to_string());
  }
  {
    bool ok = true;
    auto w = random_witt(L, seed + 3);
    for (int k = 1; k <= std::min(3, L); ++k) ok = ok && frobenius(verschiebung(w, k), k) == witt_scale(w, k).truncate(L / k);
    t.add_check("F_n V_n = n", ok);
  }
}

struct Entry {
  ScenarioInfo info;
  std::function<void(Context&, ResultTable&)> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = {
      {{"hh-truncated", "reduced Hochschild homology of Q[x]/x^n over Q", "dimension n-1 in every trusted degree"}, hh_truncated},
      {{"b-operator-freeness", "HH(Q[x]/x^(n+1)) -> HH(Q[x]/x^n) on even homology", "zero map on H_2l for l >= n-1"},
       b_operator_freeness},
      {{"affine-line", "negative cyclic homology of Q[x]/x^n over Q", "Q[[u]] in even degrees <= 0 plus n-1 classes in every odd degree >= 1"}, affine_line},
      {{"laurent-dual", "CC- of the Laurent dual complex d f_k = -u e_(k-1) - x^n e_k", "x^-n Q[x, u/x^n]"}, laurent_dual},
      {{"cn-lemma", "curved HKR, spectral pages and K dual for Q[x,t]/t^(n+1) with curvature -xt",
        "n i + (n+1) j + n >= 0"},
       cn_lemma},
      {{"hp-point", "stage n monomial models inside stage n+1", "region inclusion, valuations nonincreasing"}, hp_point},
      {{"bar-cobar", "Bar Cobar of (Q[s]/s^n)^*", "quasi-isomorphic to the coalgebra"}, bar_cobar},
      {{"koszul-end", "Koszul dual of Cobar((Q[s]/s^n)^*)", "total dimension n, generator nilpotent of order n"}, koszul_end},
      {{"amitsur", "Amitsur complexes with a section of the counit", "dh + hd = id"}, amitsur},
      {{"deformed-tensor", "word-length filtration of a deformed tensor algebra", "gr equals the plain tensor algebra"},
       deformed_tensor},
      {{"witt-ring", "big Witt vectors over Q", "ring identities, ghost map, rationality certificate"}, witt_ring},
  };
  return all;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

std::pair<int, int> parse_window(const std::string& text) {
  const auto colon = text.find(':');
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw UsageError("bad window '" + text + "', expected a:b");
    return v;
  };
  if (colon == std::string::npos) throw UsageError("bad window '" + text + "', expected a:b");
  const int a = number(text.substr(0, colon)), b = number(text.substr(colon + 1));
  if (a > b) throw UsageError("empty window '" + text + "'");
  return {a, b};
}

ResultTable run_scenario(const std::string& name, const ScenarioParams& params, std::vector<std::string>* warnings) {
  for (const auto& e : entries()) {
    if (e.info.name != name) continue;
    ResultTable table;
    table.scenario = name;
    Context cx(name, params, warnings, table);
    e.run(cx, table);
    return table;
  }
  throw UsageError("unknown scenario '" + name + "' (try 'list')");
}

ResultTable homology_table(const DgPresentation& P, const HomologyRequest& req) {
  ResultTable t;
  const bool curved = !P.curvature().is_zero();
  t.scenario = req.u_order ? "negative-cyclic" : "hochschild";
  t.parameters.emplace_back("kind", curved ? "second" : "first");
  t.parameters.emplace_back("window", std::to_string(req.window.first) + ":" + std::to_string(req.window.second));
  if (req.u_order) t.parameters.emplace_back("u_order", std::to_string(*req.u_order));
  t.parameters.emplace_back("trust_margin", std::to_string(req.trust_margin));
  if (req.weight_bound) t.parameters.emplace_back("weight_bound", std::to_string(*req.weight_bound));
  t.parameters.emplace_back("reduced", req.reduced ? "true" : "false");

  const int N = req.u_order.value_or(1);
  TruncationPolicy T = policy(req.window, N, req.trust_margin);
  T.weight_bound = req.weight_bound;
  T.drop_unit = req.reduced;
  if (req.u_order) {
    // the mixed complex must reach the levels u^j, j < N, of the top degree
    T.max_degree = req.window.second + 2 * N;
  }
  T.check();
  MixedComplex M = curved ? hochschild_second_kind(P, T) : hochschild_mixed(P, T);
  try {
    verify_mixed(M);
    t.add_check("b^2 = B^2 = bB + Bb = 0", true);
  } catch (const InvariantError& e) {
    t.add_check("b^2 = B^2 = bB + Bb = 0", false, e.what());
    return t;
  }
  if (req.u_order) {
    add_rows(t, homology_with_u_action(negative_cyclic(M, policy(req.window, N, req.trust_margin))));
  } else {
    for (const auto& D : plain_homology(M, req.trust_margin, false).degrees) t.rows.push_back(row_of(D));
  }
  if (M.dropped) t.parameters.emplace_back("dropped_components", std::to_string(M.dropped));
  return t;
}

}  // namespace hochlab
