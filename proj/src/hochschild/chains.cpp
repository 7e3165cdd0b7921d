#include "hochlab/hochschild/chains.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "hochlab/exactalg/errors.hpp"
#include "hochlab/exactalg/homology.hpp"

namespace hochlab {

void TruncationPolicy::check() const {
  if (min_degree > max_degree) throw PreconditionError("truncation window is empty");
  if (u_order < 1) throw PreconditionError("u-order must be at least 1");
  if (trust_margin < 1) throw PreconditionError("trust margin must be at least 1");
}

void add_to(ChainVector& v, const Chain& c, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto it = v.find(c);
  if (it == v.end()) {
    v.emplace(c, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero()) v.erase(it);
}

namespace {

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Chain splice(const Chain& c, std::size_t from, std::size_t to, const std::vector<Word>& middle) {
  Chain out(c.begin(), c.begin() + static_cast<long>(from));
  out.insert(out.end(), middle.begin(), middle.end());
  out.insert(out.end(), c.begin() + static_cast<long>(to), c.end());
  return out;
}

}  // namespace

HochschildOps::HochschildOps(const DgPresentation& A, bool with_curvature) : A_(A), curvature_(with_curvature) {}

int HochschildOps::degree(const Chain& c) const {
  int d = 0;
  for (std::size_t i = 0; i < c.size(); ++i) d += A_.degree(c[i]) + (i > 0 ? 1 : 0);
  return d;
}

int HochschildOps::weight(const Chain& c) const {
  int w = 0;
  for (const auto& a : c) w += A_.weight(a);
  return w;
}

std::string HochschildOps::label(const Chain& c) const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "|" : "") + A_.word_to_string(c[i]);
  return s + ")";
}

ChainVector HochschildOps::b(const Chain& c) const {
  ChainVector r;
  const std::size_t k = c.size() - 1;
  // shifted degrees and their prefix sums
  std::vector<int> sd(k + 1), n(k + 2, 0);
  for (std::size_t i = 0; i <= k; ++i) sd[i] = A_.degree(c[i]) + (i > 0 ? 1 : 0);
  for (std::size_t i = 0; i <= k; ++i) n[i + 1] = n[i] + sd[i];

  for (std::size_t i = 0; i <= k; ++i) {
    const int sg = i == 0 ? 1 : -koszul_sign(n[i]);
    const AlgebraElement da = A_.differential(A_.word(c[i]));
    for (const auto& [w, coeff] : da.terms()) {
      if (i >= 1 && w.empty()) continue;
      add_to(r, splice(c, i, i + 1, {w}), Poly(sg) * coeff);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    auto p = A_.normalize(concat(c[i], c[i + 1]));
    if (p) add_to(r, splice(c, i, i + 2, {p->second}), Poly(p->first * koszul_sign(n[i + 1])));
  }
  if (k >= 1) {
    auto p = A_.normalize(concat(c[k], c[0]));
    if (p) {
      Chain out{p->second};
      out.insert(out.end(), c.begin() + 1, c.begin() + static_cast<long>(k));
      add_to(r, out, Poly(-p->first * koszul_sign(static_cast<long>(sd[k]) * n[k])));
    }
  }
  if (curvature_) {
    for (std::size_t i = 0; i <= k; ++i) {
      const int sg = -koszul_sign(n[i + 1]);
      for (const auto& [w, coeff] : A_.curvature().terms()) {
        if (w.empty()) continue;
        add_to(r, splice(c, i + 1, i + 1, {w}), Poly(sg) * coeff);
      }
    }
  }
  return r;
}

ChainVector HochschildOps::B(const Chain& c) const {
  ChainVector r;
  if (c[0].empty()) return r;
  const std::size_t len = c.size();
  std::vector<int> s(len);
  for (std::size_t i = 0; i < len; ++i) s[i] = A_.degree(c[i]) + 1;
  for (std::size_t i = 0; i < len; ++i) {
    long s1 = 0, s2 = 0;
    for (std::size_t j = i; j < len; ++j) s1 += s[j];
    for (std::size_t j = 0; j < i; ++j) s2 += s[j];
    Chain out{Word{}};
    out.insert(out.end(), c.begin() + static_cast<long>(i), c.end());
    out.insert(out.end(), c.begin(), c.begin() + static_cast<long>(i));
    add_to(r, out, Poly(koszul_sign(s1 * s2)));
  }
  return r;
}

ChainVector HochschildOps::b(const ChainVector& v) const {
  ChainVector r;
  for (const auto& [c, coeff] : v)
    for (const auto& [o, x] : b(c)) add_to(r, o, coeff * x);
  return r;
}

ChainVector HochschildOps::B(const ChainVector& v) const {
  ChainVector r;
  for (const auto& [c, coeff] : v)
    for (const auto& [o, x] : B(c)) add_to(r, o, coeff * x);
  return r;
}

namespace {

// +1: all generator degrees >= 0, -1: all <= -2. Anything else is rejected.
int degree_sign(const DgPresentation& P) {
  std::vector<std::string> pos, neg, bad;
  for (const auto& g : P.generators()) {
    if (g.degree >= 0) pos.push_back(g.name);
    else if (g.degree <= -2) neg.push_back(g.name);
    else bad.push_back(g.name);
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s;
  };
  if (!bad.empty()) throw PreconditionError("unbounded tensor length in window: shifted degree 0 for " + join(bad));
  if (!pos.empty() && !neg.empty())
    throw PreconditionError("unbounded tensor length in window: mixed-sign shifted degrees (" + join(pos) +
                            " against " + join(neg) + ")");
  return neg.empty() ? 1 : -1;
}

struct WordInfo {
  Word w;
  int degree;
  int weight;
};

}  // namespace

std::map<int, std::vector<Chain>> hochschild_chains(const DgPresentation& P, const TruncationPolicy& T) {
  T.check();
  const int sign = degree_sign(P);
  if (T.weight_bound)
    for (const auto& g : P.generators())
      if (g.weight < 0) throw PreconditionError("weight bound needs nonnegative weights; " + g.name + " has " + std::to_string(g.weight));
  const int lo = T.min_degree, hi = T.max_degree;
  std::map<int, std::vector<Word>> basis =
      sign > 0 ? (hi >= 0 ? P.monomial_basis(0, hi, T.weight_bound) : std::map<int, std::vector<Word>>{})
               : (lo <= 0 ? P.monomial_basis(lo - 1, 0, T.weight_bound) : std::map<int, std::vector<Word>>{});
  std::vector<WordInfo> words;
  for (const auto& [d, list] : basis)
    for (const auto& w : list) words.push_back({w, d, P.weight(w)});

  std::map<int, std::vector<std::tuple<int, std::size_t, Chain>>> found;
  Chain cur;
  std::function<void(int, int)> rec = [&](int deg, int wt) {
    if (deg >= lo && deg <= hi && !(T.drop_unit && cur.size() == 1 && cur[0].empty()))
      found[deg].emplace_back(wt, cur.size(), cur);
    for (const auto& wi : words) {
      if (wi.w.empty()) continue;
      const int nd = deg + wi.degree + 1;
      if (sign > 0 ? nd > hi : nd < lo) continue;
      const int nw = wt + wi.weight;
      if (T.weight_bound && nw > *T.weight_bound) continue;
      cur.push_back(wi.w);
      rec(nd, nw);
      cur.pop_back();
    }
  };
  for (const auto& wi : words) {
    if (sign < 0 && wi.degree < lo) continue;  // only bar entries (|a| + 1) may sit one below the window
    cur = {wi.w};
    rec(wi.degree, wi.weight);
  }
  std::map<int, std::vector<Chain>> out;
  for (auto& [d, list] : found) {
    std::sort(list.begin(), list.end());
    for (auto& item : list) out[d].push_back(std::move(std::get<2>(item)));
  }
  return out;
}

namespace {

MixedComplex build_hochschild(const DgPresentation& P, const TruncationPolicy& T, bool curved) {
  HochschildOps ops(P, curved);
  MixedComplex M;
  M.provenance = curved ? "second-kind" : "first-kind";
  M.tensors = hochschild_chains(P, T);
  const int lo = T.min_degree, hi = T.max_degree;
  const int sign = degree_sign(P);
  M.exact_below = sign > 0 && lo <= 0;
  M.exact_above = sign < 0 && hi >= 0;
  M.b = FreeComplex(P.base(), lo, hi);
  for (int k = lo; k <= hi; ++k) {
    const auto& list = M.tensors[k];
    std::vector<std::string> labels;
    std::vector<int> blocks;
    for (const auto& c : list) {
      labels.push_back(ops.label(c));
      blocks.push_back(ops.weight(c));
    }
    M.b.set_basis(k, std::move(labels), std::move(blocks));
  }
  auto idx = tensor_index(M);
  auto fill = [&](const ChainVector& img, int target, std::size_t col, SparseMatrix& m) {
    for (const auto& [c, coeff] : img) {
      auto it = idx.find(c);
      if (it == idx.end() || it->second.first != target) {
        ++M.dropped;
        continue;
      }
      m.add(it->second.second, col, coeff);
    }
  };
  for (int k = lo; k <= hi; ++k) {
    const auto& list = M.tensors[k];
    if (k > lo) {
      SparseMatrix d(M.b.rank(k - 1), list.size(), P.base());
      for (std::size_t j = 0; j < list.size(); ++j) fill(ops.b(list[j]), k - 1, j, d);
      M.b.set_differential(k, std::move(d));
    }
    if (k < hi) {
      SparseMatrix Bk(M.b.rank(k + 1), list.size(), P.base());
      for (std::size_t j = 0; j < list.size(); ++j) fill(ops.B(list[j]), k + 1, j, Bk);
      M.B[k] = std::move(Bk);
    }
  }
  verify_mixed(M);
  return M;
}

}  // namespace

MixedComplex hochschild_mixed(const DgPresentation& P, const TruncationPolicy& T) {
  if (!P.curvature().is_zero())
    throw PreconditionError("presentation is curved; use the second-kind complex");
  return build_hochschild(P, T, false);
}

MixedComplex hochschild_second_kind(const DgPresentation& P, const TruncationPolicy& T) {
  return build_hochschild(P, T, true);
}

int NaiveOps::degree(const Chain& e) const {
  if (e.size() == 1) return A_.degree(e[0]);
  return A_.degree(e[0]) + A_.generators().at(e[1].at(0)).degree + 1;
}

std::string NaiveOps::label(const Chain& e) const {
  if (e.size() == 1) return A_.word_to_string(e[0]);
  const std::string form = "d" + A_.generators().at(e[1].at(0)).name;
  return e[0].empty() ? form : A_.word_to_string(e[0]) + "*" + form;
}

ChainVector NaiveOps::omega_of_ddr(const Word& word, const Word& a0) const {
  ChainVector r;
  for (std::size_t pos = 0; pos < word.size(); ++pos) {
    const Word left = concat(a0, Word(word.begin(), word.begin() + static_cast<long>(pos)));
    const int g = word[pos];
    const Word rest(word.begin() + static_cast<long>(pos) + 1, word.end());
    const int sg = koszul_sign(static_cast<long>(A_.degree(rest)) * (A_.degree(left) + A_.generators()[g].degree));
    auto p = A_.normalize(concat(rest, left));
    if (p) add_to(r, Chain{p->second, Word{g}}, Poly(sg * p->first));
  }
  return r;
}

ChainVector NaiveOps::D(const Chain& e) const {
  ChainVector r;
  const Word& w = e[0];
  const AlgebraElement dw_elem = A_.differential(A_.word(w));
  if (e.size() == 1) {
    for (const auto& [v, c] : dw_elem.terms()) add_to(r, Chain{v}, c);
    return r;
  }
  const int g = e[1][0];
  const int dw = A_.degree(w), dg = A_.generators()[g].degree;
  if (auto p = A_.normalize(concat(w, Word{g}))) add_to(r, Chain{p->second}, Poly(p->first));
  if (auto p = A_.normalize(concat(Word{g}, w)))
    add_to(r, Chain{p->second}, Poly(-p->first * koszul_sign(static_cast<long>(dw) * dg)));
  for (const auto& [v, c] : dw_elem.terms()) add_to(r, Chain{v, Word{g}}, -c);
  const AlgebraElement dgen = A_.generator_differential(g);
  for (const auto& [v, c] : dgen.terms())
    for (const auto& [o, x] : omega_of_ddr(v, w)) add_to(r, o, Poly(-koszul_sign(dw)) * c * x);
  return r;
}

ChainVector NaiveOps::B(const Chain& e) const {
  if (e.size() == 1) return omega_of_ddr(e[0]);
  return {};
}

MixedComplex naive_hochschild(const DgPresentation& P, const TruncationPolicy& T) {
  T.check();
  if (!P.curvature().is_zero()) throw PreconditionError("naive complex needs a non-curved presentation");
  for (const auto& g : P.generators())
    if (g.nilpotency) throw PreconditionError("naive complex needs a semi-free presentation; " + g.name + " is nilpotent");
  const int sign = degree_sign(P);
  NaiveOps ops(P);
  const int lo = T.min_degree, hi = T.max_degree;
  int gmin = 0, gmax = 0;
  for (const auto& g : P.generators()) {
    gmin = std::min(gmin, g.degree);
    gmax = std::max(gmax, g.degree);
  }
  const int wlo = std::min(lo, lo - gmax - 1), whi = std::max(hi, hi - gmin - 1);
  std::map<int, std::vector<Word>> words;
  if (sign > 0 && whi >= 0) words = P.monomial_basis(std::max(wlo, 0), whi, T.weight_bound);
  if (sign < 0 && wlo <= 0) words = P.monomial_basis(wlo, std::min(whi, 0), T.weight_bound);

  MixedComplex M;
  M.provenance = "naive";
  M.exact_below = sign > 0 && lo <= 0;
  M.exact_above = sign < 0 && hi >= 0;
  std::map<int, std::vector<std::tuple<int, int, Chain>>> found;
  for (const auto& [d, list] : words)
    for (const auto& w : list) {
      if (d >= lo && d <= hi && !(T.drop_unit && w.empty())) found[d].emplace_back(P.weight(w), 0, Chain{w});
      for (std::size_t g = 0; g < P.generators().size(); ++g) {
        const Chain e{w, Word{static_cast<int>(g)}};
        const int de = ops.degree(e);
        const int we = P.weight(w) + P.generators()[g].weight;
        if (de < lo || de > hi || (T.weight_bound && we > *T.weight_bound)) continue;
        found[de].emplace_back(we, 1, e);
      }
    }
  M.b = FreeComplex(P.base(), lo, hi);
  for (int k = lo; k <= hi; ++k) {
    auto& list = found[k];
    std::sort(list.begin(), list.end());
    std::vector<std::string> labels;
    std::vector<int> blocks;
    for (auto& [wt, kind, e] : list) {
      labels.push_back(ops.label(e));
      blocks.push_back(wt);
      M.tensors[k].push_back(e);
    }
    M.tensors[k];
    M.b.set_basis(k, std::move(labels), std::move(blocks));
  }
  auto idx = tensor_index(M);
  auto fill = [&](const ChainVector& img, int target, std::size_t col, SparseMatrix& m) {
    for (const auto& [c, coeff] : img) {
      auto it = idx.find(c);
      if (it == idx.end() || it->second.first != target) {
        ++M.dropped;
        continue;
      }
      m.add(it->second.second, col, coeff);
    }
  };
  for (int k = lo; k <= hi; ++k) {
    const auto& list = M.tensors[k];
    if (k > lo) {
      SparseMatrix d(M.b.rank(k - 1), list.size(), P.base());
      for (std::size_t j = 0; j < list.size(); ++j) fill(ops.D(list[j]), k - 1, j, d);
      M.b.set_differential(k, std::move(d));
    }
    if (k < hi) {
      SparseMatrix Bk(M.b.rank(k + 1), list.size(), P.base());
      for (std::size_t j = 0; j < list.size(); ++j) fill(ops.B(list[j]), k + 1, j, Bk);
      M.B[k] = std::move(Bk);
    }
  }
  verify_mixed(M);
  return M;
}

bool ChainMapReport::quasi_isomorphism() const {
  if (!chain_map) return false;
  for (const auto& [k, ok] : quasi_iso)
    if (!ok) return false;
  return true;
}

void check_mixed_map(const MixedComplex& src, const MixedComplex& dst, ChainMapReport& rep) {
  auto comp = [&](int k) {
    auto it = rep.components.find(k);
    if (it != rep.components.end()) return it->second;
    return SparseMatrix(dst.b.rank(k), src.b.rank(k), src.b.ring());
  };
  auto fail = [&](int k, const std::string& what) {
    if (!rep.chain_map) return;
    rep.chain_map = false;
    rep.first_failing_degree = k;
    rep.message = what + " fails on degree " + std::to_string(k);
  };
  for (int k = src.min_degree(); k <= src.max_degree(); ++k) {
    if (k - 1 >= src.min_degree() && dst.b.in_window(k) && dst.b.in_window(k - 1))
      if (comp(k - 1) * src.b.differential(k) != dst.b.differential(k) * comp(k)) fail(k, "f b = b f");
    if (k + 1 <= src.max_degree() && dst.b.in_window(k) && dst.b.in_window(k + 1))
      if (comp(k + 1) * src.B_at(k) != dst.B_at(k) * comp(k)) fail(k, "f B = B f");
  }
}

void compare_homology(const MixedComplex& src, const MixedComplex& dst, ChainMapReport& rep, int trust_margin) {
  HomologyOptions opts;
  opts.trust_margin = trust_margin;
  const HomologyReport hs = homology(src.b, opts), hd = homology(dst.b, opts);
  for (const auto& D : hs.degrees) {
    const int k = D.degree;
    if (!D.trusted || !hd.has(k) || !hd.at(k).trusted) continue;
    auto it = rep.components.find(k);
    SparseMatrix f = it != rep.components.end() ? it->second : SparseMatrix(dst.b.rank(k), src.b.rank(k), src.b.ring());
    rep.quasi_iso[k] = is_isomorphism(induced_map(hs, k, hd, k, f), D, hd.at(k));
  }
}

namespace {

SparseMatrix assemble(const MixedComplex& src, const MixedComplex& dst, int k,
                      const std::function<ChainVector(const Chain&)>& f) {
  const auto idx = tensor_index(dst);
  const auto& list = src.tensors.at(k);
  SparseMatrix m(dst.b.rank(k), list.size(), src.b.ring());
  for (std::size_t j = 0; j < list.size(); ++j)
    for (const auto& [c, coeff] : f(list[j])) {
      auto it = idx.find(c);
      if (it == idx.end() || it->second.first != k)
        throw InvariantError("chain map leaves the target window at " + std::to_string(k));
      m.add(it->second.second, j, coeff);
    }
  return m;
}

}  // namespace

ChainMapReport comparison_map(const DgPresentation& P, const MixedComplex& M, const MixedComplex& Nv,
                              int trust_margin) {
  if (M.min_degree() != Nv.min_degree() || M.max_degree() != Nv.max_degree())
    throw PreconditionError("comparison map needs equal windows");
  NaiveOps ops(P);
  ChainMapReport rep;
  for (int k = M.min_degree(); k <= M.max_degree(); ++k)
    rep.components[k] = assemble(M, Nv, k, [&](const Chain& c) -> ChainVector {
      if (c.size() == 1) return {{Chain{c[0]}, Poly(1)}};
      if (c.size() > 2) return {};
      ChainVector r;
      const Poly sg(koszul_sign(P.degree(c[0])));
      for (const auto& [e, x] : ops.omega_of_ddr(c[1], c[0])) add_to(r, e, sg * x);
      return r;
    });
  check_mixed_map(M, Nv, rep);
  if (rep.chain_map) compare_homology(M, Nv, rep, trust_margin);
  return rep;
}

ChainMapReport induced_chain_map(const AlgebraMorphism& f, const MixedComplex& src, const MixedComplex& dst) {
  ChainMapReport rep;
  for (int k = src.min_degree(); k <= src.max_degree(); ++k) {
    if (!dst.b.in_window(k)) continue;
    rep.components[k] = assemble(src, dst, k, [&](const Chain& c) -> ChainVector {
      ChainVector acc{{Chain{}, Poly(1)}};
      for (std::size_t i = 0; i < c.size(); ++i) {
        const AlgebraElement img = apply_morphism(f, f.source->word(c[i]));
        ChainVector next;
        for (const auto& [prefix, coeff] : acc)
          for (const auto& [w, x] : img.terms()) {
            if (i > 0 && w.empty()) continue;
            Chain ext = prefix;
            ext.push_back(w);
            add_to(next, ext, coeff * x);
          }
        acc = std::move(next);
      }
      return acc;
    });
  }
  check_mixed_map(src, dst, rep);
  return rep;
}

}  // namespace hochlab
