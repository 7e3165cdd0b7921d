#include "hochlab/barcobar/coalgebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hochlab/exactalg/errors.hpp"
#include "hochlab/exactalg/homology.hpp"

namespace hochlab {

namespace {

using Multi = std::map<std::vector<std::size_t>, Rational>;

void add_to(Multi& m, const std::vector<std::size_t>& key, const Rational& c) {
  if (c == 0) return;
  Rational& v = m[key];
  v += c;
  if (v == 0) m.erase(key);
}

int sign_of(long e) { return e % 2 == 0 ? 1 : -1; }

// The subcomplex spanned by the basis elements accepted by `keep`, tagged by weight.
// `members[k]` lists the global indices in degree k in basis order.
struct Layout {
  FreeComplex complex;
  std::map<int, std::vector<std::size_t>> members;
  std::map<std::size_t, std::size_t> position;  // global index -> position in its degree
};

Layout layout(const CoalgebraData& C, const std::function<bool(std::size_t)>& keep) {
  Layout L;
  int lo = 0, hi = 0;
  bool any = false;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (!keep(i)) continue;
    const int k = C.basis[i].degree;
    if (!any) lo = hi = k;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    any = true;
    L.position[i] = L.members[k].size();
    L.members[k].push_back(i);
  }
  L.complex = FreeComplex(Ring::Rational, lo, hi);
  for (const auto& [k, idx] : L.members) {
    std::vector<std::string> labels;
    std::vector<int> tags;
    for (std::size_t i : idx) {
      labels.push_back(C.basis[i].label);
      tags.push_back(C.basis[i].weight);
    }
    L.complex.set_basis(k, labels, tags);
  }
  if (C.differential.empty()) return L;
  for (const auto& [k, idx] : L.members) {
    if (k - 1 < lo) continue;
    SparseMatrix d(L.complex.rank(k - 1), idx.size(), Ring::Rational);
    for (std::size_t col = 0; col < idx.size(); ++col)
      for (const auto& [j, c] : C.differential[idx[col]]) {
        auto it = L.position.find(j);
        if (it == L.position.end()) throw InvariantError("d(" + C.basis[idx[col]].label + ") leaves the subcomplex");
        d.add(it->second, col, Poly(c));
      }
    L.complex.set_differential(k, std::move(d));
  }
  return L;
}

}  // namespace

// ----------------------------------------------------------- weighted complexes

void WeightedComplex::check() const {
  for (int k = complex.min_degree(); k <= complex.max_degree(); ++k) {
    const auto& tags = complex.blocks(k);
    if (tags.size() != complex.rank(k)) throw InvariantError("degree " + std::to_string(k) + " has untagged basis elements");
    if (k == complex.min_degree()) continue;
    const SparseMatrix d = complex.differential(k);
    const auto& below = complex.blocks(k - 1);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (const auto& [c, v] : d.row(r))
        if (below[r] != tags[c])
          throw InvariantError("d maps " + complex.labels(k)[c] + " (weight " + std::to_string(tags[c]) + ") to weight " +
                               std::to_string(below[r]));
  }
}

std::set<int> WeightedComplex::weights() const {
  std::set<int> w;
  for (int k = complex.min_degree(); k <= complex.max_degree(); ++k)
    for (int t : complex.blocks(k)) w.insert(t);
  return w;
}

FreeComplex WeightedComplex::piece(int weight) const {
  FreeComplex P(complex.ring(), complex.min_degree(), complex.max_degree());
  std::map<int, std::vector<std::size_t>> keep;
  for (int k = complex.min_degree(); k <= complex.max_degree(); ++k) {
    const auto& tags = complex.blocks(k);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < tags.size(); ++i)
      if (tags[i] == weight) {
        keep[k].push_back(i);
        labels.push_back(complex.labels(k)[i]);
      }
    P.set_basis(k, labels, std::vector<int>(labels.size(), weight));
  }
  for (int k = complex.min_degree() + 1; k <= complex.max_degree(); ++k)
    P.set_differential(k, complex.differential(k).select(keep[k - 1], keep[k]));
  return P;
}

std::map<std::pair<int, int>, std::size_t> WeightedComplex::homology_dimensions() const {
  std::map<std::pair<int, int>, std::size_t> dims;
  HomologyOptions opts;
  opts.generators = false;
  opts.trust_margin = 0;
  for (int w : weights()) {
    const auto H = homology(piece(w), opts);
    for (const auto& D : H.degrees)
      if (D.size() > 0) dims[{w, D.degree}] = D.size();
  }
  return dims;
}

// ------------------------------------------------------------------ coalgebras

std::optional<std::size_t> CoalgebraData::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].label == label) return i;
  return std::nullopt;
}

void CoalgebraData::check() const {
  const std::size_t n = size();
  if (counit.size() != n || coproduct.size() != n) throw InvariantError("coalgebra: counit or coproduct has the wrong size");
  if (!differential.empty() && differential.size() != n) throw InvariantError("coalgebra: differential has the wrong size");
  auto fail = [this](std::size_t i, const std::string& what) {
    throw InvariantError(what + " fails on " + basis[i].label);
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [jk, c] : coproduct[i]) {
      const auto [j, k] = jk;
      if (j >= n || k >= n) fail(i, "index range of Delta");
      if (basis[j].degree + basis[k].degree != basis[i].degree || basis[j].weight + basis[k].weight != basis[i].weight)
        fail(i, "homogeneity of Delta");
    }
    if (counit[i] != 0 && (basis[i].degree != 0 || basis[i].weight != 0)) fail(i, "homogeneity of the counit");

    // counit laws
    std::map<std::size_t, Rational> left, right;
    for (const auto& [jk, c] : coproduct[i]) {
      left[jk.second] += counit[jk.first] * c;
      right[jk.first] += c * counit[jk.second];
    }
    for (auto* side : {&left, &right})
      for (const auto& [j, c] : *side)
        if (c != (j == i ? 1 : 0)) fail(i, "counit law");
    if (left[i] != 1 || right[i] != 1) fail(i, "counit law");

    // coassociativity
    Multi lhs, rhs;
    for (const auto& [jk, c] : coproduct[i]) {
      for (const auto& [ab, c2] : coproduct[jk.first]) add_to(lhs, {ab.first, ab.second, jk.second}, c * c2);
      for (const auto& [ab, c2] : coproduct[jk.second]) add_to(rhs, {jk.first, ab.first, ab.second}, c * c2);
    }
    if (lhs != rhs) fail(i, "coassociativity");
  }

  if (coaugmentation) {
    const std::size_t e = *coaugmentation;
    if (e >= n) throw InvariantError("coaugmentation index out of range");
    if (coproduct[e] != Tensor{{{e, e}, Rational(1)}}) fail(e, "Delta(1) = 1 (x) 1");
    for (std::size_t i = 0; i < n; ++i)
      if (counit[i] != (i == e ? 1 : 0)) fail(i, "counit is the coordinate of 1");
  }

  if (differential.empty()) return;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, c] : differential[i]) {
      if (j >= n) fail(i, "index range of d");
      if (basis[j].degree != basis[i].degree - 1 || basis[j].weight != basis[i].weight) fail(i, "homogeneity of d");
      if (counit[j] != 0) fail(i, "counit of d");
    }
    if (coaugmentation && i == *coaugmentation && !differential[i].empty()) fail(i, "d(1) = 0");
    std::map<std::size_t, Rational> dd;
    for (const auto& [j, c] : differential[i])
      for (const auto& [k, c2] : differential[j]) dd[k] += c * c2;
    for (const auto& [k, c] : dd)
      if (c != 0) fail(i, "d^2 = 0");

    // Delta d = (d (x) 1 + 1 (x) d) Delta
    Multi lhs, rhs;
    for (const auto& [j, c] : differential[i])
      for (const auto& [ab, c2] : coproduct[j]) add_to(lhs, {ab.first, ab.second}, c * c2);
    for (const auto& [ab, c] : coproduct[i]) {
      const auto [a, b] = ab;
      for (const auto& [a2, c2] : differential[a]) add_to(rhs, {a2, b}, c * c2);
      for (const auto& [b2, c2] : differential[b]) add_to(rhs, {a, b2}, sign_of(basis[a].degree) * c * c2);
    }
    if (lhs != rhs) fail(i, "coderivation rule");
  }
}

CoalgebraData::Tensor CoalgebraData::reduced_coproduct(std::size_t i) const {
  if (!coaugmentation) throw PreconditionError("reduced coproduct needs a coaugmentation");
  const std::size_t e = *coaugmentation;
  Tensor t;
  if (i == e) return t;
  for (const auto& [jk, c] : coproduct[i])
    if (jk.first != e && jk.second != e) t[jk] = c;
  return t;
}

bool CoalgebraData::conilpotent() const {
  if (!coaugmentation) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (i == *coaugmentation) continue;
    Multi cur{{{i}, Rational(1)}};
    // a nonzero k-fold reduced coproduct needs k linearly independent pieces, so size() steps suffice
    for (std::size_t step = 0; step <= size() && !cur.empty(); ++step) {
      Multi next;
      for (const auto& [key, c] : cur)
        for (const auto& [jk, c2] : reduced_coproduct(key.back())) {
          auto k2 = key;
          k2.back() = jk.first;
          k2.push_back(jk.second);
          add_to(next, k2, c * c2);
        }
      cur = std::move(next);
    }
    if (!cur.empty()) return false;
  }
  return true;
}

WeightedComplex CoalgebraData::complex() const {
  return WeightedComplex{layout(*this, [](std::size_t) { return true; }).complex};
}

CoalgebraData unit_coalgebra() {
  CoalgebraData C;
  C.basis = {{"1", 0, 0}};
  C.counit = {1};
  C.coaugmentation = 0;
  C.coproduct = {{{{0, 0}, Rational(1)}}};
  return C;
}

CoalgebraData truncated_dual(int n, int degree) {
  if (n < 1) throw PreconditionError("truncated_dual needs n >= 1");
  CoalgebraData C;
  for (int k = 0; k < n; ++k) {
    C.basis.push_back({k == 0 ? std::string("1") : "s" + std::to_string(k), k * degree, k});
    C.counit.push_back(k == 0 ? 1 : 0);
    CoalgebraData::Tensor t;
    for (int i = 0; i <= k; ++i) t[{static_cast<std::size_t>(i), static_cast<std::size_t>(k - i)}] = 1;
    C.coproduct.push_back(std::move(t));
  }
  C.coaugmentation = 0;
  return C;
}

// ------------------------------------------------------------------------ bar

BarConstruction bar(const DgPresentation& A, int max_weight) {
  if (A.base() != Ring::Rational) throw PreconditionError("bar: the algebra must be defined over Q");
  if (!A.curvature().is_zero()) throw PreconditionError("bar: curved algebras are not augmented");
  if (max_weight < 0) throw PreconditionError("bar: negative weight bound");
  for (const auto& g : A.generators()) {
    if (g.weight < 1) throw PreconditionError("bar: generator " + g.name + " needs positive weight for weightwise finiteness");
  }
  if (auto v = validate_presentation(A); !v.ok) throw PreconditionError("bar: " + v.message);

  // normal forms of all nonempty products of generators within the weight bound
  std::set<Word> found;
  Word raw;
  std::function<void(int)> walk = [&](int weight) {
    if (!raw.empty())
      if (auto nf = A.normalize(raw)) found.insert(nf->second);
    for (std::size_t g = 0; g < A.generators().size(); ++g) {
      const int w = A.generators()[g].weight;
      if (weight + w > max_weight) continue;
      raw.push_back(static_cast<int>(g));
      walk(weight + w);
      raw.pop_back();
    }
  };
  walk(0);
  std::vector<Word> reduced(found.begin(), found.end());
  std::sort(reduced.begin(), reduced.end(), [&A](const Word& a, const Word& b) {
    return std::make_pair(A.weight(a), a) < std::make_pair(A.weight(b), b);
  });

  BarConstruction B;
  std::vector<Word> cur;
  std::function<void(int)> grow = [&](int weight) {
    B.index[cur] = B.words.size();
    B.words.push_back(cur);
    for (const auto& w : reduced) {
      const int ww = A.weight(w);
      if (weight + ww > max_weight) continue;
      cur.push_back(w);
      grow(weight + ww);
      cur.pop_back();
    }
  };
  grow(0);

  auto& C = B.coalgebra;
  for (const auto& bw : B.words) {
    int deg = 0, wt = 0;
    std::string label = "[";
    for (std::size_t i = 0; i < bw.size(); ++i) {
      deg += A.degree(bw[i]) + 1;
      wt += A.weight(bw[i]);
      label += (i ? "|" : "") + A.word_to_string(bw[i]);
    }
    C.basis.push_back({label + "]", deg, wt});
    C.counit.push_back(bw.empty() ? 1 : 0);
    CoalgebraData::Tensor t;
    for (std::size_t cut = 0; cut <= bw.size(); ++cut) {
      std::vector<Word> l(bw.begin(), bw.begin() + static_cast<long>(cut)), r(bw.begin() + static_cast<long>(cut), bw.end());
      t[{B.index.at(l), B.index.at(r)}] = 1;
    }
    C.coproduct.push_back(std::move(t));
  }
  C.coaugmentation = 0;

  auto lookup = [&B](const std::vector<Word>& w) {
    auto it = B.index.find(w);
    if (it == B.index.end()) throw InvariantError("bar: word outside the weight bound");
    return it->second;
  };
  C.differential.resize(B.words.size());
  for (std::size_t idx = 0; idx < B.words.size(); ++idx) {
    const auto& bw = B.words[idx];
    auto& out = C.differential[idx];
    auto put = [&out](std::size_t j, const Rational& c) {
      Rational& v = out[j];
      v += c;
      if (v == 0) out.erase(j);
    };
    long eps = 0;  // sum of |a_j| + 1 over the entries before position i
    for (std::size_t i = 0; i < bw.size(); ++i) {
      const AlgebraElement da = A.differential(A.word(bw[i]));
      for (const auto& [w, c] : da.terms()) {
        if (w.empty()) throw PreconditionError("bar: d(" + A.word_to_string(bw[i]) + ") has a scalar part");
        if (A.weight(w) != A.weight(bw[i])) throw PreconditionError("bar: d does not preserve weight");
        auto nw = bw;
        nw[i] = w;
        put(lookup(nw), -sign_of(eps) * c.coeff(0));
      }
      eps += A.degree(bw[i]) + 1;
      if (i + 1 < bw.size()) {
        const AlgebraElement prod = A.multiply(A.word(bw[i]), A.word(bw[i + 1]));
        for (const auto& [w, c] : prod.terms()) {
          auto nw = bw;
          nw[i] = w;
          nw.erase(nw.begin() + static_cast<long>(i) + 1);
          put(lookup(nw), -sign_of(eps) * c.coeff(0));
        }
      }
    }
  }
  C.check();
  return B;
}

// ---------------------------------------------------------------------- cobar

DgPresentation cobar(const CoalgebraData& C) {
  C.check();
  if (!C.coaugmentation) throw PreconditionError("cobar: coaugmentation required");
  if (!C.conilpotent()) throw PreconditionError("cobar: coalgebra is not conilpotent");
  const std::size_t e = *C.coaugmentation;
  std::vector<GeneratorSpec> gens;
  std::map<std::size_t, int> gen_of;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (i == e) continue;
    gen_of[i] = static_cast<int>(gens.size());
    gens.push_back({C.basis[i].label, C.basis[i].degree - 1, C.basis[i].weight, std::nullopt});
  }
  DgPresentation P(Ring::Rational, MulKind::FreeAssociative, gens);
  for (const auto& [i, g] : gen_of) {
    AlgebraElement d = P.scalar(Poly());
    if (!C.differential.empty())
      for (const auto& [j, c] : C.differential[i]) d -= P.word({gen_of.at(j)}, Poly(c));
    for (const auto& [jk, c] : C.reduced_coproduct(i))
      d += P.word({gen_of.at(jk.first), gen_of.at(jk.second)}, Poly(sign_of(C.basis[jk.first].degree) * c));
    P.set_differential(gens[static_cast<std::size_t>(g)].name, d);
  }
  if (auto v = validate_presentation(P); !v.ok) throw InvariantError("cobar: " + v.message);
  return P;
}

// ------------------------------------------------------------------ roundtrip

RoundtripReport bar_cobar_roundtrip(const CoalgebraData& C, int max_weight) {
  RoundtripReport rep;
  auto fail = [&rep](const std::string& s) {
    rep.ok = false;
    rep.mismatches.push_back(s);
  };
  const DgPresentation A = cobar(C);
  const BarConstruction B = bar(A, max_weight);
  const auto& BC = B.coalgebra;

  auto in_bound = [&C, max_weight](std::size_t i) { return C.basis[i].weight <= max_weight; };
  const Layout LC = layout(C, in_bound);
  const Layout LB = layout(BC, [](std::size_t) { return true; });
  rep.coalgebra_dims = WeightedComplex{LC.complex}.homology_dimensions();
  rep.bar_cobar_dims = WeightedComplex{LB.complex}.homology_dimensions();
  if (rep.coalgebra_dims != rep.bar_cobar_dims) fail("homology dimensions differ");

  // unit map: (-1)^k [s^-1 c_1|...|s^-1 c_k] summed over k-fold reduced coproducts
  const std::size_t e = *C.coaugmentation;
  std::map<std::size_t, Word> letter;
  {
    int g = 0;
    for (std::size_t i = 0; i < C.size(); ++i)
      if (i != e) letter[i] = Word{g++};
  }
  std::vector<std::map<std::size_t, Rational>> eta(C.size());
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (!in_bound(i)) continue;
    if (i == e) {
      eta[i][B.index.at(std::vector<Word>{})] = 1;
      continue;
    }
    Multi cur{{{i}, Rational(1)}};
    for (int k = 1; !cur.empty(); ++k) {
      for (const auto& [key, c] : cur) {
        std::vector<Word> bw;
        for (std::size_t j : key) bw.push_back(letter.at(j));
        auto it = B.index.find(bw);
        if (it == B.index.end()) throw InvariantError("roundtrip: unit map leaves the weight bound");
        eta[i][it->second] += sign_of(k) * c;
      }
      Multi next;
      for (const auto& [key, c] : cur)
        for (const auto& [jk, c2] : C.reduced_coproduct(key.back())) {
          auto k2 = key;
          k2.back() = jk.first;
          k2.push_back(jk.second);
          add_to(next, k2, c * c2);
        }
      cur = std::move(next);
    }
  }

  auto apply_d = [](const std::vector<std::map<std::size_t, Rational>>& d, const std::map<std::size_t, Rational>& v) {
    std::map<std::size_t, Rational> out;
    if (d.empty()) return out;
    for (const auto& [j, c] : v)
      for (const auto& [k, c2] : d[j]) out[k] += c * c2;
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  };
  rep.unit_chain_map = true;
  rep.unit_coalgebra_map = true;
  for (std::size_t i = 0; i < C.size(); ++i) {
    if (!in_bound(i)) continue;
    std::map<std::size_t, Rational> lhs = apply_d(BC.differential, eta[i]), rhs;
    if (!C.differential.empty())
      for (const auto& [j, c] : C.differential[i])
        for (const auto& [k, c2] : eta[j]) rhs[k] += c * c2;
    std::erase_if(rhs, [](const auto& kv) { return kv.second == 0; });
    if (lhs != rhs) {
      rep.unit_chain_map = false;
      fail("unit map does not commute with d on " + C.basis[i].label);
    }
    Multi dl, dr;
    for (const auto& [k, c] : eta[i])
      for (const auto& [ab, c2] : BC.coproduct[k]) add_to(dl, {ab.first, ab.second}, c * c2);
    for (const auto& [ab, c] : C.coproduct[i])
      for (const auto& [p, c1] : eta[ab.first])
        for (const auto& [q, c2] : eta[ab.second]) add_to(dr, {p, q}, c * c1 * c2);
    if (dl != dr) {
      rep.unit_coalgebra_map = false;
      fail("unit map does not commute with Delta on " + C.basis[i].label);
    }
  }

  // quasi-isomorphism, degree by degree on the block-tagged complexes
  const auto HC = homology(LC.complex);
  const auto HB = homology(LB.complex);
  rep.unit_quasi_iso = true;
  for (const auto& D : HC.degrees) {
    const int k = D.degree;
    if (D.is_zero() && (!HB.has(k) || HB.at(k).is_zero())) continue;
    if (!HB.has(k)) {
      rep.unit_quasi_iso = false;
      fail("Bar(Cobar(C)) has no degree " + std::to_string(k));
      continue;
    }
    SparseMatrix f(LB.complex.rank(k), LC.complex.rank(k), Ring::Rational);
    for (std::size_t col = 0; col < LC.members.at(k).size(); ++col)
      for (const auto& [j, c] : eta[LC.members.at(k)[col]]) f.add(LB.position.at(j), col, Poly(c));
    if (!is_isomorphism(induced_map(HC, k, HB, k, f), D, HB.at(k))) {
      rep.unit_quasi_iso = false;
      fail("unit map is not an isomorphism on H_" + std::to_string(k));
    }
  }
  for (const auto& D : HB.degrees)
    if (!HC.has(D.degree) && !D.is_zero()) {
      rep.unit_quasi_iso = false;
      fail("Bar(Cobar(C)) has homology in degree " + std::to_string(D.degree));
    }
  return rep;
}

// ------------------------------------------------------------- Koszul duality

std::string KoszulDualReport::to_string() const {
  std::ostringstream os;
  os << "dimension " << total_dimension << " (";
  bool first = true;
  for (const auto& [wk, n] : dimensions) {
    os << (first ? "" : ", ") << "weight " << wk.first << " degree " << wk.second << ": " << n;
    first = false;
  }
  os << ")";
  if (nilpotency) os << ", generator nilpotent of order " << *nilpotency;
  if (!associative) os << ", product not associative";
  return os.str();
}

KoszulDualReport koszul_dual_endomorphisms(const DgPresentation& A, int max_weight) {
  const BarConstruction B = bar(A, max_weight);
  const auto& BC = B.coalgebra;
  KoszulDualReport rep;

  // weightwise duals: the dual of bar degree k sits in degree -k, d is the transpose
  struct Dual {
    Layout layout;
    FreeComplex complex;
    HomologyReport homology;
  };
  std::map<int, Dual> duals;
  for (int w = 0; w <= max_weight; ++w) {
    Layout L = layout(BC, [&BC, w](std::size_t i) { return BC.basis[i].weight == w; });
    if (L.members.empty()) continue;
    const int lo = -L.complex.max_degree(), hi = -L.complex.min_degree();
    FreeComplex D(Ring::Rational, lo, hi);
    for (int p = lo; p <= hi; ++p) D.set_basis(p, L.complex.labels(-p), L.complex.blocks(-p));
    for (int p = lo + 1; p <= hi; ++p) D.set_differential(p, L.complex.differential(-p + 1).transpose());
    D.validate();
    HomologyOptions opts;
    opts.trust_margin = 0;
    auto H = homology(D, opts);
    duals.emplace(w, Dual{std::move(L), std::move(D), std::move(H)});
  }

  // homology basis
  std::map<std::pair<int, int>, std::size_t> first_class;  // (weight, degree) -> first class index
  std::vector<const Vector*> reps;
  for (const auto& [w, D] : duals)
    for (const auto& deg : D.homology.degrees) {
      if (deg.is_zero()) continue;
      rep.dimensions[{-w, deg.degree}] = deg.size();
      rep.total_dimension += deg.size();
      first_class[{w, deg.degree}] = rep.classes.size();
      for (std::size_t g = 0; g < deg.size(); ++g) {
        rep.classes.emplace_back(-w, deg.degree, g);
        reps.push_back(&deg.generators[g]);
      }
    }

  // (f * g)(c) = sum over c = c1 | c2 of (-1)^{|c1||c2|} f(c1) g(c2)
  auto product = [&](std::size_t a, std::size_t b) {
    std::map<std::size_t, Rational> out;
    const auto [wa, pa, ia] = rep.classes[a];
    const auto [wb, pb, ib] = rep.classes[b];
    const int w = -(wa + wb), p = pa + pb;
    if (w > max_weight) throw PreconditionError("koszul dual: product beyond the weight bound");
    auto it = duals.find(w);
    if (it == duals.end() || !it->second.complex.in_window(p)) return out;
    const Dual& D = it->second;
    const auto& members = D.layout.members.at(-p);
    Vector h(members.size());
    const Layout& La = duals.at(-wa).layout;
    const Layout& Lb = duals.at(-wb).layout;
    for (std::size_t col = 0; col < members.size(); ++col)
      for (const auto& [lr, c] : BC.coproduct[members[col]]) {
        const auto [l, r] = lr;
        if (BC.basis[l].weight != -wa || BC.basis[l].degree != -pa) continue;
        const Poly& fa = (*reps[a])[La.position.at(l)];
        const Poly& fb = (*reps[b])[Lb.position.at(r)];
        if (fa.is_zero() || fb.is_zero()) continue;
        h[col] += Poly(c * sign_of(static_cast<long>(pa) * pb)) * fa * fb;
      }
    const Vector dh = D.complex.differential(p).apply(h);
    for (const auto& v : dh)
      if (!v.is_zero()) throw InvariantError("koszul dual: product of cocycles is not a cocycle");
    const Vector coords = D.homology.coordinates(p, h);
    const std::size_t base = first_class.count({w, p}) ? first_class.at({w, p}) : 0;
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (!coords[k].is_zero()) out[base + k] = coords[k].coeff(0);
    return out;
  };

  const std::size_t n = rep.classes.size();
  auto weight_of = [&rep](std::size_t a) { return -std::get<0>(rep.classes[a]); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (weight_of(a) + weight_of(b) <= max_weight) rep.products[{a, b}] = product(a, b);

  auto mul = [&rep](const std::map<std::size_t, Rational>& x, const std::map<std::size_t, Rational>& y) {
    std::map<std::size_t, Rational> out;
    for (const auto& [i, ci] : x)
      for (const auto& [j, cj] : y) {
        auto it = rep.products.find({i, j});
        if (it == rep.products.end()) throw PreconditionError("koszul dual: product beyond the weight bound");
        for (const auto& [k, ck] : it->second) out[k] += ci * cj * ck;
      }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (weight_of(a) + weight_of(b) + weight_of(c) > max_weight) continue;
        std::map<std::size_t, Rational> ea{{a, 1}}, eb{{b, 1}}, ec{{c, 1}};
        if (mul(mul(ea, eb), ec) != mul(ea, mul(eb, ec))) rep.associative = false;
      }

  std::vector<std::size_t> weight_one;
  for (std::size_t a = 0; a < n; ++a)
    if (weight_of(a) == 1) weight_one.push_back(a);
  if (weight_one.size() == 1) {
    const std::map<std::size_t, Rational> g{{weight_one[0], 1}};
    auto power = g;
    for (int k = 1; k <= max_weight; ++k) {
      if (power.empty()) {
        rep.nilpotency = k;
        break;
      }
      if (k == max_weight) break;
      power = mul(power, g);
    }
  }
  return rep;
}

}  // namespace hochlab
