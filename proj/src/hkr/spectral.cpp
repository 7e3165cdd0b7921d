#include "hochlab/hkr/spectral.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <sstream>
#include <tuple>

#include "hochlab/exactalg/errors.hpp"
#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/smith.hpp"

namespace hochlab {

void FiltrationData::check() const {
  for (int k = complex.min_degree(); k <= complex.max_degree(); ++k) {
    auto it = level.find(k);
    if (it == level.end() || it->second.size() != complex.rank(k))
      throw PreconditionError("filtration level missing in degree " + std::to_string(k));
  }
  for (int k = complex.min_degree() + 1; k <= complex.max_degree(); ++k) {
    const SparseMatrix d = complex.differential(k);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (const auto& [c, x] : d.row(r))
        if (level.at(k - 1)[r] < level.at(k)[c])
          throw PreconditionError("differential lowers the filtration in degree " + std::to_string(k));
  }
}

int FiltrationData::min_level() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [k, v] : level)
    for (int l : v) m = std::min(m, l);
  return m == std::numeric_limits<int>::max() ? 0 : m;
}

int FiltrationData::max_level() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [k, v] : level)
    for (int l : v) m = std::max(m, l);
  return m == std::numeric_limits<int>::min() ? 0 : m;
}

FiltrationData form_filtration(const DeRhamData& D, const MixedComplex& M) {
  FiltrationData F{M.b, {}};
  for (int k = M.min_degree(); k <= M.max_degree(); ++k) {
    auto& lv = F.level[k];
    auto it = M.tensors.find(k);
    if (it == M.tensors.end()) continue;
    for (const auto& c : it->second) lv.push_back(D.form_degree(c.at(0)));
  }
  F.check();
  return F;
}

FiltrationData weight_filtration(const FreeComplex& C) {
  FiltrationData F{C, {}};
  for (int k = C.min_degree(); k <= C.max_degree(); ++k) {
    const auto& tags = C.blocks(k);
    if (tags.size() != C.rank(k)) throw PreconditionError("weight filtration needs block tags in degree " + std::to_string(k));
    F.level[k] = tags;
  }
  F.check();
  return F;
}

FiltrationData u_filtration(const CyclicComplex& C) {
  FiltrationData F{C.complex, {}};
  for (int k = C.complex.min_degree(); k <= C.complex.max_degree(); ++k) {
    auto& lv = F.level[k];
    for (const auto& [j, i] : C.level.at(k)) lv.push_back(j);
  }
  F.check();
  return F;
}

FreeComplex evaluate_at(const FreeComplex& C, const Rational& at) {
  FreeComplex E(Ring::Rational, C.min_degree(), C.max_degree());
  for (int k = C.min_degree(); k <= C.max_degree(); ++k) E.set_basis(k, C.labels(k), C.blocks(k));
  for (int k = C.min_degree() + 1; k <= C.max_degree(); ++k) {
    const SparseMatrix d = C.differential(k);
    SparseMatrix e(d.rows(), d.cols(), Ring::Rational);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (const auto& [c, x] : d.row(r)) e.set(r, c, Poly(x.eval(at)));
    E.set_differential(k, std::move(e));
  }
  return E;
}

FiltrationData evaluate_at(const FiltrationData& F, const Rational& at) {
  return FiltrationData{evaluate_at(F.complex, at), F.level};
}

std::size_t Page::total_size(int k) const {
  std::size_t s = 0;
  for (const auto& [pk, e] : entries)
    if (pk.second == k) s += e.size();
  return s;
}

const Page& SpectralSequence::page(int r) const {
  for (const auto& P : pages)
    if (P.r == r) return P;
  throw PreconditionError("page " + std::to_string(r) + " was not computed");
}

namespace {

using SparseVec = std::map<std::size_t, Poly>;

SparseVec column(const SparseMatrix& M, std::size_t c) {
  SparseVec v;
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Poly x = M.get(r, c);
    if (!x.is_zero()) v.emplace(r, std::move(x));
  }
  return v;
}

SparseVec mat_vec(const SparseMatrix& M, const SparseVec& v) {
  SparseVec out;
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Poly s;
    for (const auto& [c, x] : M.row(r)) {
      auto it = v.find(c);
      if (it != v.end()) s += x * it->second;
    }
    if (!s.is_zero()) out.emplace(r, std::move(s));
  }
  return out;
}

SparseVec to_sparse(const Vector& v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace(i, v[i]);
  return s;
}

// Z_r^p in degree k: a basis in full coordinates and the coordinate map on F^p.
struct Cycles {
  std::vector<std::size_t> support;  // indices of level >= p
  SparseMatrix basis;                // rank(k) x z
  SparseMatrix coords;               // z x |support|
  std::size_t size() const { return basis.cols(); }
};

// E_r^{p,k} as Z / relations, with U R V = diag.
struct Quotient {
  std::shared_ptr<const Cycles> Z;
  SmithResult snf;                 // of the relation matrix (only U, Uinv)
  std::vector<std::size_t> gens;   // indices i with a nonunit (or absent) diagonal entry
  PageEntry entry;
};

class Engine {
 public:
  explicit Engine(const FiltrationData& F) : F_(F), ring_(F.complex.ring()) {
    F_.check();
    lo_level_ = F_.min_level();
    hi_level_ = F_.max_level();
  }

  Ring ring() const { return ring_; }
  int span() const { return hi_level_ - lo_level_; }
  int lo_level() const { return lo_level_; }
  int hi_level() const { return hi_level_; }

  std::vector<std::size_t> at_least(int k, int p) const {
    std::vector<std::size_t> out;
    const auto& lv = F_.level.at(k);
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (lv[i] >= p) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> between(int k, int a, int b) const {
    std::vector<std::size_t> out;
    if (!F_.complex.in_window(k)) return out;
    const auto& lv = F_.level.at(k);
    for (std::size_t i = 0; i < lv.size(); ++i)
      if (lv[i] >= a && lv[i] < b) out.push_back(i);
    return out;
  }

  const SparseMatrix& d(int k) {
    auto it = d_.find(k);
    if (it == d_.end()) it = d_.emplace(k, F_.complex.differential(k)).first;
    return it->second;
  }

  std::shared_ptr<const Cycles> cycles(int r, int p, int k) {
    const auto key = std::make_tuple(r, p, k);
    auto it = z_.find(key);
    if (it != z_.end()) return it->second;
    auto Z = std::make_shared<Cycles>();
    Z->support = at_least(k, p);
    const std::size_t n = F_.complex.rank(k), s = Z->support.size();
    const auto rows = between(k - 1, p, p + r);
    if (rows.empty() || s == 0) {
      Z->basis = SparseMatrix(n, s, ring_);
      Z->coords = SparseMatrix::identity(s, ring_);
      for (std::size_t c = 0; c < s; ++c) Z->basis.set(Z->support[c], c, Poly(1));
    } else {
      const SparseMatrix A = d(k).select(rows, Z->support);
      const SmithResult snf = smith_normal_form(A, {false, true});
      const std::size_t z = s - snf.rank;
      Z->basis = SparseMatrix(n, z, ring_);
      Z->coords = SparseMatrix(z, s, ring_);
      for (std::size_t c = 0; c < z; ++c) {
        for (std::size_t i = 0; i < s; ++i) {
          Poly x = snf.V.get(i, snf.rank + c);
          if (!x.is_zero()) Z->basis.set(Z->support[i], c, x);
        }
        for (const auto& [i, x] : snf.Vinv.row(snf.rank + c)) Z->coords.set(c, i, x);
      }
    }
    z_.emplace(key, Z);
    return Z;
  }

  // Coordinates in Z of a vector supported on its support; throws if not.
  SparseVec coordinates(const Cycles& Z, const SparseVec& v) const {
    SparseVec local;
    for (const auto& [i, x] : v) {
      auto pos = std::lower_bound(Z.support.begin(), Z.support.end(), i);
      if (pos == Z.support.end() || *pos != i) throw InvariantError("vector leaves the filtration step");
      local.emplace(static_cast<std::size_t>(pos - Z.support.begin()), x);
    }
    return mat_vec(Z.coords, local);
  }

  const Quotient& quotient(int r, int p, int k) {
    const auto key = std::make_tuple(r, p, k);
    auto it = e_.find(key);
    if (it != e_.end()) return it->second;
    Quotient Q;
    Q.Z = cycles(r, p, k);
    std::vector<SparseVec> rel;
    const auto Zs = cycles(r - 1, p + 1, k);
    for (std::size_t c = 0; c < Zs->size(); ++c) rel.push_back(coordinates(*Q.Z, column(Zs->basis, c)));
    if (F_.complex.in_window(k + 1)) {
      const auto Zb = cycles(r - 1, p - r + 1, k + 1);
      for (std::size_t c = 0; c < Zb->size(); ++c) rel.push_back(coordinates(*Q.Z, mat_vec(d(k + 1), column(Zb->basis, c))));
    }
    const std::size_t z = Q.Z->size();
    SparseMatrix R(z, rel.size(), ring_);
    for (std::size_t c = 0; c < rel.size(); ++c)
      for (const auto& [i, x] : rel[c]) R.set(i, c, x);
    Q.snf = smith_normal_form(R, {true, false});
    for (std::size_t i = 0; i < z; ++i) {
      if (i < Q.snf.rank && Q.snf.diagonal[i].is_unit()) continue;
      Q.gens.push_back(i);
    }
    Q.entry.free_rank = z - Q.snf.rank;
    Q.entry.torsion = Q.snf.invariant_factors();
    // free generators first, then torsion, to match the entry layout
    std::stable_partition(Q.gens.begin(), Q.gens.end(), [&](std::size_t i) { return i >= Q.snf.rank; });
    return e_.emplace(key, std::move(Q)).first->second;
  }

  // Class coordinates of v (in Z_r^p of degree k), torsion entries reduced.
  Vector class_of(int r, int p, int k, const SparseVec& v) {
    const Quotient& Q = quotient(r, p, k);
    const SparseVec y = mat_vec(Q.snf.U, coordinates(*Q.Z, v));
    Vector out;
    for (std::size_t i : Q.gens) {
      auto f = y.find(i);
      Poly x = f == y.end() ? Poly(0) : f->second;
      if (i < Q.snf.rank) x = x.divmod(Q.snf.diagonal[i]).second;
      out.push_back(x);
    }
    return out;
  }

  SparseMatrix differential(int r, int p, int k) {
    const Quotient& S = quotient(r, p, k);
    const Quotient& T = quotient(r, p + r, k - 1);
    SparseMatrix m(T.gens.size(), S.gens.size(), ring_);
    for (std::size_t g = 0; g < S.gens.size(); ++g) {
      const SparseVec lift = mat_vec(S.Z->basis, column(S.snf.Uinv, S.gens[g]));
      const Vector c = class_of(r, p + r, k - 1, mat_vec(d(k), lift));
      for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) m.set(i, g, c[i]);
    }
    return m;
  }

 private:
  const FiltrationData& F_;
  Ring ring_;
  int lo_level_ = 0, hi_level_ = 0;
  std::map<int, SparseMatrix> d_;
  std::map<std::tuple<int, int, int>, std::shared_ptr<const Cycles>> z_;
  std::map<std::tuple<int, int, int>, Quotient> e_;
};

}  // namespace

SpectralSequence spectral_sequence(const FiltrationData& F, int r_max, int trust_margin) {
  if (r_max < 1) throw PreconditionError("r_max must be at least 1");
  Engine E(F);
  SpectralSequence S;
  S.ring = E.ring();
  const int lo = F.complex.min_degree(), hi = F.complex.max_degree();
  auto trusted = [&](int k) { return k - lo >= trust_margin && hi - k >= trust_margin; };
  for (int r = 1; r <= r_max; ++r) {
    Page P;
    P.r = r;
    for (int k = lo; k <= hi; ++k)
      for (int p = E.lo_level(); p <= E.hi_level(); ++p) {
        PageEntry e = E.quotient(r, p, k).entry;
        e.trusted = trusted(k);
        if (!e.is_zero()) P.entries[{p, k}] = e;
      }
    for (const auto& [pk, e] : P.entries) {
      const auto [p, k] = pk;
      if (k - 1 < lo || p + r > E.hi_level()) continue;
      auto tgt = P.entries.find({p + r, k - 1});
      if (tgt == P.entries.end()) continue;
      SparseMatrix m = E.differential(r, p, k);
      if (m.is_zero()) continue;
      if (e.trusted && tgt->second.trusted) P.d_zero = false;
      P.d[pk] = std::move(m);
    }
    S.pages.push_back(std::move(P));
  }
  if (r_max > E.span()) {
    int r0 = r_max;
    while (r0 >= 1 && S.pages[static_cast<std::size_t>(r0 - 1)].d_zero) --r0;
    S.degenerates_at = r0 + 1;
  }
  return S;
}

std::optional<Vector> lift_to_page(const FiltrationData& F, int r, int p, int k, const Vector& a) {
  Engine E(F);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && F.level.at(k)[i] < p) throw PreconditionError("element is not in the filtration step");
  const auto rows = E.between(k - 1, p, p + r);
  const SparseVec da = mat_vec(E.d(k), to_sparse(a));
  if (rows.empty()) return a;
  const auto cols = E.at_least(k, p + 1);
  Vector rhs;
  for (std::size_t r0 : rows) {
    auto it = da.find(r0);
    rhs.push_back(it == da.end() ? Poly(0) : -it->second);
  }
  if (cols.empty()) {
    if (is_zero_vector(rhs)) return a;
    return std::nullopt;
  }
  auto c = solve_factor(E.d(k).select(rows, cols), rhs);
  if (!c) return std::nullopt;
  Vector out = a;
  for (std::size_t i = 0; i < cols.size(); ++i) out[cols[i]] += (*c)[i];
  return out;
}

Vector page_class(const FiltrationData& F, int r, int p, int k, const Vector& a) {
  Engine E(F);
  return E.class_of(r, p, k, to_sparse(a));
}

D2Report g_filtration_d2(int n, int l, const Rational& coefficient, FormSign sign) {
  if (n < 1 || l < 0) throw PreconditionError("need n >= 1 and l >= 0");
  const DgPresentation A = standard::curved_semifree(n);
  const DeRhamData D = kaehler(A, sign);
  const int k = -2 * n * (l + 1);
  TruncationPolicy W;
  W.min_degree = k - 3;
  W.max_degree = std::min(0, k + 2);
  const MixedComplex M = de_rham_complex(D, twist_curvature(D, A), W);
  const FiltrationData F = form_filtration(D, M);
  const DgPresentation& P = D.forms;
  const auto idx = tensor_index(M);
  auto vec = [&](const AlgebraElement& e, int deg) {
    Vector v(M.b.rank(deg), Poly(0));
    for (const auto& [w, c] : e.terms()) v.at(idx.at(Chain{w}).second) += c;
    return v;
  };
  auto power = [&](const AlgebraElement& a, int e) {
    AlgebraElement r = P.unit();
    for (int s = 0; s < e; ++s) r = P.multiply(r, a);
    return r;
  };
  const AlgebraElement t = P.gen("t"), dt = P.gen("dt"), dxi = P.gen("dxi");
  const int xi = P.generator_index("xi");
  D2Report rep;

  // a d-cycle on the associated graded: correct t^n dxi^l by words containing xi
  Vector a = vec(P.multiply(power(t, n), power(dxi, l)), k);
  {
    const SparseMatrix d = M.b.differential(k);
    std::vector<std::size_t> rows, cols;
    for (std::size_t r = 0; r < d.rows(); ++r)
      if (F.level.at(k - 1)[r] == l) rows.push_back(r);
    const auto& words = M.tensors.at(k);
    for (std::size_t c = 0; c < words.size(); ++c)
      if (F.level.at(k)[c] == l && std::count(words[c][0].begin(), words[c][0].end(), xi) > 0) cols.push_back(c);
    const Vector da = d.apply(a);
    Vector rhs;
    for (std::size_t r : rows) rhs.push_back(-da[r]);
    if (!is_zero_vector(rhs)) {
      auto c = cols.empty() ? std::nullopt : solve_factor(d.select(rows, cols), rhs);
      if (!c) {
        rep.message = "t^n dxi^l has no cycle representative on the associated graded";
        return rep;
      }
      for (std::size_t i = 0; i < cols.size(); ++i) a[cols[i]] += (*c)[i];
    }
  }
  const auto lift = lift_to_page(F, 2, l, k, a);
  if (!lift) {
    rep.message = "class does not survive to E_2";
    return rep;
  }
  rep.lifted = true;
  const Vector y = M.b.differential(k).apply(*lift);
  const Vector target = vec(P.multiply(dt, power(dxi, l + 1)), k - 1);
  Vector expected = target;
  for (auto& c : expected) c = c * (Poly(coefficient) * Poly::monomial(1, 2));
  Vector x2 = target;
  for (auto& c : x2) c = c * Poly::monomial(1, 2);
  rep.target_nonzero = !is_zero_vector(page_class(F, 2, l + 2, k - 1, x2));
  rep.matches = page_class(F, 2, l + 2, k - 1, y) == page_class(F, 2, l + 2, k - 1, expected);
  std::ostringstream os;
  os << "d_2 of t^" << n << " dxi^" << l << (rep.matches ? " equals " : " differs from ") << rational_to_string(coefficient)
     << " x^2 dt dxi^" << (l + 1);
  rep.message = os.str();
  return rep;
}

}  // namespace hochlab
