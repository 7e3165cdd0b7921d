#include "hochlab/hochschild/cyclic.hpp"

#include <algorithm>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {

using SparseVec = std::map<std::size_t, Poly>;

void accumulate(SparseVec& acc, std::size_t i, const Poly& v) {
  if (v.is_zero()) return;
  auto it = acc.find(i);
  if (it == acc.end()) {
    acc.emplace(i, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) acc.erase(it);
}

// M v for M given by its transpose (rows of MT are columns of M).
SparseVec apply_columns(const SparseMatrix& MT, const SparseVec& v) {
  SparseVec out;
  for (const auto& [i, c] : v)
    for (const auto& [r, x] : MT.row(i)) accumulate(out, r, c * x);
  return out;
}

SparseVec apply_rows(const SparseMatrix& M, const SparseVec& v) {
  SparseVec out;
  for (std::size_t r = 0; r < M.rows(); ++r) {
    Poly s;
    for (const auto& [c, x] : M.row(r)) {
      auto it = v.find(c);
      if (it != v.end()) s += x * it->second;
    }
    accumulate(out, r, s);
  }
  return out;
}

std::string u_prefix(int j) {
  if (j == 0) return "";
  if (j == 1) return "u*";
  return "u^" + std::to_string(j) + "*";
}

bool respects_blocks(const SparseMatrix& B, const std::vector<int>& row_tags, const std::vector<int>& col_tags) {
  if (row_tags.size() != B.rows() || col_tags.size() != B.cols()) return false;
  for (std::size_t r = 0; r < B.rows(); ++r)
    for (const auto& [c, x] : B.row(r))
      if (row_tags[r] != col_tags[c]) return false;
  return true;
}

}  // namespace

bool CyclicComplex::restricted(int t, int j) const {
  (void)t;
  return policy.style == TruncationStyle::Subcomplex && j == policy.u_order - 1;
}

CyclicComplex::SparseVec CyclicComplex::element_sparse(int t, std::size_t i) const {
  const auto [j, idx] = level.at(t).at(i);
  const int m = t + 2 * j;
  SparseVec v;
  if (!restricted(t, j)) {
    v.emplace(idx, Poly(1));
    return v;
  }
  const SparseMatrix& K = top_.at(m).basis;
  for (std::size_t r = 0; r < K.rows(); ++r) {
    Poly x = K.get(r, idx);
    if (!x.is_zero()) v.emplace(r, x);
  }
  return v;
}

void CyclicComplex::place(int t, int j, const SparseVec& w, std::size_t col, SparseMatrix& out) const {
  if (w.empty()) return;
  auto deg = offset_.find(t);
  if (deg == offset_.end()) return;
  auto lev = deg->second.find(j);
  if (lev == deg->second.end()) return;  // level outside the kept range
  const std::size_t base = lev->second;
  if (!restricted(t, j)) {
    for (const auto& [i, x] : w) out.add(base + i, col, x);
    return;
  }
  const int m = t + 2 * j;
  const SparseVec k = apply_rows(top_.at(m).coords, w);
  for (const auto& [i, x] : k) out.add(base + i, col, x);
}

std::vector<std::pair<int, Vector>> CyclicComplex::element(int t, std::size_t i) const {
  const int j = level.at(t).at(i).first;
  const int m = t + 2 * j;
  Vector v(source->b.rank(m), Poly(0));
  for (const auto& [r, x] : element_sparse(t, i)) v[r] = x;
  return {{j, v}};
}

Vector CyclicComplex::coordinates(int t, const std::vector<std::pair<int, Vector>>& parts) const {
  SparseMatrix col(complex.rank(t), 1, complex.ring());
  for (const auto& [j, v] : parts) {
    SparseVec w;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) w.emplace(i, v[i]);
    if (restricted(t, j) && offset_.count(t) && offset_.at(t).count(j)) {
      const int m = t + 2 * j;
      if (!apply_rows(source->B_at(m), w).empty())
        throw InvariantError("top u-level component is not in ker B in degree " + std::to_string(t));
    }
    place(t, j, w, 0, col);
  }
  Vector out(complex.rank(t), Poly(0));
  for (std::size_t r = 0; r < col.rows(); ++r) out[r] = col.get(r, 0);
  return out;
}

namespace {

using RationalRow = std::map<std::size_t, Rational>;

// Kernel of a matrix over Q, one vector per free column f with entry 1 at f
// and zeros at the other free columns; f is the largest index of the vector.
std::vector<RationalRow> field_kernel(const SparseMatrix& A) {
  std::map<std::size_t, RationalRow> pivots;  // lead column -> row with lead 1
  for (std::size_t r = 0; r < A.rows(); ++r) {
    RationalRow row;
    for (const auto& [c, p] : A.row(r)) row.emplace(c, p.coeff(0));
    auto it = row.begin();
    while (it != row.end()) {
      auto pv = pivots.find(it->first);
      if (pv == pivots.end()) break;
      const Rational a = it->second;
      for (const auto& [c, v] : pv->second) {
        Rational& e = row[c];
        e -= a * v;
        if (e == 0) row.erase(c);
      }
      it = row.begin();
      while (it != row.end() && it->first < pv->first) ++it;
    }
    if (it == row.end()) continue;
    const std::size_t lead = it->first;
    const Rational inv = 1 / it->second;
    RationalRow P;
    for (auto jt = it; jt != row.end(); ++jt) P.emplace(jt->first, jt->second * inv);
    pivots.emplace(lead, std::move(P));
  }
  std::vector<RationalRow> out;
  for (std::size_t f = 0; f < A.cols(); ++f) {
    if (pivots.count(f)) continue;
    // back substitution over the pivots left of f
    RationalRow x{{f, Rational(1)}};
    for (auto pv = std::make_reverse_iterator(pivots.lower_bound(f)); pv != pivots.rend(); ++pv) {
      Rational s = 0;
      for (const auto& [c, v] : pv->second) {
        if (c == pv->first) continue;
        auto xt = x.find(c);
        if (xt != x.end()) s += v * xt->second;
      }
      if (s != 0) x.emplace(pv->first, -s);
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Bases of ker B_m and coordinate rows, blockwise when B_m respects the weight tags.
void kernel_of(const MixedComplex& M, int m, SparseMatrix& basis, SparseMatrix& coords, std::vector<int>& tags) {
  const std::size_t n = M.b.rank(m);
  const Ring ring = M.b.ring();
  const SparseMatrix Bm = M.B_at(m);
  const std::vector<int>& col_tags = M.b.blocks(m);
  if (Bm.is_zero()) {
    basis = SparseMatrix::identity(n, ring);
    coords = SparseMatrix::identity(n, ring);
    tags = col_tags.size() == n ? col_tags : std::vector<int>(n, 0);
    return;
  }
  std::vector<int> row_tags = M.b.blocks(m + 1);
  std::map<int, std::vector<std::size_t>> col_groups, row_groups;
  if (respects_blocks(Bm, row_tags, col_tags)) {
    for (std::size_t c = 0; c < n; ++c) col_groups[col_tags[c]].push_back(c);
    for (std::size_t r = 0; r < Bm.rows(); ++r) row_groups[row_tags[r]].push_back(r);
  } else {
    for (std::size_t c = 0; c < n; ++c) col_groups[0].push_back(c);
    for (std::size_t r = 0; r < Bm.rows(); ++r) row_groups[0].push_back(r);
  }
  std::vector<SparseVec> cols;  // kernel vectors
  std::vector<SparseVec> rows;  // coordinate rows
  tags.clear();
  for (const auto& [tag, cidx] : col_groups) {
    const auto rit = row_groups.find(tag);
    if (rit == row_groups.end()) {
      for (std::size_t c : cidx) {
        cols.push_back({{c, Poly(1)}});
        rows.push_back({{c, Poly(1)}});
        tags.push_back(tag);
      }
      continue;
    }
    const SparseMatrix sub = Bm.select(rit->second, cidx);
    if (ring == Ring::Rational) {
      // over a field: echelon form, kernel coordinates are the free entries
      for (auto& v : field_kernel(sub)) {
        SparseVec out;
        std::size_t free_col = 0;
        for (const auto& [i, a] : v) out.emplace(cidx[i], Poly(a));
        free_col = v.rbegin()->first;
        cols.push_back(std::move(out));
        rows.push_back({{cidx[free_col], Poly(1)}});
        tags.push_back(tag);
      }
      continue;
    }
    const SmithResult snf = smith_normal_form(sub, {false, true});
    for (std::size_t k = snf.rank; k < cidx.size(); ++k) {
      SparseVec v, w;
      for (std::size_t i = 0; i < cidx.size(); ++i) {
        Poly a = snf.V.get(i, k);
        if (!a.is_zero()) v.emplace(cidx[i], a);
      }
      for (const auto& [i, a] : snf.Vinv.row(k)) w.emplace(cidx[i], a);
      cols.push_back(std::move(v));
      rows.push_back(std::move(w));
      tags.push_back(tag);
    }
  }
  basis = SparseMatrix(n, cols.size(), ring);
  coords = SparseMatrix(cols.size(), n, ring);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    for (const auto& [i, a] : cols[k]) basis.set(i, k, a);
    for (const auto& [i, a] : rows[k]) coords.set(k, i, a);
  }
}

bool covered(const MixedComplex& M, int deg) {
  if (M.b.in_window(deg)) return true;
  return (deg < M.min_degree() && M.exact_below) || (deg > M.max_degree() && M.exact_above);
}

}  // namespace

CyclicComplex negative_cyclic(const MixedComplex& M, const TruncationPolicy& T) {
  T.check();
  {
    // every level of every degree, and B out of the top level in Subcomplex style
    const int need = T.max_degree + 2 * T.u_order - (T.style == TruncationStyle::Subcomplex ? 1 : 2);
    if (!M.exact_above && M.max_degree() < need)
      throw PreconditionError("negative_cyclic: the mixed complex stops at degree " + std::to_string(M.max_degree()) +
                              ", the window up to " + std::to_string(T.max_degree) + " with " + std::to_string(T.u_order) +
                              " u-levels needs degree " + std::to_string(need));
    if (!M.exact_below && M.min_degree() > T.min_degree)
      throw PreconditionError("negative_cyclic: the mixed complex starts at degree " + std::to_string(M.min_degree()) +
                              ", above the window start " + std::to_string(T.min_degree));
  }
  CyclicComplex C;
  C.source = std::make_shared<const MixedComplex>(M);
  C.policy = T;
  const int N = T.u_order, lo = T.min_degree, hi = T.max_degree;
  const bool tagged = M.b.has_blocks();
  C.complex = FreeComplex(M.b.ring(), lo, hi);

  for (int t = lo; t <= hi; ++t) {
    std::vector<std::string> labels;
    std::vector<int> blocks;
    auto& lev = C.level[t];
    for (int j = 0; j < N; ++j) {
      const int m = t + 2 * j;
      if (!M.b.in_window(m)) continue;
      C.offset_[t][j] = labels.size();
      if (C.restricted(t, j)) {
        auto it = C.top_.find(m);
        if (it == C.top_.end()) {
          CyclicComplex::TopKernel K;
          kernel_of(M, m, K.basis, K.coords, K.blocks);
          it = C.top_.emplace(m, std::move(K)).first;
        }
        for (std::size_t c = 0; c < it->second.basis.cols(); ++c) {
          labels.push_back(u_prefix(j) + "ker" + std::to_string(c) + "[" + std::to_string(m) + "]");
          blocks.push_back(it->second.blocks[c]);
          lev.emplace_back(j, c);
        }
      } else {
        for (std::size_t i = 0; i < M.b.rank(m); ++i) {
          labels.push_back(u_prefix(j) + M.b.labels(m)[i]);
          if (tagged) blocks.push_back(M.b.blocks(m)[i]);
          lev.emplace_back(j, i);
        }
      }
    }
    if (!tagged) blocks.clear();
    C.complex.set_basis(t, std::move(labels), std::move(blocks));
  }

  std::map<int, SparseMatrix> bT, BT;
  auto transposed = [&M](std::map<int, SparseMatrix>& cache, int m, bool boundary) -> const SparseMatrix& {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, (boundary ? M.b.differential(m) : M.B_at(m)).transpose()).first;
    return it->second;
  };
  for (int t = lo + 1; t <= hi; ++t) {
    SparseMatrix d(C.complex.rank(t - 1), C.complex.rank(t), M.b.ring());
    const auto& lev = C.level[t];
    for (std::size_t col = 0; col < lev.size(); ++col) {
      const int j = lev[col].first;
      const int m = t + 2 * j;
      const SparseVec v = C.element_sparse(t, col);
      if (M.b.in_window(m - 1)) C.place(t - 1, j, apply_columns(transposed(bT, m, true), v), col, d);
      if (j + 1 < N && M.b.in_window(m + 1))
        C.place(t - 1, j + 1, apply_columns(transposed(BT, m, false), v), col, d);
    }
    C.complex.set_differential(t, std::move(d));
  }
  C.complex.validate();

  // trust: window edges, coverage of every level touched, and the u-truncation
  const int margin = T.trust_margin;
  for (int t = lo; t <= hi; ++t) {
    bool ok = t - lo >= margin && hi - t >= margin;
    bool cover = true;
    for (int s = t - 1; s <= t + 1; ++s)
      for (int j = 0; j <= N; ++j) cover = cover && covered(M, s + 2 * j);
    const bool exact = M.exact_above && t + 2 * N - 1 > M.max_degree();
    int jmin = -1;
    for (int j = 0; j < N; ++j)
      if (M.b.in_window(t + 2 * j) && M.b.rank(t + 2 * j) > 0) {
        jmin = j;
        break;
      }
    const bool u_ok = exact || (jmin >= 0 && jmin + margin <= N - 1);
    C.trusted[t] = ok && cover && u_ok;
  }
  return C;
}

CyclicHomology homology_with_u_action(const CyclicComplex& C, bool generators) {
  CyclicHomology out;
  HomologyOptions opts;
  opts.trust_margin = 0;
  opts.generators = generators;
  out.homology = homology(C.complex, opts);
  for (auto& D : out.homology.degrees) D.trusted = C.trusted.at(D.degree);
  if (!generators) return out;

  const int N = C.policy.u_order;
  const Ring ring = C.complex.ring();
  const int lo = C.complex.min_degree(), hi = C.complex.max_degree();

  if (C.policy.style == TruncationStyle::Quotient) {
    for (int t = lo + 2; t <= hi; ++t) {
      if (!C.trusted.at(t) || !C.trusted.at(t - 2)) continue;
      SparseMatrix U(C.complex.rank(t - 2), C.complex.rank(t), ring);
      for (std::size_t i = 0; i < C.complex.rank(t); ++i) {
        const int j = C.level.at(t)[i].first;
        if (j + 1 < N) C.place(t - 2, j + 1, C.element_sparse(t, i), i, U);
      }
      out.u_action[t] = induced_map(out.homology, t, out.homology, t - 2, U);
    }
    return out;
  }

  // one more u-level, on the degrees the source still supports
  TruncationPolicy bigger = C.policy;
  bigger.u_order = N + 1;
  const MixedComplex& src = *C.source;
  if (!src.exact_above) bigger.max_degree = std::min(hi, src.max_degree() - 2 * (N + 1) + 1);
  if (bigger.max_degree < lo + 1) return out;
  const CyclicComplex S = negative_cyclic(*C.source, bigger);
  const HomologyReport H2 = homology(S.complex, opts);
  for (int t = lo + 2; t <= std::min(hi, bigger.max_degree + 1); ++t) {
    if (!C.trusted.at(t) || !C.trusted.at(t - 2)) continue;
    const DegreeHomology& target = out.homology.at(t - 2);
    if (!target.torsion.empty()) continue;
    SparseMatrix U(S.complex.rank(t - 2), C.complex.rank(t), ring);
    for (std::size_t i = 0; i < C.complex.rank(t); ++i) {
      const int j = C.level.at(t)[i].first;
      S.place(t - 2, j + 1, C.element_sparse(t, i), i, U);
    }
    SparseMatrix I(S.complex.rank(t - 2), C.complex.rank(t - 2), ring);
    for (std::size_t i = 0; i < C.complex.rank(t - 2); ++i) {
      const int j = C.level.at(t - 2)[i].first;
      S.place(t - 2, j, C.element_sparse(t - 2, i), i, I);
    }
    const SparseMatrix Uh = induced_map(out.homology, t, H2, t - 2, U);
    const SparseMatrix Ih = induced_map(out.homology, t - 2, H2, t - 2, I);
    if (!is_isomorphism(Ih, target, H2.at(t - 2))) continue;
    SparseMatrix A(target.size(), out.homology.at(t).size(), ring);
    bool solved = true;
    for (std::size_t c = 0; c < A.cols() && solved; ++c) {
      Vector rhs(Uh.rows(), Poly(0));
      for (std::size_t r = 0; r < Uh.rows(); ++r) rhs[r] = Uh.get(r, c);
      auto sol = solve_factor(Ih, rhs);
      if (!sol) {
        solved = false;
        break;
      }
      for (std::size_t r = 0; r < sol->size(); ++r) A.set(r, c, (*sol)[r]);
    }
    if (solved) out.u_action[t] = std::move(A);
  }
  return out;
}

}  // namespace hochlab
