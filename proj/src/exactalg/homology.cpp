#include "hochlab/exactalg/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {

// Classes of one block in one degree, indices local to the block.
struct Classes {
  std::size_t free_rank = 0;
  std::vector<Poly> torsion;
  std::vector<Vector> gens;         // free first
  std::vector<Vector> proj_rows;    // same order as gens
};

Vector column(const SparseMatrix& m, std::size_t c) {
  Vector v(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m.get(r, c);
  return v;
}

Vector row_of(const SparseMatrix& m, std::size_t r) {
  Vector v(m.cols());
  for (const auto& [c, e] : m.row(r)) v[c] = e;
  return v;
}

Classes classes_of(const SmithResult& dk, const SparseMatrix& dk1, std::size_t n) {
  Classes out;
  const std::size_t r = dk.rank;
  const std::size_t z = n - r;
  if (z == 0) return out;
  std::vector<std::size_t> rows(z), all_n(n), all_next(dk1.cols());
  for (std::size_t i = 0; i < z; ++i) rows[i] = r + i;
  for (std::size_t i = 0; i < n; ++i) all_n[i] = i;
  for (std::size_t i = 0; i < dk1.cols(); ++i) all_next[i] = i;
  SparseMatrix vinv_tail = dk.Vinv.select(rows, all_n);  // z x n
  SparseMatrix M = vinv_tail * dk1;                       // z x n_{k+1}
  SmithResult s = smith_normal_form(M, SmithOptions{true, false});
  SparseMatrix P = s.U * vinv_tail;                       // z x n
  std::vector<std::size_t> cols(z);
  for (std::size_t i = 0; i < z; ++i) cols[i] = r + i;
  std::vector<std::size_t> rows_n(n);
  for (std::size_t i = 0; i < n; ++i) rows_n[i] = i;
  SparseMatrix K = dk.V.select(rows_n, cols) * s.Uinv;    // n x z
  for (std::size_t i = s.rank; i < z; ++i) {
    out.gens.push_back(column(K, i));
    out.proj_rows.push_back(row_of(P, i));
  }
  out.free_rank = z - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.diagonal[i].is_unit()) continue;
    out.torsion.push_back(s.diagonal[i]);
    out.gens.push_back(column(K, i));
    out.proj_rows.push_back(row_of(P, i));
  }
  return out;
}

bool is_chain(const std::vector<Poly>& t) {
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!t[i].divisible_by(t[i - 1])) return false;
  return true;
}

// Rewrites a direct sum of cyclic torsion modules as invariant factors.
void normalize_torsion(DegreeHomology& h, Ring ring) {
  if (is_chain(h.torsion)) return;
  const std::size_t f = h.free_rank, s = h.torsion.size();
  SparseMatrix D(s, s, ring);
  for (std::size_t i = 0; i < s; ++i) D.set(i, i, h.torsion[i]);
  SmithResult snf = smith_normal_form(D, SmithOptions{true, false});
  std::vector<Vector> gens(h.generators.begin(), h.generators.begin() + static_cast<long>(f));
  std::vector<std::size_t> keep;
  std::vector<Poly> torsion;
  for (std::size_t i = 0; i < s; ++i)
    if (!snf.diagonal[i].is_unit()) {
      keep.push_back(i);
      torsion.push_back(snf.diagonal[i]);
    }
  const std::size_t n = h.projection.cols();
  SparseMatrix proj(f + keep.size(), n, ring);
  for (std::size_t i = 0; i < f; ++i)
    for (const auto& [c, v] : h.projection.row(i)) proj.set(i, c, v);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    const std::size_t j = keep[a];
    Vector g(n);
    for (std::size_t i = 0; i < s; ++i) {
      const Poly c = snf.Uinv.get(i, j);
      if (c.is_zero()) continue;
      for (std::size_t t = 0; t < n; ++t)
        if (!h.generators[f + i][t].is_zero()) g[t] += c * h.generators[f + i][t];
    }
    gens.push_back(std::move(g));
    for (std::size_t i = 0; i < s; ++i) {
      const Poly c = snf.U.get(j, i);
      if (c.is_zero()) continue;
      for (const auto& [col, v] : h.projection.row(f + i)) proj.add(f + a, col, c * v);
    }
  }
  h.torsion = std::move(torsion);
  h.generators = std::move(gens);
  h.projection = std::move(proj);
}

// Block tags per degree, or empty when the complex is not block diagonal.
bool blocks_respected(const FreeComplex& C) {
  if (!C.has_blocks()) return false;
  for (int k = C.min_degree() + 1; k <= C.max_degree(); ++k) {
    const SparseMatrix* d = C.stored_differential(k);
    if (!d) continue;
    const auto& src = C.blocks(k);
    const auto& dst = C.blocks(k - 1);
    for (std::size_t i = 0; i < d->rows(); ++i)
      for (const auto& [j, v] : d->row(i))
        if (dst[i] != src[j]) return false;
  }
  return true;
}

std::vector<std::size_t> indices_in_block(const FreeComplex& C, int k, int block, bool blocked) {
  std::vector<std::size_t> out;
  const std::size_t n = C.rank(k);
  if (!blocked) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  const auto& tags = C.blocks(k);
  for (std::size_t i = 0; i < n; ++i)
    if (tags[i] == block) out.push_back(i);
  return out;
}

}  // namespace

bool HomologyReport::has(int k) const {
  return std::any_of(degrees.begin(), degrees.end(), [k](const DegreeHomology& h) { return h.degree == k; });
}

const DegreeHomology& HomologyReport::at(int k) const {
  for (const auto& h : degrees)
    if (h.degree == k) return h;
  throw PreconditionError("HomologyReport: no degree " + std::to_string(k));
}

Vector HomologyReport::coordinates(int k, const Vector& cycle) const {
  const DegreeHomology& h = at(k);
  if (h.projection.rows() != h.size())
    throw PreconditionError("HomologyReport::coordinates: report was computed without generators");
  Vector y = h.projection.apply(cycle);
  for (std::size_t i = 0; i < h.torsion.size(); ++i) {
    Poly& e = y[h.free_rank + i];
    e = e.divmod(h.torsion[i]).second;
  }
  return y;
}

HomologyReport homology(const FreeComplex& C, HomologyOptions opts) {
  C.validate();
  HomologyReport rep;
  rep.ring = C.ring();
  const bool blocked = blocks_respected(C);
  std::set<int> tags;
  if (blocked)
    for (int k = C.min_degree(); k <= C.max_degree(); ++k)
      for (int t : C.blocks(k)) tags.insert(t);
  if (!blocked) tags.insert(0);
  const bool rank_only = !opts.generators && C.ring() == Ring::Rational;

  for (int k = C.min_degree(); k <= C.max_degree(); ++k) {
    DegreeHomology h;
    h.degree = k;
    h.trusted = k - C.min_degree() >= opts.trust_margin && C.max_degree() - k >= opts.trust_margin;
    const std::size_t n = C.rank(k);
    const SparseMatrix dk = C.differential(k);
    const SparseMatrix dk1 = C.differential(k + 1);
    std::vector<std::pair<std::vector<std::size_t>, Classes>> parts;
    for (int tag : tags) {
      auto here = indices_in_block(C, k, tag, blocked);
      if (here.empty()) continue;
      auto below = indices_in_block(C, k - 1, tag, blocked);
      auto above = indices_in_block(C, k + 1, tag, blocked);
      SparseMatrix a = dk.select(below, here);
      SparseMatrix b = dk1.select(here, above);
      if (rank_only) {
        const std::size_t ra = a.is_zero() ? 0 : rank_over_field(a);
        const std::size_t rb = b.is_zero() ? 0 : rank_over_field(b);
        h.free_rank += here.size() - ra - rb;
        continue;
      }
      SmithResult sa = smith_normal_form(a, SmithOptions{false, true});
      parts.emplace_back(here, classes_of(sa, b, here.size()));
    }
    if (!rank_only) {
      std::size_t total = 0;
      for (const auto& [idx, cl] : parts) {
        h.free_rank += cl.free_rank;
        total += cl.gens.size();
      }
      h.projection = SparseMatrix(total, n, C.ring());
      std::size_t row = 0;
      auto embed = [&](const std::vector<std::size_t>& idx, const Classes& cl, std::size_t i) {
        Vector g(n);
        for (std::size_t t = 0; t < idx.size(); ++t) g[idx[t]] = cl.gens[i][t];
        h.generators.push_back(std::move(g));
        for (std::size_t t = 0; t < idx.size(); ++t) h.projection.set(row, idx[t], cl.proj_rows[i][t]);
        ++row;
      };
      for (const auto& [idx, cl] : parts)
        for (std::size_t i = 0; i < cl.free_rank; ++i) embed(idx, cl, i);
      for (const auto& [idx, cl] : parts)
        for (std::size_t i = 0; i < cl.torsion.size(); ++i) {
          h.torsion.push_back(cl.torsion[i]);
          embed(idx, cl, cl.free_rank + i);
        }
      normalize_torsion(h, C.ring());
    }
    rep.degrees.push_back(std::move(h));
  }
  return rep;
}

SparseMatrix induced_map(const HomologyReport& src, int k, const HomologyReport& dst, int k_dst,
                         const SparseMatrix& f) {
  const DegreeHomology& a = src.at(k);
  const DegreeHomology& b = dst.at(k_dst);
  if (a.generators.size() != a.size() || b.projection.rows() != b.size())
    throw PreconditionError("induced_map: reports must carry generators");
  SparseMatrix m(b.size(), a.size(), dst.ring);
  for (std::size_t j = 0; j < a.size(); ++j) {
    Vector y = dst.coordinates(k_dst, f.apply(a.generators[j]));
    for (std::size_t i = 0; i < y.size(); ++i) m.set(i, j, y[i]);
  }
  return m;
}

bool is_isomorphism(const SparseMatrix& map, const DegreeHomology& src, const DegreeHomology& dst) {
  if (src.free_rank != dst.free_rank || src.torsion != dst.torsion) return false;
  const std::size_t n = dst.size();
  if (n == 0) return true;
  // Surjective: [map | torsion relations] has all invariant factors equal to 1.
  SparseMatrix aug(n, map.cols() + dst.torsion.size(), map.ring());
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [c, v] : map.row(i)) aug.set(i, c, v);
  for (std::size_t t = 0; t < dst.torsion.size(); ++t)
    aug.set(dst.free_rank + t, map.cols() + t, dst.torsion[t]);
  SmithResult s = smith_normal_form(aug, SmithOptions{false, false});
  if (s.rank != n) return false;
  return std::all_of(s.diagonal.begin(), s.diagonal.end(), [](const Poly& p) { return p.is_unit(); });
}

}  // namespace hochlab
