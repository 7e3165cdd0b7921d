#pragma once
// Dense reference routines used to cross-check the library in tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hochlab/exactalg/free_complex.hpp"
#include "hochlab/exactalg/poly.hpp"

namespace hochlab::oracle {

using Dense = std::vector<std::vector<Poly>>;

// Extended Euclid: g = s*a + t*b with g monic.
inline void xgcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.is_zero()) {
    g = 0;
    s = 0;
    t = 0;
    return;
  }
  Rational inv = Rational(1) / r0.lead();
  g = r0;
  g *= inv;
  s = s0;
  s *= inv;
  t = t0;
  t *= inv;
}

// Diagonal of a Smith form by 2x2 unimodular gcd steps, first-nonzero pivots.
inline std::vector<Poly> smith_diagonal(Dense a) {
  const std::size_t m = a.size(), n = m ? a[0].size() : 0;
  std::vector<Poly> diag;
  std::size_t t = 0;
  for (std::size_t c = 0; c < n && t < m; ++c) {
    std::size_t p = m;
    for (std::size_t r = t; r < m; ++r)
      if (!a[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p == m) continue;
    std::swap(a[t], a[p]);
    for (std::size_t r = t + 1; r < m; ++r) {
      if (a[r][c].is_zero()) continue;
      if (a[r][c].divisible_by(a[t][c])) {
        Poly q = a[r][c].divmod(a[t][c]).first;
        for (std::size_t k = 0; k < n; ++k) a[r][k] -= q * a[t][k];
        continue;
      }
      Poly g, s, u;
      xgcd(a[t][c], a[r][c], g, s, u);
      Poly at = a[t][c].divmod(g).first, ar = a[r][c].divmod(g).first;
      for (std::size_t k = 0; k < n; ++k) {
        Poly top = s * a[t][k] + u * a[r][k];
        Poly bot = at * a[r][k] - ar * a[t][k];
        a[t][k] = top;
        a[r][k] = bot;
      }
    }
    ++t;
  }
  // Now upper echelon; Smith invariants of an echelon form are those of its
  // row space, recomputed by transposing and repeating until diagonal.
  bool diagonal = true;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!a[r][c].is_zero() && r != c) diagonal = false;
  if (!diagonal) {
    Dense tr(n, std::vector<Poly>(m));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) tr[c][r] = a[r][c];
    return smith_diagonal(tr);
  }
  for (std::size_t i = 0; i < std::min(m, n); ++i)
    if (!a[i][i].is_zero()) diag.push_back(a[i][i].monic());
  // Enforce the divisibility chain: (a, b) -> (gcd, lcm).
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Poly g = gcd(diag[i], diag[j]);
      Poly l = (diag[i] * diag[j]).divmod(g).first.monic();
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

struct DegreeAnswer {
  int degree;
  std::size_t free_rank;
  std::vector<Poly> torsion;
};

// Free rank = n_k - rank d_k - rank d_{k+1}; torsion = nonunit factors of d_{k+1}.
inline std::vector<DegreeAnswer> homology(const FreeComplex& C) {
  std::vector<DegreeAnswer> out;
  for (int k = C.min_degree(); k <= C.max_degree(); ++k) {
    auto dk = smith_diagonal(C.differential(k).to_dense());
    auto dk1 = smith_diagonal(C.differential(k + 1).to_dense());
    DegreeAnswer a{k, C.rank(k) - dk.size() - dk1.size(), {}};
    for (const auto& p : dk1)
      if (!p.is_unit()) a.torsion.push_back(p);
    out.push_back(a);
  }
  return out;
}

// Random complex with d^2 = 0: elementary pieces conjugated by unimodular maps.
inline FreeComplex random_complex(std::mt19937& rng, Ring ring, int min_deg, int max_deg, std::size_t max_rank) {
  std::uniform_int_distribution<int> small(-2, 2);
  std::uniform_int_distribution<int> coin(0, 3);
  auto rand_poly = [&](int max_degree) {
    std::vector<Rational> c;
    int deg = ring == Ring::Rational ? 0 : std::uniform_int_distribution<int>(0, max_degree)(rng);
    for (int i = 0; i <= deg; ++i) c.emplace_back(small(rng));
    return Poly(c);
  };
  FreeComplex C(ring, min_deg, max_deg);
  std::vector<std::size_t> rank;
  std::uniform_int_distribution<std::size_t> rk(0, max_rank);
  for (int k = min_deg; k <= max_deg; ++k) rank.push_back(rk(rng));
  std::vector<Dense> d(rank.size());
  // pair basis vectors across adjacent degrees with random factors
  std::vector<std::vector<bool>> used(rank.size());
  for (std::size_t i = 0; i < rank.size(); ++i) used[i].assign(rank[i], false);
  for (std::size_t i = 1; i < rank.size(); ++i) {
    d[i] = Dense(rank[i - 1], std::vector<Poly>(rank[i]));
    for (std::size_t c = 0; c < rank[i]; ++c) {
      if (used[i][c] || coin(rng) == 0) continue;
      for (std::size_t r = 0; r < rank[i - 1]; ++r)
        if (!used[i - 1][r]) {
          Poly f = rand_poly(2);
          if (f.is_zero()) f = 1;
          d[i][r][c] = f;
          used[i][c] = used[i - 1][r] = true;
          break;
        }
    }
  }
  // conjugate: d_i -> g_{i-1} d_i g_i^{-1}, g a product of elementary matrices
  std::vector<Dense> g(rank.size()), ginv(rank.size());
  for (std::size_t i = 0; i < rank.size(); ++i) {
    const std::size_t n = rank[i];
    g[i] = Dense(n, std::vector<Poly>(n));
    ginv[i] = Dense(n, std::vector<Poly>(n));
    for (std::size_t j = 0; j < n; ++j) g[i][j][j] = ginv[i][j][j] = 1;
    if (n < 2) continue;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
      std::size_t a = pick(rng), b = pick(rng);
      if (a == b) continue;
      Poly c = rand_poly(1);
      // g <- E g with E = I + c e_a e_b^T ; ginv <- ginv E^{-1}
      for (std::size_t k = 0; k < n; ++k) g[i][a][k] += c * g[i][b][k];
      for (std::size_t k = 0; k < n; ++k) ginv[i][k][b] -= c * ginv[i][k][a];
    }
  }
  auto mul = [](const Dense& x, const Dense& y, std::size_t rows, std::size_t inner, std::size_t cols) {
    Dense z(rows, std::vector<Poly>(cols));
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t k = 0; k < inner; ++k) {
        if (x[r][k].is_zero()) continue;
        for (std::size_t c = 0; c < cols; ++c)
          if (!y[k][c].is_zero()) z[r][c] += x[r][k] * y[k][c];
      }
    return z;
  };
  for (std::size_t i = 0; i < rank.size(); ++i) {
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < rank[i]; ++j) labels.push_back("b" + std::to_string(j));
    C.set_basis(min_deg + static_cast<int>(i), labels);
  }
  for (std::size_t i = 1; i < rank.size(); ++i) {
    Dense t = mul(g[i - 1], d[i], rank[i - 1], rank[i - 1], rank[i]);
    t = mul(t, ginv[i], rank[i - 1], rank[i], rank[i]);
    SparseMatrix m(rank[i - 1], rank[i], ring);
    for (std::size_t r = 0; r < rank[i - 1]; ++r)
      for (std::size_t c = 0; c < rank[i]; ++c) m.set(r, c, t[r][c]);
    C.set_differential(min_deg + static_cast<int>(i), m);
  }
  return C;
}

}  // namespace hochlab::oracle
