#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "hochlab/exactalg/homology.hpp"
#include "hochlab/hochschild/chains.hpp"
#include "hochlab/hochschild/mixed.hpp"

namespace hochlab {

struct CyclicHomology;

/**
 * (C[[u]], b + uB) cut down to u-levels 0..N-1, |u| = -2. Level j of degree t
 * is M_{t+2j}. In Subcomplex style the top level is ker B, so the result is a
 * subcomplex of the untruncated one; in Quotient style it is C[[u]]/u^N.
 */
struct CyclicComplex {
  FreeComplex complex;
  std::shared_ptr<const MixedComplex> source;
  TruncationPolicy policy;
  /// Per degree, per basis element: (u-level j, index). The index is a basis
  /// index of M_{t+2j}, or a kernel-basis column at a ker-B top level.
  std::map<int, std::vector<std::pair<int, std::size_t>>> level;
  /// Boundary and u-truncation trust per degree.
  std::map<int, bool> trusted;

  /// Coordinates in degree t of sum_j u^j v_j, given (j, v_j) with v_j in M_{t+2j}.
  /// Components beyond the kept levels are dropped; throws InvariantError if a
  /// top-level component is not in ker B.
  Vector coordinates(int t, const std::vector<std::pair<int, Vector>>& parts) const;
  /// Basis element i of degree t as level vectors.
  std::vector<std::pair<int, Vector>> element(int t, std::size_t i) const;
  /// Whether level j of degree t is restricted to ker B.
  bool restricted(int t, int j) const;

 private:
  friend CyclicComplex negative_cyclic(const MixedComplex& M, const TruncationPolicy& T);
  friend CyclicHomology homology_with_u_action(const CyclicComplex& C, bool generators);
  using SparseVec = std::map<std::size_t, Poly>;
  struct TopKernel {
    SparseMatrix basis;   // rank(m) x dim, columns span ker B_m
    SparseMatrix coords;  // dim x rank(m), recovers kernel coordinates
    std::vector<int> blocks;
  };
  SparseVec element_sparse(int t, std::size_t i) const;
  /// Adds u^j w (w in M_{t+2j}) into column `col` of `out`, rows indexed in degree t.
  void place(int t, int j, const SparseVec& w, std::size_t col, SparseMatrix& out) const;

  std::map<int, TopKernel> top_;
  std::map<int, std::map<int, std::size_t>> offset_;  // degree -> level -> first index
};

CyclicComplex negative_cyclic(const MixedComplex& M, const TruncationPolicy& T);

struct CyclicHomology {
  HomologyReport homology;
  /// u : H_t -> H_{t-2} in class coordinates, for t and t-2 trusted.
  std::map<int, SparseMatrix> u_action;
};

/// Homology with trust taken from the complex and the u-action matrices (skipped when generators = false).
CyclicHomology homology_with_u_action(const CyclicComplex& C, bool generators = true);

}  // namespace hochlab
