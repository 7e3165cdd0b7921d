#pragma once

#include <cstddef>
#include <vector>

#include "hochlab/exactalg/free_complex.hpp"
#include "hochlab/exactalg/smith.hpp"

namespace hochlab {

struct HomologyOptions {
  /// Degrees closer than this to either window edge are untrusted.
  int trust_margin = 1;
  /// When false over Q, only ranks are computed (sparse elimination).
  bool generators = true;
};

/// H_k as free part plus torsion, with chosen generating cycles.
struct DegreeHomology {
  int degree = 0;
  std::size_t free_rank = 0;
  std::vector<Poly> torsion;  // nonunit invariant factors, a divisibility chain
  bool trusted = true;
  /// Free classes first, then one cycle per torsion factor. Empty in rank-only mode.
  std::vector<Vector> generators;
  /// Maps a cycle to its class coordinates (before torsion reduction).
  SparseMatrix projection;

  std::size_t size() const { return free_rank + torsion.size(); }
  bool is_zero() const { return size() == 0; }
};

class HomologyReport {
 public:
  Ring ring = Ring::Rational;
  std::vector<DegreeHomology> degrees;  // ascending

  bool has(int k) const;
  const DegreeHomology& at(int k) const;
  /// Class coordinates of a cycle in degree k; torsion entries reduced.
  Vector coordinates(int k, const Vector& cycle) const;
};

HomologyReport homology(const FreeComplex& C, HomologyOptions opts = {});

/// Matrix of the map H_src -> H_dst induced by a chain-level map f.
SparseMatrix induced_map(const HomologyReport& src, int k, const HomologyReport& dst, int k_dst,
                         const SparseMatrix& f);

/// Whether `map` (as returned by induced_map) is an isomorphism of modules.
bool is_isomorphism(const SparseMatrix& map, const DegreeHomology& src, const DegreeHomology& dst);

}  // namespace hochlab
