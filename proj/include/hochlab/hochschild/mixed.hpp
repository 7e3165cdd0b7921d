#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hochlab/dgcore/algebra.hpp"
#include "hochlab/exactalg/free_complex.hpp"

namespace hochlab {

/// A tensor (a0 | a1 | ... | ak) of monomials.
using Chain = std::vector<Word>;

/**
 * A complex with b of degree -1 (the FreeComplex) and B of degree +1.
 * B_k : degree k -> k+1 is stored whenever both degrees lie in the window.
 */
struct MixedComplex {
  FreeComplex b;
  std::map<int, SparseMatrix> B;
  /// first-kind, second-kind, naive, de-Rham or explicit
  std::string provenance;
  /// Structured basis, parallel to the labels (empty for explicit complexes).
  std::map<int, std::vector<Chain>> tensors;
  /// Number of output components that fell outside the window or weight bound.
  std::size_t dropped = 0;
  /// The untruncated complex vanishes below min_degree / above max_degree.
  bool exact_below = false;
  bool exact_above = false;

  SparseMatrix B_at(int k) const;
  int min_degree() const { return b.min_degree(); }
  int max_degree() const { return b.max_degree(); }
};

/// Position of each tensor: chain -> (degree, index).
std::map<Chain, std::pair<int, std::size_t>> tensor_index(const MixedComplex& M);

/// b^2 = 0, B^2 = 0, bB + Bb = 0 on interior degrees; throws InvariantError.
void verify_mixed(const MixedComplex& M);

/// Degreewise linear dual: degree k becomes -k, b_k becomes (-1)^k b_k^T and B_k becomes (-1)^{k+1} B_k^T.
FreeComplex dualize(const FreeComplex& C);
MixedComplex dualize(const MixedComplex& M);

/// Basis bijection between two complexes: (degree, index) -> index in the same degree.
using BasisBijection = std::function<std::optional<std::size_t>(int, std::size_t)>;

struct ScalingReport {
  bool ok = true;
  std::string message;
  /// Diagonal factors s with S b = b' S and S B = B' S, per degree.
  std::map<int, std::vector<Rational>> scaling;
};

/// Searches for a diagonal rational scaling turning `a` into `b` under the bijection.
ScalingReport isomorphic_by_scaling(const MixedComplex& a, const MixedComplex& b, const BasisBijection& bij);

}  // namespace hochlab
