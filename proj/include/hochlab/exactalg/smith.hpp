#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hochlab/exactalg/sparse_matrix.hpp"

namespace hochlab {

/// Which transforms smith_normal_form should accumulate.
struct SmithOptions {
  bool left = true;   // U and U^-1
  bool right = true;  // V and V^-1
};

/**
 * U * M * V = D with D diagonal, diagonal entries monic and forming a
 * divisibility chain. Entries past `rank` are zero.
 */
struct SmithResult {
  std::vector<Poly> diagonal;  // the first `rank` diagonal entries of D
  std::size_t rank = 0;
  SparseMatrix U, Uinv, V, Vinv;

  /// Nonunit entries of `diagonal`, in order.
  std::vector<Poly> invariant_factors() const;
};

SmithResult smith_normal_form(const SparseMatrix& M, SmithOptions opts = {});

/// Rank over the fraction field, by sparse elimination. Ring Q only.
std::size_t rank_over_field(const SparseMatrix& M);

/// Some w with M w = v over the ring, or nothing.
std::optional<Vector> solve_factor(const SparseMatrix& M, const Vector& v);

/// Total-nonzero cap enforced on matrices entering Smith normal form.
std::size_t nonzero_limit();
void set_nonzero_limit(std::size_t limit);
/// Throws ResourceLimitError when `count` exceeds the cap.
void check_nonzero_limit(std::size_t count, const char* what);

}  // namespace hochlab
