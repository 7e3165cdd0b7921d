#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hochlab/barcobar/coalgebra.hpp"

namespace hochlab {

/// Finite graded Q-module with an optional differential of degree -1.
struct GradedModule {
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<std::map<std::size_t, Rational>> differential;  // empty for d = 0

  std::size_t size() const { return labels.size(); }
};

/**
 * Tensor algebra on V, words of length <= max_length with degree in the window,
 * with d = (induced d_V) + (contraction of one degree-1 factor through v).
 */
struct DeformedTensorAlgebra {
  int max_length = 0;
  std::vector<std::vector<std::size_t>> words;  // all basis words
  std::map<int, std::vector<std::size_t>> by_degree;  // degree -> indices into words
  FreeComplex deformed;
  /// The plain tensor algebra: d_V only, weight = word length.
  WeightedComplex plain;

  /// Fil_k: words of length <= k, a subcomplex.
  FreeComplex filtration_piece(int k) const;
  /// Fil_k / Fil_{k-1} with the induced differential, tagged with weight k.
  FreeComplex graded_piece(int k) const;
};

/**
 * Throws PreconditionError unless v vanishes outside degree 1 and v d_V = 0
 * (v is a chain map V -> Q[1]).
 */
DeformedTensorAlgebra deformed_tensor_algebra(const GradedModule& V, const std::vector<Rational>& v, int max_length,
                                              int min_degree, int max_degree);

struct DeformedReport {
  bool ok = true;
  std::size_t graded_checked = 0;
  /// Homology dimensions of Fil_k per degree, k = 0..max_length.
  std::vector<std::map<int, std::size_t>> filtration_homology;
  std::vector<std::string> mismatches;
};

/// gr_k equals the weight-k part of the plain tensor algebra (matrices and homology),
/// and the last filtration stage equals the whole model.
DeformedReport check_associated_graded(const DeformedTensorAlgebra& T);

}  // namespace hochlab
