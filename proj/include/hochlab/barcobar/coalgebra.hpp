#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hochlab/dgcore/algebra.hpp"
#include "hochlab/exactalg/free_complex.hpp"

namespace hochlab {

/// A complex over Q whose basis elements all carry a weight (the block tag) preserved by d.
struct WeightedComplex {
  FreeComplex complex;

  /// Throws InvariantError when a tag is missing or d mixes weights.
  void check() const;
  std::set<int> weights() const;
  /// The summand of one weight, on the same degree window.
  FreeComplex piece(int weight) const;
  /// Dimensions of the nonzero homology groups, keyed by (weight, degree).
  std::map<std::pair<int, int>, std::size_t> homology_dimensions() const;
};

/**
 * Graded coalgebra over Q on a finite basis, with optional coderivation d of
 * degree -1. Tensors are written (i, j) for e_i (x) e_j.
 */
struct CoalgebraData {
  struct Element {
    std::string label;
    int degree = 0;
    int weight = 0;
  };
  using Tensor = std::map<std::pair<std::size_t, std::size_t>, Rational>;

  std::vector<Element> basis;
  std::vector<Rational> counit;
  /// Index of the image of 1; the counit must then be its coordinate function.
  std::optional<std::size_t> coaugmentation;
  std::vector<Tensor> coproduct;
  /// d(e_i); empty for d = 0.
  std::vector<std::map<std::size_t, Rational>> differential;

  std::size_t size() const { return basis.size(); }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /**
   * Coassociativity, both counit laws, the coaugmentation, weights preserved by
   * Delta and d, d^2 = 0 and the coderivation rule. Throws InvariantError naming a basis element.
   */
  void check() const;
  /// Delta(c) - c (x) 1 - 1 (x) c; needs a coaugmentation.
  Tensor reduced_coproduct(std::size_t i) const;
  /// Whether iterated reduced coproducts vanish, checked elementwise.
  bool conilpotent() const;
  WeightedComplex complex() const;
};

CoalgebraData unit_coalgebra();
/// (Q[s]/s^n)^* with sigma_k = (s^k)^* in weight k and degree k * degree.
CoalgebraData truncated_dual(int n, int degree = 0);

struct BarConstruction {
  CoalgebraData coalgebra;  // deconcatenation, with the bar differential
  /// The bar words [a_1|...|a_m] behind each basis element.
  std::vector<std::vector<Word>> words;
  std::map<std::vector<Word>, std::size_t> index;
};

/**
 * Tensor coalgebra on the reduced part of A shifted up by one, up to total
 * weight max_weight. A must be a dg algebra over Q whose generators have
 * positive weight preserved by d, with no curvature and d landing in the
 * augmentation ideal. The result is checked (d^2 = 0, coderivation).
 */
BarConstruction bar(const DgPresentation& A, int max_weight = 6);

/**
 * Free associative algebra on the reduced cogenerators shifted down by one,
 * d(s^-1 c) = -s^-1 dc + sum (-1)^|c'| s^-1 c' s^-1 c''. Generator i is named
 * after the label of the i-th reduced basis element.
 */
DgPresentation cobar(const CoalgebraData& C);

struct RoundtripReport {
  bool ok = true;
  /// Homology dimensions per (weight, degree) on both sides.
  std::map<std::pair<int, int>, std::size_t> coalgebra_dims, bar_cobar_dims;
  /// c -> sum of [s^-1 c_1|...|s^-1 c_k] over iterated reduced coproducts.
  bool unit_chain_map = false;
  bool unit_coalgebra_map = false;
  bool unit_quasi_iso = false;
  std::vector<std::string> mismatches;
};

/// Compares C with Bar(Cobar(C)) in weights <= max_weight.
RoundtripReport bar_cobar_roundtrip(const CoalgebraData& C, int max_weight = 6);

struct KoszulDualReport {
  /// Dimensions of the homology of the dual bar construction, keyed by (weight, degree); weights are <= 0.
  std::map<std::pair<int, int>, std::size_t> dimensions;
  std::size_t total_dimension = 0;
  /// Smallest k with g^k = 0 for the weight -1 class g, when that class is unique and k <= max_weight.
  std::optional<int> nilpotency;
  bool associative = true;
  /// Structure constants on the chosen homology basis: (i, j) -> sum c_k e_k.
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Rational>> products;
  /// Homology basis as (weight, degree, index within that piece).
  std::vector<std::tuple<int, int, std::size_t>> classes;
  std::string to_string() const;
};

/// Homology of the weightwise dual of Bar(A) with the convolution product.
KoszulDualReport koszul_dual_endomorphisms(const DgPresentation& A, int max_weight = 6);

}  // namespace hochlab
