#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hochlab/exactalg/sparse_matrix.hpp"

namespace hochlab {

/**
 * Bounded complex of finite-rank free modules over Q or Q[x], homologically
 * graded on the window [min_degree, max_degree]. d_k maps degree k to k-1.
 *
 * Basis elements may carry an integer block tag (a weight). When every degree
 * is tagged and the differentials never mix tags, homology is computed
 * blockwise.
 */
class FreeComplex {
 public:
  FreeComplex() = default;
  FreeComplex(Ring ring, int min_degree, int max_degree);

  Ring ring() const { return ring_; }
  int min_degree() const { return min_; }
  int max_degree() const { return max_; }
  bool in_window(int k) const { return k >= min_ && k <= max_; }

  void set_basis(int k, std::vector<std::string> labels, std::vector<int> blocks = {});
  std::size_t rank(int k) const;
  const std::vector<std::string>& labels(int k) const;
  const std::vector<int>& blocks(int k) const;
  bool has_blocks() const;
  std::optional<std::size_t> index_of(int k, const std::string& label) const;

  /// d_k of shape rank(k-1) x rank(k); k ranges over (min_degree, max_degree].
  void set_differential(int k, SparseMatrix d);
  /// d_k for any k; zero maps at and beyond the window edges.
  SparseMatrix differential(int k) const;
  const SparseMatrix* stored_differential(int k) const;

  std::size_t total_rank() const;
  std::size_t nonzeros() const;

  /// Shape checks and d_{k-1} d_k = 0; throws InvariantError naming the degree.
  void validate() const;

  FreeComplex direct_sum(const FreeComplex& other) const;

 private:
  struct Degree {
    std::vector<std::string> labels;
    std::vector<int> blocks;
    std::unordered_map<std::string, std::size_t> index;
  };
  const Degree* find(int k) const;

  Ring ring_ = Ring::Rational;
  int min_ = 0, max_ = -1;
  std::map<int, Degree> degrees_;
  std::map<int, SparseMatrix> d_;
};

}  // namespace hochlab
