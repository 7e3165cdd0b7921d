#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hochlab/exactalg/poly.hpp"

namespace hochlab {

using Vector = std::vector<Poly>;

/**
 * Sparse matrix over Q or Q[x]. Absent entries are zero; stored entries are
 * never zero. Over Q every entry is a constant polynomial.
 */
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, Ring ring = Ring::Polynomial);

  static SparseMatrix identity(std::size_t n, Ring ring = Ring::Polynomial);
  static SparseMatrix from_dense(const std::vector<std::vector<Poly>>& dense, Ring ring);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  Ring ring() const { return ring_; }
  std::size_t nonzeros() const;

  Poly get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Poly& v);
  void add(std::size_t r, std::size_t c, const Poly& v);
  const std::map<std::size_t, Poly>& row(std::size_t r) const { return rows_.at(r); }

  bool is_zero() const;
  SparseMatrix transpose() const;
  std::vector<std::vector<Poly>> to_dense() const;
  /// Drops columns/rows whose index is not listed, in the listed order.
  SparseMatrix select(const std::vector<std::size_t>& row_idx,
                      const std::vector<std::size_t>& col_idx) const;

  Vector apply(const Vector& v) const;

  SparseMatrix operator-() const;
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator!=(const SparseMatrix& a, const SparseMatrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void check_entry(const Poly& v) const;

  std::vector<std::map<std::size_t, Poly>> rows_;
  std::size_t cols_ = 0;
  Ring ring_ = Ring::Polynomial;
};

bool is_zero_vector(const Vector& v);

}  // namespace hochlab
