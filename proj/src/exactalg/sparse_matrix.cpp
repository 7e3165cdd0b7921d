#include "hochlab/exactalg/sparse_matrix.hpp"

#include <sstream>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, Ring ring)
    : rows_(rows), cols_(cols), ring_(ring) {}

SparseMatrix SparseMatrix::identity(std::size_t n, Ring ring) {
  SparseMatrix m(n, n, ring);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace(i, Poly(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Poly>>& dense, Ring ring) {
  std::size_t cols = dense.empty() ? 0 : dense.front().size();
  SparseMatrix m(dense.size(), cols, ring);
  for (std::size_t r = 0; r < dense.size(); ++r) {
    if (dense[r].size() != cols) throw PreconditionError("from_dense: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dense[r][c]);
  }
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

void SparseMatrix::check_entry(const Poly& v) const {
  if (ring_ == Ring::Rational && !v.is_constant())
    throw PreconditionError("SparseMatrix: non-constant entry " + v.to_string() + " in a matrix over Q");
}

Poly SparseMatrix::get(std::size_t r, std::size_t c) const {
  const auto& row = rows_.at(r);
  auto it = row.find(c);
  return it == row.end() ? Poly{} : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Poly& v) {
  if (r >= rows_.size() || c >= cols_) throw PreconditionError("SparseMatrix::set: index out of range");
  check_entry(v);
  if (v.is_zero())
    rows_[r].erase(c);
  else
    rows_[r][c] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Poly& v) {
  if (v.is_zero()) return;
  if (r >= rows_.size() || c >= cols_) throw PreconditionError("SparseMatrix::add: index out of range");
  check_entry(v);
  auto& row = rows_[r];
  auto it = row.find(c);
  if (it == row.end()) {
    row.emplace(c, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) row.erase(it);
}

bool SparseMatrix::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_.size(), ring_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace(r, v);
  return t;
}

std::vector<std::vector<Poly>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Poly>> d(rows_.size(), std::vector<Poly>(cols_));
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) d[r][c] = v;
  return d;
}

SparseMatrix SparseMatrix::select(const std::vector<std::size_t>& row_idx,
                                  const std::vector<std::size_t>& col_idx) const {
  std::vector<long> col_pos(cols_, -1);
  for (std::size_t j = 0; j < col_idx.size(); ++j) col_pos.at(col_idx[j]) = static_cast<long>(j);
  SparseMatrix m(row_idx.size(), col_idx.size(), ring_);
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (const auto& [c, v] : rows_.at(row_idx[i]))
      if (col_pos[c] >= 0) m.rows_[i].emplace(static_cast<std::size_t>(col_pos[c]), v);
  return m;
}

Vector SparseMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw PreconditionError("SparseMatrix::apply: dimension mismatch");
  Vector out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, e] : rows_[r])
      if (!v[c].is_zero()) out[r] += e * v[c];
  return out;
}

SparseMatrix SparseMatrix::operator-() const {
  SparseMatrix m = *this;
  for (auto& r : m.rows_)
    for (auto& [c, v] : r) v = -v;
  return m;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows()) throw PreconditionError("SparseMatrix product: dimension mismatch");
  SparseMatrix m(a.rows(), b.cols_, a.ring_);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto& out = m.rows_[r];
    for (const auto& [k, av] : a.rows_[r])
      for (const auto& [c, bv] : b.rows_[k]) {
        auto it = out.find(c);
        if (it == out.end())
          out.emplace(c, av * bv);
        else
          it->second += av * bv;
      }
    for (auto it = out.begin(); it != out.end();) {
      if (it->second.is_zero())
        it = out.erase(it);
      else
        ++it;
    }
  }
  return m;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols_ != b.cols_) throw PreconditionError("SparseMatrix sum: shape mismatch");
  SparseMatrix m = a;
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (const auto& [c, v] : b.rows_[r]) m.add(r, c, v);
  return m;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return a + (-b); }

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::string SparseMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    os << "[";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << get(r, c);
    os << "]\n";
  }
  return os.str();
}

bool is_zero_vector(const Vector& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

}  // namespace hochlab
