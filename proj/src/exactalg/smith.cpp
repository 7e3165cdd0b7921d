#include "hochlab/exactalg/smith.hpp"

#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {

using Dense = std::vector<std::vector<Poly>>;

std::size_t read_env_limit() {
  const char* env = std::getenv("HOCHLAB_NNZ_LIMIT");
  if (env == nullptr || *env == '\0') return 5000;
  try {
    long long v = std::stoll(env);
    if (v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw PreconditionError(std::string("HOCHLAB_NNZ_LIMIT is not a positive integer: ") + env);
}

std::size_t& limit_ref() {
  static std::size_t limit = read_env_limit();
  return limit;
}

Dense identity_dense(std::size_t n) {
  Dense d(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = Poly(1);
  return d;
}

SparseMatrix to_sparse(const Dense& d, std::size_t cols, Ring ring) {
  SparseMatrix m(d.size(), cols, ring);
  for (std::size_t r = 0; r < d.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (!d[r][c].is_zero()) m.set(r, c, d[r][c]);
  return m;
}

// Elementary operations applied to A together with the requested transforms.
class Reducer {
 public:
  Reducer(const SparseMatrix& M, SmithOptions opts)
      : m_(M.rows()), n_(M.cols()), opts_(opts), a_(M.to_dense()) {
    if (opts_.left) {
      u_ = identity_dense(m_);
      uinv_ = identity_dense(m_);
    }
    if (opts_.right) {
      v_ = identity_dense(n_);
      vinv_ = identity_dense(n_);
    }
  }

  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Poly& c) {
    for (std::size_t k = 0; k < n_; ++k)
      if (!a_[j][k].is_zero()) a_[i][k] += c * a_[j][k];
    if (opts_.left) {
      for (std::size_t k = 0; k < m_; ++k)
        if (!u_[j][k].is_zero()) u_[i][k] += c * u_[j][k];
      for (std::size_t k = 0; k < m_; ++k)
        if (!uinv_[k][i].is_zero()) uinv_[k][j] -= c * uinv_[k][i];
    }
  }

  // col_j += c * col_i
  void add_col(std::size_t j, std::size_t i, const Poly& c) {
    for (std::size_t k = 0; k < m_; ++k)
      if (!a_[k][i].is_zero()) a_[k][j] += c * a_[k][i];
    if (opts_.right) {
      for (std::size_t k = 0; k < n_; ++k)
        if (!v_[k][i].is_zero()) v_[k][j] += c * v_[k][i];
      for (std::size_t k = 0; k < n_; ++k)
        if (!vinv_[j][k].is_zero()) vinv_[i][k] -= c * vinv_[j][k];
    }
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (opts_.left) {
      std::swap(u_[i], u_[j]);
      for (auto& row : uinv_) std::swap(row[i], row[j]);
    }
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (opts_.right) {
      for (auto& row : v_) std::swap(row[i], row[j]);
      std::swap(vinv_[i], vinv_[j]);
    }
  }

  // row_i *= s for a unit s
  void scale_row(std::size_t i, const Rational& s) {
    for (auto& e : a_[i]) e *= s;
    if (opts_.left) {
      for (auto& e : u_[i]) e *= s;
      Rational inv = Rational(1) / s;
      for (auto& row : uinv_) row[i] *= inv;
    }
  }

  // Minimal-degree nonzero entry in the trailing block, ties by (row, col).
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    int best = std::numeric_limits<int>::max();
    for (std::size_t i = t; i < m_; ++i)
      for (std::size_t j = t; j < n_; ++j) {
        const Poly& e = a_[i][j];
        if (!e.is_zero() && e.degree() < best) {
          best = e.degree();
          pr = i;
          pc = j;
          if (best == 0) return true;
        }
      }
    return best != std::numeric_limits<int>::max();
  }

  // Clears row t and column t outside the pivot; false if a remainder appeared.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    const Poly piv = a_[t][t];
    for (std::size_t i = t + 1; i < m_; ++i) {
      if (a_[i][t].is_zero()) continue;
      auto [q, r] = a_[i][t].divmod(piv);
      add_row(i, t, -q);
      if (!r.is_zero()) clean = false;
    }
    for (std::size_t j = t + 1; j < n_; ++j) {
      if (a_[t][j].is_zero()) continue;
      auto [q, r] = a_[t][j].divmod(piv);
      add_col(j, t, -q);
      if (!r.is_zero()) clean = false;
    }
    return clean;
  }

  // Index of a trailing row holding an entry not divisible by the pivot.
  std::optional<std::size_t> find_nondivisible(std::size_t t) const {
    const Poly& piv = a_[t][t];
    if (piv.is_unit()) return std::nullopt;
    for (std::size_t i = t + 1; i < m_; ++i)
      for (std::size_t j = t + 1; j < n_; ++j)
        if (!a_[i][j].is_zero() && !a_[i][j].divisible_by(piv)) return i;
    return std::nullopt;
  }

  SmithResult run() {
    SmithResult res;
    std::size_t t = 0;
    const std::size_t lim = std::min(m_, n_);
    for (; t < lim; ++t) {
      std::size_t pr = 0, pc = 0;
      if (!find_pivot(t, pr, pc)) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      while (true) {
        if (!clear_cross(t)) {
          find_pivot(t, pr, pc);
          swap_rows(t, pr);
          swap_cols(t, pc);
          continue;
        }
        auto bad = find_nondivisible(t);
        if (!bad) break;
        add_row(t, *bad, Poly(1));
      }
      const Rational lead = a_[t][t].lead();
      if (lead != 1) scale_row(t, Rational(1) / lead);
      res.diagonal.push_back(a_[t][t]);
    }
    res.rank = res.diagonal.size();
    if (opts_.left) {
      res.U = to_sparse(u_, m_, ring_of_result_);
      res.Uinv = to_sparse(uinv_, m_, ring_of_result_);
    }
    if (opts_.right) {
      res.V = to_sparse(v_, n_, ring_of_result_);
      res.Vinv = to_sparse(vinv_, n_, ring_of_result_);
    }
    return res;
  }

  Ring ring_of_result_ = Ring::Polynomial;

 private:
  std::size_t m_, n_;
  SmithOptions opts_;
  Dense a_, u_, uinv_, v_, vinv_;
};

}  // namespace

std::size_t nonzero_limit() { return limit_ref(); }

void set_nonzero_limit(std::size_t limit) {
  if (limit == 0) throw PreconditionError("nonzero limit must be positive");
  limit_ref() = limit;
}

void check_nonzero_limit(std::size_t count, const char* what) {
  if (count > nonzero_limit())
    throw ResourceLimitError(std::string(what) + ": " + std::to_string(count) +
                             " nonzeros exceeds the limit of " + std::to_string(nonzero_limit()) +
                             " (raise with --limit-nonzeros or HOCHLAB_NNZ_LIMIT)");
}

std::vector<Poly> SmithResult::invariant_factors() const {
  std::vector<Poly> out;
  for (const auto& d : diagonal)
    if (!d.is_unit()) out.push_back(d);
  return out;
}

SmithResult smith_normal_form(const SparseMatrix& M, SmithOptions opts) {
  check_nonzero_limit(M.nonzeros(), "smith_normal_form");
  Reducer red(M, opts);
  red.ring_of_result_ = M.ring();
  return red.run();
}

std::size_t rank_over_field(const SparseMatrix& M) {
  if (M.ring() != Ring::Rational) throw PreconditionError("rank_over_field: matrix must be over Q");
  // Rows as sparse maps; eliminate with the sparsest available pivot row per column.
  std::vector<std::map<std::size_t, Rational>> rows(M.rows());
  std::map<std::size_t, std::vector<std::size_t>> by_lead;  // leading column -> rows
  for (std::size_t r = 0; r < M.rows(); ++r) {
    for (const auto& [c, v] : M.row(r)) rows[r].emplace(c, v.coeff(0));
    if (!rows[r].empty()) by_lead[rows[r].begin()->first].push_back(r);
  }
  std::size_t rank = 0;
  while (!by_lead.empty()) {
    auto node = by_lead.extract(by_lead.begin());
    auto& group = node.mapped();
    std::size_t best = 0;
    for (std::size_t k = 1; k < group.size(); ++k)
      if (rows[group[k]].size() < rows[group[best]].size()) best = k;
    const std::size_t p = group[best];
    ++rank;
    const auto& prow = rows[p];
    const Rational inv = Rational(1) / prow.begin()->second;
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (k == best) continue;
      auto& row = rows[group[k]];
      const Rational f = row.begin()->second * inv;
      for (const auto& [c, v] : prow) {
        auto it = row.find(c);
        if (it == row.end()) {
          row.emplace(c, -f * v);
        } else {
          it->second -= f * v;
          if (it->second == 0) row.erase(it);
        }
      }
      if (!row.empty()) by_lead[row.begin()->first].push_back(group[k]);
    }
  }
  return rank;
}

std::optional<Vector> solve_factor(const SparseMatrix& M, const Vector& v) {
  if (v.size() != M.rows()) throw PreconditionError("solve_factor: dimension mismatch");
  SmithResult s = smith_normal_form(M);
  Vector y = s.U.apply(v);
  Vector z(M.cols());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < s.rank) {
      auto [q, r] = y[i].divmod(s.diagonal[i]);
      if (!r.is_zero()) return std::nullopt;
      z[i] = q;
    } else if (!y[i].is_zero()) {
      return std::nullopt;
    }
  }
  return s.V.apply(z);
}

}  // namespace hochlab
