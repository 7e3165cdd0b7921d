#include "hochlab/barcobar/deformed.hpp"

#include <algorithm>
#include <functional>

#include "hochlab/exactalg/errors.hpp"
#include "hochlab/exactalg/homology.hpp"

namespace hochlab {

namespace {

std::string word_label(const GradedModule& V, const std::vector<std::size_t>& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + V.labels[w[i]];
  return s;
}

// Subquotient spanned by the words accepted by `keep`: rows and columns of d outside it are dropped.
FreeComplex restrict(const DeformedTensorAlgebra& T, const std::function<bool(std::size_t)>& keep, bool tag) {
  const FreeComplex& D = T.deformed;
  FreeComplex C(Ring::Rational, D.min_degree(), D.max_degree());
  std::map<int, std::vector<std::size_t>> sel;
  for (int k = D.min_degree(); k <= D.max_degree(); ++k) {
    std::vector<std::string> labels;
    std::vector<int> tags;
    if (auto it = T.by_degree.find(k); it != T.by_degree.end())
      for (std::size_t pos = 0; pos < it->second.size(); ++pos)
        if (keep(it->second[pos])) {
          sel[k].push_back(pos);
          labels.push_back(D.labels(k)[pos]);
          tags.push_back(static_cast<int>(T.words[it->second[pos]].size()));
        }
    C.set_basis(k, labels, tag ? tags : std::vector<int>{});
  }
  for (int k = D.min_degree() + 1; k <= D.max_degree(); ++k) C.set_differential(k, D.differential(k).select(sel[k - 1], sel[k]));
  return C;
}

}  // namespace

DeformedTensorAlgebra deformed_tensor_algebra(const GradedModule& V, const std::vector<Rational>& v, int max_length,
                                              int min_degree, int max_degree) {
  const std::size_t r = V.size();
  if (V.degrees.size() != r || v.size() != r) throw PreconditionError("deformed tensor algebra: sizes of V and v differ");
  if (!V.differential.empty() && V.differential.size() != r) throw PreconditionError("deformed tensor algebra: d_V has the wrong size");
  if (max_length < 0 || min_degree > max_degree) throw PreconditionError("deformed tensor algebra: empty bounds");
  for (std::size_t i = 0; i < r; ++i) {
    if (v[i] != 0 && V.degrees[i] != 1) throw PreconditionError("v is nonzero on " + V.labels[i] + ", which is not in degree 1");
    if (V.differential.empty()) continue;
    Rational vd = 0;
    for (const auto& [j, c] : V.differential[i]) {
      if (j >= r || V.degrees[j] != V.degrees[i] - 1) throw PreconditionError("d_V is not of degree -1 on " + V.labels[i]);
      vd += c * v[j];
    }
    if (vd != 0) throw PreconditionError("v d_V != 0 on " + V.labels[i]);
  }

  DeformedTensorAlgebra T;
  T.max_length = max_length;
  std::vector<std::size_t> cur;
  std::function<void(int)> grow = [&](int deg) {
    if (deg >= min_degree && deg <= max_degree) T.words.push_back(cur);
    if (static_cast<int>(cur.size()) == max_length) return;
    for (std::size_t i = 0; i < r; ++i) {
      cur.push_back(i);
      grow(deg + V.degrees[i]);
      cur.pop_back();
    }
  };
  grow(0);
  auto degree = [&V](const std::vector<std::size_t>& w) {
    int d = 0;
    for (std::size_t i : w) d += V.degrees[i];
    return d;
  };
  std::stable_sort(T.words.begin(), T.words.end(), [&](const auto& a, const auto& b) {
    return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
  });
  std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> where;  // word -> (degree, position)
  for (std::size_t idx = 0; idx < T.words.size(); ++idx) {
    const int k = degree(T.words[idx]);
    where[T.words[idx]] = {k, T.by_degree[k].size()};
    T.by_degree[k].push_back(idx);
  }

  T.deformed = FreeComplex(Ring::Rational, min_degree, max_degree);
  FreeComplex plain(Ring::Rational, min_degree, max_degree);
  for (const auto& [k, idx] : T.by_degree) {
    std::vector<std::string> labels;
    std::vector<int> tags;
    for (std::size_t i : idx) {
      labels.push_back(word_label(V, T.words[i]));
      tags.push_back(static_cast<int>(T.words[i].size()));
    }
    T.deformed.set_basis(k, labels);
    plain.set_basis(k, labels, tags);
  }
  for (int k = min_degree + 1; k <= max_degree; ++k) {
    const std::size_t rows = T.deformed.rank(k - 1), cols = T.deformed.rank(k);
    SparseMatrix full(rows, cols, Ring::Rational), induced(rows, cols, Ring::Rational);
    for (std::size_t col = 0; col < cols; ++col) {
      const auto& w = T.words[T.by_degree.at(k)[col]];
      int before = 0;  // degree of the factors in front of position i
      for (std::size_t i = 0; i < w.size(); ++i) {
        const Rational sign = before % 2 == 0 ? 1 : -1;
        if (v[w[i]] != 0) {
          auto nw = w;
          nw.erase(nw.begin() + static_cast<long>(i));
          full.add(where.at(nw).second, col, Poly(sign * v[w[i]]));
        }
        if (!V.differential.empty())
          for (const auto& [j, c] : V.differential[w[i]]) {
            auto nw = w;
            nw[i] = j;
            full.add(where.at(nw).second, col, Poly(sign * c));
            induced.add(where.at(nw).second, col, Poly(sign * c));
          }
        before += V.degrees[w[i]];
      }
    }
    T.deformed.set_differential(k, std::move(full));
    plain.set_differential(k, std::move(induced));
  }
  T.deformed.validate();
  plain.validate();
  T.plain = WeightedComplex{std::move(plain)};
  T.plain.check();
  return T;
}

FreeComplex DeformedTensorAlgebra::filtration_piece(int k) const {
  return restrict(*this, [this, k](std::size_t i) { return static_cast<int>(words[i].size()) <= k; }, false);
}

FreeComplex DeformedTensorAlgebra::graded_piece(int k) const {
  // only the length-preserving part of d survives in Fil_k / Fil_{k-1}
  return restrict(*this, [this, k](std::size_t i) { return static_cast<int>(words[i].size()) == k; }, true);
}

DeformedReport check_associated_graded(const DeformedTensorAlgebra& T) {
  DeformedReport rep;
  auto fail = [&rep](const std::string& s) {
    rep.ok = false;
    rep.mismatches.push_back(s);
  };
  HomologyOptions opts;
  opts.generators = false;
  opts.trust_margin = 0;
  auto dims = [&opts](const FreeComplex& C) {
    std::map<int, std::size_t> out;
    for (const auto& D : homology(C, opts).degrees)
      if (D.size() > 0) out[D.degree] = D.size();
    return out;
  };
  for (int k = 0; k <= T.max_length; ++k) {
    const FreeComplex gr = T.graded_piece(k);
    const FreeComplex tk = T.plain.piece(k);
    ++rep.graded_checked;
    for (int deg = gr.min_degree(); deg <= gr.max_degree(); ++deg) {
      if (gr.labels(deg) != tk.labels(deg)) fail("gr_" + std::to_string(k) + " and T^" + std::to_string(k) + " differ in degree " + std::to_string(deg));
      else if (gr.differential(deg) != tk.differential(deg))
        fail("induced differential on gr_" + std::to_string(k) + " differs in degree " + std::to_string(deg));
    }
    if (dims(gr) != dims(tk)) fail("homology of gr_" + std::to_string(k) + " differs from T^" + std::to_string(k));
    rep.filtration_homology.push_back(dims(T.filtration_piece(k)));
  }
  const FreeComplex top = T.filtration_piece(T.max_length);
  if (rep.filtration_homology.back() != dims(T.deformed)) fail("last filtration stage and the full model have different homology");
  for (int deg = top.min_degree(); deg <= top.max_degree(); ++deg)
    if (top.labels(deg) != T.deformed.labels(deg) || top.differential(deg) != T.deformed.differential(deg))
      fail("last filtration stage differs from the full model in degree " + std::to_string(deg));
  return rep;
}

}  // namespace hochlab
