#include "hochlab/hochschild/mixed.hpp"

#include <deque>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

SparseMatrix MixedComplex::B_at(int k) const {
  auto it = B.find(k);
  if (it != B.end()) return it->second;
  return SparseMatrix(b.rank(k + 1), b.rank(k), b.ring());
}

std::map<Chain, std::pair<int, std::size_t>> tensor_index(const MixedComplex& M) {
  std::map<Chain, std::pair<int, std::size_t>> idx;
  for (const auto& [k, list] : M.tensors)
    for (std::size_t i = 0; i < list.size(); ++i) idx.emplace(list[i], std::make_pair(k, i));
  return idx;
}

void verify_mixed(const MixedComplex& M) {
  M.b.validate();
  for (const auto& [k, m] : M.B)
    if (m.rows() != M.b.rank(k + 1) || m.cols() != M.b.rank(k))
      throw InvariantError(M.provenance + ": B has the wrong shape in degree " + std::to_string(k));
  for (int k = M.min_degree(); k <= M.max_degree(); ++k) {
    auto B0 = M.B.find(k), B1 = M.B.find(k + 1);
    if (B0 != M.B.end() && B1 != M.B.end() && !(B1->second * B0->second).is_zero())
      throw InvariantError(M.provenance + ": B^2 != 0 from degree " + std::to_string(k));
    // (bB + Bb) on degree k, both terms defined
    const SparseMatrix* bk1 = M.b.stored_differential(k + 1);
    const SparseMatrix* bk = M.b.stored_differential(k);
    auto Bkm1 = M.B.find(k - 1);
    if (bk1 && bk && B0 != M.B.end() && Bkm1 != M.B.end()) {
      if (!((*bk1) * B0->second + Bkm1->second * (*bk)).is_zero())
        throw InvariantError(M.provenance + ": bB + Bb != 0 in degree " + std::to_string(k));
    }
  }
}

FreeComplex dualize(const FreeComplex& C) {
  FreeComplex D(C.ring(), -C.max_degree(), -C.min_degree());
  for (int k = C.min_degree(); k <= C.max_degree(); ++k) {
    std::vector<std::string> labels;
    for (const auto& l : C.labels(k)) labels.push_back(l + "^");
    D.set_basis(-k, std::move(labels), C.blocks(k));
  }
  for (int k = C.min_degree() + 1; k <= C.max_degree(); ++k) {
    // d_k : C_k -> C_{k-1} dualizes to C^_{-(k-1)} -> C^_{-k}
    SparseMatrix t = C.differential(k).transpose();
    D.set_differential(-k + 1, k % 2 == 0 ? t : -t);
  }
  return D;
}

MixedComplex dualize(const MixedComplex& M) {
  MixedComplex D;
  D.b = dualize(M.b);
  D.provenance = "dual(" + M.provenance + ")";
  D.exact_below = M.exact_above;
  D.exact_above = M.exact_below;
  for (const auto& [k, list] : M.tensors) D.tensors[-k] = list;
  for (const auto& [k, m] : M.B) {
    // B_k : C_k -> C_{k+1} dualizes to C^_{-(k+1)} -> C^_{-k}
    // opposite parity to b so that b B + B b = 0 survives
    SparseMatrix t = m.transpose();
    D.B[-k - 1] = k % 2 == 0 ? -t : t;
  }
  return D;
}

namespace {

struct Node {
  int degree;
  std::size_t index;
  bool operator<(const Node& o) const { return degree != o.degree ? degree < o.degree : index < o.index; }
};

std::string node_name(const MixedComplex& M, Node n) {
  return M.b.labels(n.degree).at(n.index) + " (degree " + std::to_string(n.degree) + ")";
}

// Constant ratio q with num = q * den, if any.
std::optional<Rational> constant_ratio(const Poly& num, const Poly& den) {
  auto [q, r] = num.divmod(den);
  if (!r.is_zero() || !q.is_constant() || q.is_zero()) return std::nullopt;
  return q.coeff(0);
}

}  // namespace

ScalingReport isomorphic_by_scaling(const MixedComplex& a, const MixedComplex& b, const BasisBijection& bij) {
  ScalingReport rep;
  auto fail = [&rep](std::string msg) {
    rep.ok = false;
    rep.message = std::move(msg);
    rep.scaling.clear();
    return rep;
  };
  if (a.min_degree() != b.min_degree() || a.max_degree() != b.max_degree())
    return fail("windows differ");
  std::map<int, std::vector<std::size_t>> fwd;
  for (int k = a.min_degree(); k <= a.max_degree(); ++k) {
    if (a.b.rank(k) != b.b.rank(k))
      return fail("ranks differ in degree " + std::to_string(k) + ": " + std::to_string(a.b.rank(k)) + " vs " +
                  std::to_string(b.b.rank(k)));
    std::vector<std::size_t> map(a.b.rank(k));
    std::vector<bool> hit(b.b.rank(k), false);
    for (std::size_t i = 0; i < map.size(); ++i) {
      auto j = bij(k, i);
      if (!j || *j >= hit.size() || hit[*j]) return fail("basis correspondence is not a bijection at " + node_name(a, {k, i}));
      hit[*j] = true;
      map[i] = *j;
    }
    fwd[k] = std::move(map);
  }
  // adj[n] holds (m, f) with s[m] = s[n] * f
  std::map<Node, std::vector<std::pair<Node, Rational>>> adj;
  auto compare = [&](const SparseMatrix& ma, const SparseMatrix& mb, int src_deg, int dst_deg,
                     const char* what) -> std::optional<std::string> {
    const auto& fs = fwd.at(src_deg);
    const auto& fd = fwd.at(dst_deg);
    std::size_t count_a = 0;
    for (std::size_t i = 0; i < ma.rows(); ++i)
      for (const auto& [j, v] : ma.row(i)) {
        ++count_a;
        Poly w = mb.get(fd[i], fs[j]);
        auto r = constant_ratio(w, v);
        if (!r)
          return std::string(what) + " entry from " + node_name(a, {src_deg, j}) + " to " + node_name(a, {dst_deg, i}) +
                 " is " + v.to_string() + " but its image is " + w.to_string();
        Node s{src_deg, j}, t{dst_deg, i};
        adj[t].push_back({s, Rational(1) / *r});
        adj[s].push_back({t, *r});
      }
    if (count_a != mb.nonzeros())
      return std::string(what) + " has extra entries in the target between degrees " + std::to_string(src_deg) +
             " and " + std::to_string(dst_deg);
    return std::nullopt;
  };
  for (int k = a.min_degree() + 1; k <= a.max_degree(); ++k)
    if (auto err = compare(a.b.differential(k), b.b.differential(k), k, k - 1, "b")) return fail(*err);
  for (int k = a.min_degree(); k < a.max_degree(); ++k)
    if (auto err = compare(a.B_at(k), b.B_at(k), k, k + 1, "B")) return fail(*err);
  // S a = b S entrywise: s[target] = s[source] * (b entry / a entry)
  std::map<Node, Rational> s;
  for (int k = a.min_degree(); k <= a.max_degree(); ++k)
    for (std::size_t i = 0; i < a.b.rank(k); ++i) {
      Node root{k, i};
      if (s.count(root)) continue;
      s[root] = 1;
      std::deque<Node> queue{root};
      while (!queue.empty()) {
        Node n = queue.front();
        queue.pop_front();
        for (const auto& [m, ratio] : adj[n]) {
          Rational want = s[n] * ratio;
          auto it = s.find(m);
          if (it == s.end()) {
            s[m] = want;
            queue.push_back(m);
          } else if (it->second != want) {
            return fail("no consistent scaling at " + node_name(a, m));
          }
        }
      }
    }
  for (const auto& [n, v] : s) {
    auto& vec = rep.scaling[n.degree];
    if (vec.size() < a.b.rank(n.degree)) vec.resize(a.b.rank(n.degree));
    vec[n.index] = v;
  }
  return rep;
}

}  // namespace hochlab
