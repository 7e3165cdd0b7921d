#include "hochlab/hkr/explicit.hpp"

#include <functional>
#include <sstream>

#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {

// Rank <= 1 per degree: the basis element of degree k, if any.
struct Cell {
  std::string label;
  Chain tensor;
  int block = 0;
};

struct Formula {
  std::function<std::optional<Cell>(int)> cell;
  // Entries (target degree, coefficient) of b and B on the element of degree k.
  std::function<Poly(int)> b;  // coefficient of b_k into degree k-1
  std::function<Poly(int)> B;  // coefficient of B_k into degree k+1
  bool negative = true;
};

std::string idx2(int l, int i) { return "[" + std::to_string(l) + "," + std::to_string(i) + "]"; }

Formula k_formula(int n, bool dual) {
  // K: f(m) in degree -2m, e(m) in degree -2m-1, with (l, i) = (m / n, m % n)
  auto cb = [n](int m) { return (m % n != 0 || m == 0) ? Poly::x() : Poly::monomial(1, 2); };
  auto cB = [n](int m) -> Poly {
    const long l = m / n, i = m % n;
    if (i >= 1) return Poly(Rational(l * n + l + i));
    return Poly(Rational((l * n + l) * (l * n + l - 1)));
  };
  Formula F;
  F.negative = !dual;
  F.cell = [n, dual](int k) -> std::optional<Cell> {
    const int d = dual ? k : -k;  // 2m for f, 2m + 1 for e
    if (d < 0) return std::nullopt;
    const int m = d / 2;
    const bool f = d % 2 == 0;
    const int l = m / n, i = m % n;
    std::string name = std::string(f ? "f" : "e") + (dual ? "*" : "") + idx2(l, i);
    return Cell{name, Chain{Word{f ? 1 : 0, l, i}}, m};
  };
  if (!dual) {
    F.b = [cb](int k) { return (k <= 0 && k % 2 == 0) ? cb(-k / 2) : Poly(); };
    F.B = [cB](int k) { return (k < 0 && k % 2 == 0) ? cB(-k / 2) : Poly(); };
  } else {
    // transpose: e*(m) in 2m+1 -> f*(m) in 2m; e*(m-1) in 2m-1 -> f*(m) in 2m
    F.b = [cb](int k) { return (k > 0 && k % 2 != 0) ? cb((k - 1) / 2) : Poly(); };
    F.B = [cB](int k) { return (k > 0 && k % 2 != 0) ? cB((k + 1) / 2) : Poly(); };
  }
  return F;
}

Formula laurent_formula(int n) {
  Formula F;
  F.cell = [](int k) -> std::optional<Cell> {
    if (k > 0) return std::nullopt;
    if (k % 2 == 0) return Cell{"e[" + std::to_string(-k / 2) + "]", Chain{Word{0, -k / 2}}, -k / 2};
    const int j = (1 - k) / 2;
    return Cell{"f[" + std::to_string(j) + "]", Chain{Word{1, j}}, j};
  };
  F.b = [n](int k) { return (k < 0 && k % 2 != 0) ? Poly::monomial(-1, n) : Poly(); };
  F.B = [](int k) { return (k < 0 && k % 2 != 0) ? Poly(-1) : Poly(); };
  return F;
}

Formula formula(const std::string& name, int n) {
  if (n < 1) throw PreconditionError("explicit complexes need n >= 1");
  if (name == "K") return k_formula(n, false);
  if (name == "K_dual") return k_formula(n, true);
  if (name == "laurent_dual") return laurent_formula(n);
  throw PreconditionError("unknown explicit complex: " + name);
}

}  // namespace

MixedComplex explicit_mixed(const std::string& name, int n, int min_degree, int max_degree) {
  if (min_degree > max_degree) throw PreconditionError("empty window");
  const Formula F = formula(name, n);
  MixedComplex M;
  M.provenance = "explicit";
  M.exact_above = F.negative && max_degree >= 0;
  M.exact_below = !F.negative && min_degree <= 0;
  M.b = FreeComplex(Ring::Polynomial, min_degree, max_degree);
  for (int k = min_degree; k <= max_degree; ++k) {
    auto c = F.cell(k);
    if (!c) {
      M.b.set_basis(k, {}, {});
      continue;
    }
    M.b.set_basis(k, {c->label}, {c->block});
    M.tensors[k].push_back(c->tensor);
  }
  for (int k = min_degree; k <= max_degree; ++k) {
    const bool here = M.b.rank(k) > 0;
    if (k > min_degree) {
      SparseMatrix d(M.b.rank(k - 1), M.b.rank(k), Ring::Polynomial);
      if (here && M.b.rank(k - 1) > 0) d.set(0, 0, F.b(k));
      M.b.set_differential(k, std::move(d));
    }
    if (k < max_degree) {
      SparseMatrix Bk(M.b.rank(k + 1), M.b.rank(k), Ring::Polynomial);
      if (here && M.b.rank(k + 1) > 0) Bk.set(0, 0, F.B(k));
      M.B[k] = std::move(Bk);
    }
  }
  verify_mixed(M);
  return M;
}

namespace {

std::pair<int, int> mixed_window(const TruncationPolicy& T) {
  return {T.min_degree - 1, T.max_degree + 2 * T.u_order + 1};
}

}  // namespace

CyclicComplex instantiate_explicit(const std::string& name, int n, const TruncationPolicy& T) {
  T.check();
  const auto [lo, hi] = mixed_window(T);
  return negative_cyclic(explicit_mixed(name, n, lo, hi), T);
}

SparseMatrix cyclic_component(const CyclicComplex& src, const CyclicComplex& dst,
                              const std::map<int, SparseMatrix>& f, int t) {
  SparseMatrix out(dst.complex.rank(t), src.complex.rank(t), src.complex.ring());
  for (std::size_t i = 0; i < src.complex.rank(t); ++i) {
    std::vector<std::pair<int, Vector>> parts;
    for (const auto& [j, v] : src.element(t, i)) {
      const int m = t + 2 * j;
      auto it = f.find(m);
      if (it == f.end() || !dst.source->b.in_window(m)) continue;
      parts.emplace_back(j, it->second.apply(v));
    }
    const Vector col = dst.coordinates(t, parts);
    for (std::size_t r = 0; r < col.size(); ++r)
      if (!col[r].is_zero()) out.set(r, i, col[r]);
  }
  return out;
}

AlgebraElement phi_image(const DeRhamData& D, int n, const Chain& tensor) {
  const DgPresentation& F = D.forms;
  if (tensor.size() != 1 || tensor[0].size() != 3) throw PreconditionError("not a basis tensor of K");
  const int fam = tensor[0][0], l = tensor[0][1], i = tensor[0][2];
  auto power = [&](const AlgebraElement& a, int k) {
    AlgebraElement r = F.unit();
    for (int s = 0; s < k; ++s) r = F.multiply(r, a);
    return r;
  };
  const AlgebraElement t = F.gen("t"), xi = F.gen("xi"), dt = F.gen("dt"), dxi = F.gen("dxi");
  auto prod = [&](std::initializer_list<AlgebraElement> fs) {
    AlgebraElement r = F.unit();
    for (const auto& a : fs) r = F.multiply(r, a);
    return r;
  };
  if (fam == 0) return prod({power(t, i), dt, power(dxi, l)});
  if (l == 0) return power(t, i);
  if (i >= 1)
    return prod({power(t, i), power(dxi, l)}) +
           Poly(Rational(static_cast<long>(l) * (n + 1))) * prod({power(t, i - 1), xi, dt, power(dxi, l - 1)});
  AlgebraElement r = Poly::x() * power(dxi, l) + Poly(Rational(static_cast<long>(l) * (n + 1))) * prod({power(t, n), power(dxi, l - 1)});
  if (l >= 2)
    r += Poly(Rational(static_cast<long>(l) * (l - 1) * (n + 1) * (n + 1))) *
         prod({power(t, n - 1), xi, dt, power(dxi, l - 2)});
  return r;
}

bool PhiReport::ok() const {
  if (!mixed.quasi_isomorphism()) return false;
  for (const auto& [t, v] : cyclic_quasi_iso)
    if (!v) return false;
  return true;
}

std::string PhiReport::message() const {
  std::ostringstream os;
  if (!mixed.chain_map) return mixed.message;
  std::size_t bad = 0;
  for (const auto& [k, v] : mixed.quasi_iso) bad += v ? 0 : 1;
  for (const auto& [k, v] : cyclic_quasi_iso) bad += v ? 0 : 1;
  os << "chain map; " << mixed.quasi_iso.size() << " Hochschild and " << cyclic_quasi_iso.size()
     << " negative cyclic degrees compared, " << bad << " mismatches";
  return os.str();
}

PhiReport verify_phi(int n, const TruncationPolicy& T) {
  T.check();
  const auto [lo, hi] = mixed_window(T);
  const MixedComplex K = explicit_mixed("K", n, lo, hi);
  const DgPresentation A = standard::curved_semifree(n);
  const DeRhamData D = kaehler(A);
  TruncationPolicy W = T;
  W.min_degree = lo;
  W.max_degree = hi;
  W.weight_bound.reset();
  const MixedComplex R = de_rham_mixed(D, twist_curvature(D, A), W);

  PhiReport rep;
  const auto idx = tensor_index(R);
  for (int k = lo; k <= hi; ++k) {
    SparseMatrix m(R.b.rank(k), K.b.rank(k), Ring::Polynomial);
    auto it = K.tensors.find(k);
    if (it != K.tensors.end())
      for (std::size_t j = 0; j < it->second.size(); ++j) {
        const AlgebraElement img = phi_image(D, n, it->second[j]);
        for (const auto& [w, c] : img.terms()) {
          auto f = idx.find(Chain{w});
          if (f == idx.end() || f->second.first != k) throw InvariantError("phi leaves the window at " + std::to_string(k));
          m.add(f->second.second, j, c);
        }
      }
    rep.mixed.components[k] = std::move(m);
  }
  check_mixed_map(K, R, rep.mixed);
  if (!rep.mixed.chain_map) return rep;
  compare_homology(K, R, rep.mixed, T.trust_margin);
  // only the requested window counts for the Hochschild comparison
  for (auto it = rep.mixed.quasi_iso.begin(); it != rep.mixed.quasi_iso.end();)
    it = (it->first < T.min_degree || it->first > T.max_degree) ? rep.mixed.quasi_iso.erase(it) : std::next(it);

  const CyclicComplex CK = negative_cyclic(K, T), CR = negative_cyclic(R, T);
  const CyclicHomology HK = homology_with_u_action(CK, true), HR = homology_with_u_action(CR, true);
  for (int t = T.min_degree; t <= T.max_degree; ++t) {
    if (!CK.trusted.at(t) || !CR.trusted.at(t)) continue;
    const SparseMatrix f = cyclic_component(CK, CR, rep.mixed.components, t);
    rep.cyclic_quasi_iso[t] = is_isomorphism(induced_map(HK.homology, t, HR.homology, t, f), HK.homology.at(t), HR.homology.at(t));
  }
  return rep;
}

}  // namespace hochlab
