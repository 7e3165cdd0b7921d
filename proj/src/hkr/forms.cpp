#include "hochlab/hkr/forms.hpp"

#include <functional>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

int DeRhamData::form_degree(const Word& w) const {
  int k = 0;
  for (int g : w)
    if (g >= static_cast<int>(base_count)) ++k;
  return k;
}

AlgebraElement DeRhamData::lift(const DgPresentation& source, const AlgebraElement& a) const {
  if (source.generators().size() != base_count) throw PreconditionError("lift: presentation does not match the forms algebra");
  AlgebraElement r = forms.scalar(0);
  for (const auto& [w, c] : a.terms()) r += forms.word(w, c);
  return r;
}

AlgebraElement DeRhamData::ddr(const AlgebraElement& a) const {
  std::vector<AlgebraElement> on_gens;
  for (std::size_t g = 0; g < forms.generators().size(); ++g)
    on_gens.push_back(g < base_count ? forms.gen(form_generator(static_cast<int>(g))) : forms.scalar(0));
  return forms.derivation(a, on_gens, 1);
}

namespace {

DgPresentation forms_presentation(const DgPresentation& A) {
  std::vector<GeneratorSpec> gens = A.generators();
  for (const auto& g : A.generators()) gens.push_back({"d" + g.name, g.degree + 1, g.weight, std::nullopt});
  return DgPresentation(A.base(), MulKind::GradedCommutative, std::move(gens));
}

}  // namespace

DeRhamData kaehler(const DgPresentation& A, FormSign sign) {
  if (A.kind() != MulKind::GradedCommutative) throw PreconditionError("forms need a graded-commutative presentation");
  for (const auto& g : A.generators())
    if (g.nilpotency && !(g.degree % 2 != 0 && *g.nilpotency == 2))
      throw PreconditionError("forms need a semi-free presentation; " + g.name + " has a relation");
  DeRhamData D{forms_presentation(A), A.generators().size(), sign};
  for (std::size_t g = 0; g < D.base_count; ++g) {
    const auto& name = A.generators()[g].name;
    const AlgebraElement dg = D.lift(A, A.generator_differential(static_cast<int>(g)));
    D.forms.set_differential(name, dg);
    D.forms.set_differential("d" + name, sign == FormSign::Anticommuting ? -D.ddr(dg) : D.ddr(dg));
  }
  return D;
}

DeRhamTwist twist_x_ddr(const DeRhamData& D, const std::string& gen) {
  const int g = D.forms.generator_index(gen);
  if (g < 0 || g >= static_cast<int>(D.base_count)) throw PreconditionError("unknown generator " + gen);
  return {Poly::x() * D.forms.gen(D.form_generator(g))};
}

DeRhamTwist twist_curvature(const DeRhamData& D, const DgPresentation& source) {
  return {-D.ddr(D.lift(source, source.curvature()))};
}

MixedComplex de_rham_complex(const DeRhamData& D, const DeRhamTwist& twist, const TruncationPolicy& T) {
  T.check();
  const DgPresentation& F = D.forms;
  if (twist.form) {
    if (!F.is_homogeneous(*twist.form, -1) && !twist.form->is_zero())
      throw PreconditionError("twist must be a one-form of degree -1");
    if (!F.differential(*twist.form).is_zero() || !D.ddr(*twist.form).is_zero())
      throw PreconditionError("twist form is not closed");
  }
  bool pos = false, neg = false;
  for (const auto& g : F.generators()) {
    if (g.degree == 0 && !g.nilpotency) throw PreconditionError("forms window is infinite: " + g.name + " has degree 0");
    (g.degree > 0 ? pos : neg) = true;
  }
  if (pos && neg) throw PreconditionError("forms window is infinite: generators of both signs");

  MixedComplex M;
  M.provenance = "de-Rham";
  const int lo = T.min_degree, hi = T.max_degree;
  M.exact_below = !neg && lo <= 0;
  M.exact_above = neg && hi >= 0;
  const auto basis = F.monomial_basis(lo, hi, T.weight_bound);
  M.b = FreeComplex(F.base(), lo, hi);
  for (int k = lo; k <= hi; ++k) {
    std::vector<std::string> labels;
    std::vector<int> blocks;
    auto it = basis.find(k);
    if (it != basis.end())
      for (const auto& w : it->second) {
        M.tensors[k].push_back(Chain{w});
        labels.push_back(F.word_to_string(w));
        blocks.push_back(F.weight(w));
      }
    M.b.set_basis(k, std::move(labels), std::move(blocks));
  }
  auto idx = tensor_index(M);
  auto fill = [&](const AlgebraElement& img, int target, std::size_t col, SparseMatrix& m) {
    for (const auto& [w, c] : img.terms()) {
      auto f = idx.find(Chain{w});
      if (f == idx.end() || f->second.first != target) {
        ++M.dropped;
        continue;
      }
      m.add(f->second.second, col, c);
    }
  };
  for (int k = lo; k <= hi; ++k) {
    const auto& list = M.tensors[k];
    if (k > lo) {
      SparseMatrix d(M.b.rank(k - 1), list.size(), F.base());
      for (std::size_t j = 0; j < list.size(); ++j) {
        const AlgebraElement w = F.word(list[j][0]);
        AlgebraElement img = F.differential(w);
        if (twist.form) img += F.multiply(*twist.form, w);
        fill(img, k - 1, j, d);
      }
      M.b.set_differential(k, std::move(d));
    }
  }
  M.b.validate();
  return M;
}

MixedComplex de_rham_mixed(const DeRhamData& D, const DeRhamTwist& twist, const TruncationPolicy& T) {
  if (D.sign != FormSign::Anticommuting) throw PreconditionError("d_dR only anticommutes with d in the anticommuting convention");
  MixedComplex M = de_rham_complex(D, twist, T);
  const auto idx = tensor_index(M);
  for (int k = M.min_degree(); k < M.max_degree(); ++k) {
    const auto& list = M.tensors[k];
    SparseMatrix Bk(M.b.rank(k + 1), list.size(), D.forms.base());
    for (std::size_t j = 0; j < list.size(); ++j) {
      const AlgebraElement img = D.ddr(D.forms.word(list[j][0]));
      for (const auto& [w, c] : img.terms()) {
        auto f = idx.find(Chain{w});
        if (f == idx.end() || f->second.first != k + 1) {
          ++M.dropped;
          continue;
        }
        Bk.add(f->second.second, j, c);
      }
    }
    M.B[k] = std::move(Bk);
  }
  verify_mixed(M);
  return M;
}

AlgebraElement hkr_image(const DeRhamData& D, const DgPresentation& source, const Chain& c) {
  if (c.empty()) throw PreconditionError("empty Hochschild chain");
  AlgebraElement r = D.lift(source, source.word(c[0]));
  Rational fact = 1;
  for (std::size_t i = 1; i < c.size(); ++i) {
    r = D.forms.multiply(r, D.ddr(D.lift(source, source.word(c[i]))));
    fact *= static_cast<long>(i);
  }
  return Poly(Rational(1) / fact) * r;
}

ChainMapReport hkr_map(const DgPresentation& source, const MixedComplex& M, const DeRhamData& D,
                       const MixedComplex& target, int trust_margin) {
  const auto idx = tensor_index(target);
  ChainMapReport rep;
  for (int k = M.min_degree(); k <= M.max_degree(); ++k) {
    if (!target.b.in_window(k)) continue;
    const auto it = M.tensors.find(k);
    const std::size_t cols = it == M.tensors.end() ? 0 : it->second.size();
    SparseMatrix m(target.b.rank(k), cols, M.b.ring());
    for (std::size_t j = 0; j < cols; ++j) {
      const AlgebraElement img = hkr_image(D, source, it->second[j]);
      for (const auto& [w, coeff] : img.terms()) {
        auto f = idx.find(Chain{w});
        if (f == idx.end() || f->second.first != k)
          throw InvariantError("HKR image leaves the target window at " + std::to_string(k));
        m.add(f->second.second, j, coeff);
      }
    }
    rep.components[k] = std::move(m);
  }
  check_mixed_map(M, target, rep);
  if (rep.chain_map) compare_homology(M, target, rep, trust_margin);
  return rep;
}

}  // namespace hochlab
