#include <random>

#include "doctest.h"
#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/errors.hpp"

using namespace hochlab;

namespace {
AlgebraElement random_element(const DgPresentation& P, std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), coef(-2, 2);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(P.generators().size()) - 1);
  AlgebraElement e = P.scalar(0);
  for (int t = 0; t < 3; ++t) {
    Word w;
    for (int i = 0, n = len(rng); i < n; ++i) w.push_back(pick(rng));
    e += P.word(w, coef(rng));
  }
  return e;
}

// Random single word: homogeneous by construction.
AlgebraElement random_word(const DgPresentation& P, std::mt19937& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(P.generators().size()) - 1);
  Word w;
  for (int i = 0, n = len(rng); i < n; ++i) w.push_back(pick(rng));
  return P.word(w);
}
}  // namespace

TEST_CASE("multiplication") {
  auto P = DgPresentation(Ring::Polynomial, MulKind::GradedCommutative, {{"xi", 1, 0, {}}});
  CHECK(P.multiply(P.gen("xi"), P.gen("xi")).is_zero());
  auto C2 = standard::c_algebra(2);
  CHECK(C2.multiply(C2.gen("y1"), C2.gen("y2")) != C2.multiply(C2.gen("y2"), C2.gen("y1")));
  auto A = standard::curved_truncated(2);
  CHECK(A.multiply(A.gen("t"), A.word({0, 0})).is_zero());
  auto other = standard::c_algebra(1);
  CHECK_THROWS_AS(C2.multiply(C2.gen("y1"), other.gen("y1")), PreconditionError);
}

TEST_CASE("differential") {
  auto C2 = standard::c_algebra(2);
  CHECK(C2.differential(C2.gen("y2")) == C2.word({0, 0}));
  auto B = standard::koszul_point(3);
  CHECK(B.differential(B.gen("xi")) == B.scalar(Poly::monomial(1, 3)));
  auto C3 = standard::c_algebra(3);
  CHECK(C3.differential(C3.word({0, 0})).is_zero());
  CHECK(C3.differential(C3.unit()).is_zero());
}

TEST_CASE("monomial basis") {
  auto C1 = standard::c_algebra(1);
  auto b = C1.monomial_basis(0, 4);
  CHECK(b.size() == 5);
  for (int k = 0; k <= 4; ++k) {
    REQUIRE(b[k].size() == 1);
    CHECK(b[k][0] == Word(static_cast<std::size_t>(k), 0));
  }
  auto A = standard::curved_truncated(2);
  auto ba = A.monomial_basis(-4, 0);
  CHECK(ba[0].size() == 1);
  CHECK(ba[-2] == std::vector<Word>{{0}});
  CHECK(ba[-4] == std::vector<Word>{{0, 0}});
  CHECK(ba.count(-1) == 0);
  auto B = standard::koszul_point(1);
  auto bb = B.monomial_basis(0, 5);
  CHECK(bb[0].size() == 1);
  CHECK(bb[1].size() == 1);
  CHECK(bb.count(2) == 0);
  DgPresentation bad(Ring::Rational, MulKind::GradedCommutative, {{"z", 0, 0, {}}});
  CHECK_THROWS_AS(bad.monomial_basis(0, 2), PreconditionError);
  DgPresentation mixed(Ring::Rational, MulKind::FreeAssociative, {{"a", 1, 0, {}}, {"b", -1, 0, {}}});
  CHECK_THROWS_AS(mixed.monomial_basis(0, 2), PreconditionError);
}

TEST_CASE("validation") {
  CHECK(validate_presentation(standard::c_algebra(3)).ok);
  CHECK(validate_presentation(standard::curved_truncated(2)).ok);
  CHECK(validate_presentation(standard::curved_semifree(2)).ok);
  auto C2 = standard::c_algebra(2);
  C2.set_differential("y2", C2.gen("y1"));
  auto rep = validate_presentation(C2);
  CHECK_FALSE(rep.ok);
  CHECK(rep.generator == "y2");
}

TEST_CASE("morphisms") {
  auto C2 = standard::c_algebra(2), C3 = standard::c_algebra(3);
  AlgebraMorphism inc(C2, C3, {C3.gen("y1"), C3.gen("y2")});
  CHECK(is_chain_algebra_map(inc).ok);
  CHECK(is_chain_algebra_map(AlgebraMorphism::identity(C3)).ok);
  auto B = standard::koszul_point(1);
  DgPresentation base(Ring::Polynomial, MulKind::GradedCommutative, {});
  AlgebraMorphism kill(B, base, {base.scalar(0)});
  auto r = is_chain_algebra_map(kill);
  CHECK_FALSE(r.ok);
  CHECK(r.generator == "xi");
  CHECK_THROWS_AS(AlgebraMorphism(C2, C3, {C3.gen("y2"), C3.gen("y2")}), PreconditionError);
}

TEST_CASE("algebra properties on random elements") {
  std::mt19937 rng(3);
  std::vector<DgPresentation> algebras{standard::c_algebra(3), standard::curved_semifree(2),
                                       standard::truncated_polynomial(3)};
  for (const auto& P : algebras) {
    for (int trial = 0; trial < 30; ++trial) {
      auto a = random_element(P, rng, 4), b = random_element(P, rng, 4), c = random_element(P, rng, 4);
      CHECK(P.multiply(P.multiply(a, b), c) == P.multiply(a, P.multiply(b, c)));
      CHECK(P.multiply(P.unit(), a) == a);
      auto u = random_word(P, rng, 3), v = random_word(P, rng, 3);
      if (u.is_zero() || v.is_zero()) continue;
      const int du = *P.degree_of(u);
      CHECK(P.differential(P.multiply(u, v)) ==
            P.multiply(P.differential(u), v) + Poly(koszul_sign(du)) * P.multiply(u, P.differential(v)));
      if (P.kind() == MulKind::GradedCommutative) {
        const int dv = *P.degree_of(v);
        CHECK(P.multiply(u, v) == Poly(koszul_sign(static_cast<long>(du) * dv)) * P.multiply(v, u));
      }
    }
  }
}

TEST_CASE("weights are preserved by d") {
  auto P = standard::curved_semifree(3);
  for (std::size_t g = 0; g < P.generators().size(); ++g) {
    const AlgebraElement dg = P.generator_differential(static_cast<int>(g));
    for (const auto& [w, c] : dg.terms()) CHECK(P.weight(w) == P.generators()[g].weight);
  }
}
