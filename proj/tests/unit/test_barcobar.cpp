#include "doctest.h"
#include "hochlab/barcobar/amitsur.hpp"
#include "hochlab/barcobar/coalgebra.hpp"
#include "hochlab/barcobar/deformed.hpp"
#include "hochlab/exactalg/errors.hpp"

using namespace hochlab;

namespace {

DgPresentation exterior_point() {
  // Q + Q eta, |eta| = -1, eta^2 = 0
  return DgPresentation(Ring::Rational, MulKind::GradedCommutative, {{"eta", -1, 1, std::nullopt}});
}

std::size_t count_weight(const CoalgebraData& C, int w) {
  std::size_t n = 0;
  for (const auto& e : C.basis) n += e.weight == w;
  return n;
}

}  // namespace

TEST_CASE("coalgebra data is checked") {
  auto C = truncated_dual(3);
  CHECK_NOTHROW(C.check());
  CHECK(C.conilpotent());
  CHECK(C.reduced_coproduct(2).size() == 1);
  CHECK(C.reduced_coproduct(0).empty());

  auto bad = C;
  bad.coproduct[2].erase({0, 2});
  CHECK_THROWS_WITH_AS(bad.check(), "counit law fails on s2", InvariantError);
  auto C4 = truncated_dual(4);
  C4.coproduct[3][{1, 2}] = 2;
  CHECK_THROWS_WITH_AS(C4.check(), "coassociativity fails on s3", InvariantError);
  bad = C;
  bad.counit[1] = 1;
  CHECK_THROWS_AS(bad.check(), InvariantError);

  // g - 1 for a group-like g: the reduced coproduct is g' (x) g', never nilpotent
  CoalgebraData G;
  G.basis = {{"1", 0, 0}, {"g'", 0, 0}};
  G.counit = {1, 0};
  G.coaugmentation = 0;
  G.coproduct = {{{{0, 0}, Rational(1)}}, {{{1, 1}, Rational(1)}, {{0, 1}, Rational(1)}, {{1, 0}, Rational(1)}}};
  CHECK_NOTHROW(G.check());
  CHECK_FALSE(G.conilpotent());
  CHECK_THROWS_AS(cobar(G), PreconditionError);
}

TEST_CASE("bar construction") {
  SUBCASE("exterior algebra on a class of degree -1") {
    auto B = bar(exterior_point(), 5);
    CHECK(B.coalgebra.size() == 6);
    auto dims = B.coalgebra.complex().homology_dimensions();
    for (int m = 0; m <= 5; ++m) CHECK(dims[{m, 0}] == 1);
    CHECK(dims.size() == 6);
  }
  SUBCASE("base ring") {
    DgPresentation Q(Ring::Rational, MulKind::FreeAssociative, {});
    auto B = bar(Q, 4);
    CHECK(B.coalgebra.size() == 1);
    CHECK(B.coalgebra.basis[0].label == "[]");
  }
  SUBCASE("Euler characteristics are alternating word counts") {
    // free algebra on a (degree 0) and b (degree 1), weights 1
    DgPresentation F(Ring::Rational, MulKind::FreeAssociative, {{"a", 0, 1, std::nullopt}, {"b", 1, 1, std::nullopt}});
    F.set_differential("b", F.gen("a"));
    auto B = bar(F, 4);
    auto W = B.coalgebra.complex();
    W.check();
    for (int w = 1; w <= 4; ++w) {
      long chi = 0, words = 0;
      const FreeComplex P = W.piece(w);
      for (int k = P.min_degree(); k <= P.max_degree(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(P.rank(k));
      for (const auto& bw : B.words) {
        int deg = 0, wt = 0;
        for (const auto& a : bw) {
          deg += F.degree(a) + 1;
          wt += F.weight(a);
        }
        if (wt == w) words += deg % 2 == 0 ? 1 : -1;
      }
      CHECK(chi == words);
    }
    // F is acyclic augmented, so Bar(F) is the unit in homology
    auto dims = W.homology_dimensions();
    CHECK(dims.size() == 1);
    CHECK(dims[{0, 0}] == 1);
  }
  SUBCASE("preconditions") {
    DgPresentation Z(Ring::Rational, MulKind::FreeAssociative, {{"a", 0, 0, std::nullopt}});
    CHECK_THROWS_AS(bar(Z, 3), PreconditionError);
    DgPresentation S(Ring::Rational, MulKind::FreeAssociative, {{"a", 1, 1, std::nullopt}});
    S.set_differential("a", S.unit());
    CHECK_THROWS_AS(bar(S, 3), PreconditionError);
  }
}

TEST_CASE("cobar construction") {
  auto U = cobar(unit_coalgebra());
  CHECK(U.generators().empty());

  auto A2 = cobar(truncated_dual(2));
  REQUIRE(A2.generators().size() == 1);
  CHECK(A2.generators()[0].degree == -1);
  CHECK(A2.generator_differential(0).is_zero());

  auto A3 = cobar(truncated_dual(3));
  REQUIRE(A3.generators().size() == 2);
  CHECK(A3.generator_differential(0).is_zero());
  CHECK(A3.generator_differential(1) == A3.word({0, 0}));
  CHECK(A3.kind() == MulKind::FreeAssociative);

  // graded cogenerators pick up the Koszul sign of the first factor
  auto A3odd = cobar(truncated_dual(3, 1));
  CHECK(A3odd.generator_differential(1) == -A3odd.word({0, 0}));
}

TEST_CASE("bar-cobar roundtrip") {
  for (const auto& C : {unit_coalgebra(), truncated_dual(2), truncated_dual(3), truncated_dual(3, 1), truncated_dual(4, 2)}) {
    auto rep = bar_cobar_roundtrip(C, 4);
    for (const auto& m : rep.mismatches) INFO(m);
    CHECK(rep.ok);
    CHECK(rep.unit_chain_map);
    CHECK(rep.unit_coalgebra_map);
    CHECK(rep.unit_quasi_iso);
    CHECK(rep.coalgebra_dims.size() == std::min<std::size_t>(C.size(), 5));
  }
}

TEST_CASE("Koszul dual endomorphisms") {
  for (int n = 2; n <= 4; ++n) {
    auto A = cobar(truncated_dual(n));
    auto rep = koszul_dual_endomorphisms(A, n + 1);
    INFO(rep.to_string());
    CHECK(rep.total_dimension == static_cast<std::size_t>(n));
    for (const auto& [wk, dim] : rep.dimensions) CHECK(wk.second == 0);
    REQUIRE(rep.nilpotency.has_value());
    CHECK(*rep.nilpotency == n);
    CHECK(rep.associative);
  }
  DgPresentation Q(Ring::Rational, MulKind::FreeAssociative, {});
  auto base = koszul_dual_endomorphisms(Q, 3);
  CHECK(base.total_dimension == 1);
  CHECK_FALSE(base.nilpotency.has_value());

  // Q[eta]/eta^2 with |eta| = -1 has the polynomial algebra as dual: no nilpotency within the bound
  auto ext = koszul_dual_endomorphisms(exterior_point(), 4);
  CHECK(ext.total_dimension == 5);
  CHECK_FALSE(ext.nilpotency.has_value());
  CHECK(ext.associative);
}

TEST_CASE("Amitsur homotopy") {
  SUBCASE("trivial coalgebra") {
    auto rep = amitsur_homotopy(unit_coalgebra(), 5);
    CHECK(rep.ok);
    CHECK(rep.ranks == std::vector<std::size_t>(6, 1));
    auto K = amitsur_complex(unit_coalgebra(), 2);
    CHECK(K.h[0] == SparseMatrix::identity(1, Ring::Rational));
  }
  SUBCASE("rank two") {
    // eps = first coordinate, Delta(v) = v (x) (1,1)
    CoalgebraData C;
    C.basis = {{"e0", 0, 0}, {"e1", 0, 0}};
    C.counit = {1, 0};
    C.coproduct = {{{{0, 0}, Rational(1)}, {{0, 1}, Rational(1)}}, {{{1, 0}, Rational(1)}, {{1, 1}, Rational(1)}}};
    auto rep = amitsur_homotopy(C, 4);
    for (const auto& f : rep.failures) INFO(f);
    CHECK(rep.ok);
    CHECK(rep.ranks.back() == 32);
    CHECK_THROWS_AS(C.check(), InvariantError);  // not counital on the left, which is not needed here
  }
  SUBCASE("random section data") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto C = random_section_coalgebra(2 + seed % 2, seed);
      auto rep = amitsur_homotopy(C, seed % 2 ? 4 : 5);
      CHECK(rep.ok);
    }
  }
  SUBCASE("section law fails") {
    auto C = random_section_coalgebra(2, 7);
    C.coproduct[1][{1, 0}] += 1;
    CHECK_THROWS_WITH_AS(amitsur_homotopy(C, 3), doctest::Contains("c1"), PreconditionError);
  }
}

TEST_CASE("deformed tensor algebra") {
  SUBCASE("v = 0 gives the tensor algebra") {
    GradedModule V{{"a", "b"}, {1, 0}, {{{1, Rational(1)}}, {}}};
    auto T = deformed_tensor_algebra(V, {0, 0}, 4, 0, 4);
    for (int k = 1; k <= 4; ++k) CHECK(T.deformed.differential(k) == T.plain.complex.differential(k));
    CHECK(check_associated_graded(T).ok);
  }
  SUBCASE("one generator of degree 1") {
    GradedModule V{{"e"}, {1}, {}};
    auto T = deformed_tensor_algebra(V, {1}, 5, 0, 5);
    for (int k = 0; k <= 5; ++k) CHECK(T.graded_piece(k).total_rank() == 1);
    // d(e^k) = e^{k-1} for k odd
    CHECK(T.deformed.differential(1).get(0, 0) == Poly(1));
    CHECK(T.deformed.differential(2).is_zero());
    CHECK(T.deformed.differential(3).get(0, 0) == Poly(1));
    auto rep = check_associated_graded(T);
    CHECK(rep.ok);
    CHECK(rep.graded_checked == 6);
    // the deformation kills everything in pairs; Fil_5 is acyclic
    CHECK(rep.filtration_homology.back().empty());
    CHECK(rep.filtration_homology[0].at(0) == 1);
  }
  SUBCASE("rank two with an internal differential") {
    GradedModule V{{"a", "b"}, {1, 0}, {{{1, Rational(1)}}, {}}};
    auto T = deformed_tensor_algebra(V, {1, 0}, 5, -1, 5);
    auto rep = check_associated_graded(T);
    for (const auto& m : rep.mismatches) INFO(m);
    CHECK(rep.ok);
    for (int k = 0; k <= 5; ++k) CHECK(T.graded_piece(k).total_rank() == T.plain.piece(k).total_rank());
    CHECK(T.plain.piece(3).total_rank() == 8);
  }
  SUBCASE("preconditions") {
    GradedModule V{{"a", "b"}, {2, 1}, {{{1, Rational(1)}}, {}}};
    CHECK_THROWS_AS(deformed_tensor_algebra(V, {0, 1}, 3, 0, 3), PreconditionError);  // v d_V(a) = 1
    GradedModule W{{"c"}, {0}, {}};
    CHECK_THROWS_AS(deformed_tensor_algebra(W, {1}, 3, 0, 3), PreconditionError);
  }
}
