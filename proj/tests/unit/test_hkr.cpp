#include "doctest.h"
#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/errors.hpp"
#include "hochlab/exactalg/homology.hpp"
#include "hochlab/hkr/explicit.hpp"
#include "hochlab/hkr/forms.hpp"
#include "hochlab/hkr/monomial.hpp"
#include "hochlab/hkr/spectral.hpp"

using namespace hochlab;

namespace {
TruncationPolicy window(int lo, int hi, int N = 4) {
  TruncationPolicy T;
  T.min_degree = lo;
  T.max_degree = hi;
  T.u_order = N;
  return T;
}
}  // namespace

TEST_CASE("forms of the semi-free algebras") {
  auto B = standard::koszul_point(2);
  auto D = kaehler(B);
  CHECK(D.forms.generators().size() == 2);
  CHECK(D.forms.generators()[1].name == "dxi");
  CHECK(D.forms.generators()[1].degree == 2);
  // x is a coefficient, so d(d xi) = -d_dR(x^2) = 0
  CHECK(D.forms.generator_differential(1).is_zero());

  DgPresentation Q(Ring::Polynomial, MulKind::GradedCommutative, {});
  CHECK(kaehler(Q).forms.generators().empty());

  for (int n : {1, 2}) {
    auto A = standard::curved_semifree(n);
    auto anti = kaehler(A), comm = kaehler(A, FormSign::Commuting);
    const int dxi = anti.forms.generator_index("dxi");
    AlgebraElement expect = Poly(Rational(n + 1)) * anti.forms.multiply(anti.forms.word(Word(n, 0)), anti.forms.gen("dt"));
    CHECK(anti.forms.generator_differential(dxi) == -expect);
    CHECK(comm.forms.generator_differential(dxi) == expect);
    // d and d_dR anticommute on every generator
    for (int g = 0; g < 4; ++g) {
      auto x = anti.forms.gen(g);
      CHECK((anti.forms.differential(anti.ddr(x)) + anti.ddr(anti.forms.differential(x))).is_zero());
    }
  }
  CHECK_THROWS_AS(kaehler(standard::truncated_polynomial(2)), PreconditionError);
  CHECK_THROWS_AS(kaehler(standard::c_algebra(1)), PreconditionError);
}

TEST_CASE("twists") {
  auto A = standard::curved_semifree(1);
  auto D = kaehler(A);
  CHECK(twist_curvature(D, A).form == twist_x_ddr(D, "t").form);
  DeRhamTwist bad{D.forms.gen("dxi")};
  CHECK_THROWS_AS(de_rham_mixed(D, bad, window(-4, 0)), PreconditionError);
  DeRhamTwist open{Poly::x() * D.forms.multiply(D.forms.gen("t"), D.forms.gen("dt"))};
  CHECK_THROWS_AS(de_rham_mixed(D, open, window(-6, 0)), PreconditionError);
  CHECK_THROWS_AS(de_rham_mixed(kaehler(A, FormSign::Commuting), twist_curvature(D, A), window(-4, 0)), PreconditionError);
}

TEST_CASE("de Rham complex of the Koszul point") {
  for (int n : {1, 2}) {
    auto B = standard::koszul_point(n);
    auto D = kaehler(B);
    auto M = de_rham_mixed(D, {}, window(0, 8));
    CHECK(M.provenance == "de-Rham");
    auto H = homology(M.b);
    // (d xi)^k in degree 2k carries Q[x]/x^n, xi (d xi)^k is not a cycle
    for (int k = 1; k <= 7; ++k) {
      const auto& h = H.at(k);
      if (k % 2 == 0) {
        CHECK(h.free_rank == 0);
        REQUIRE(h.torsion.size() == 1);
        CHECK(h.torsion[0] == Poly::monomial(1, n));
      } else {
        CHECK(h.is_zero());
      }
    }
  }
}

TEST_CASE("HKR for the Koszul point") {
  auto B = standard::koszul_point(2);
  auto D = kaehler(B);
  CHECK(hkr_image(D, B, Chain{{}, {0}}) == D.forms.gen("dxi"));
  CHECK(hkr_image(D, B, Chain{{0}}) == D.forms.gen("xi"));
  auto M = hochschild_mixed(B, window(0, 6));
  auto R = de_rham_mixed(D, {}, window(0, 6));
  auto rep = hkr_map(B, M, D, R);
  INFO(rep.message);
  CHECK(rep.chain_map);
  CHECK(rep.quasi_isomorphism());
  CHECK(rep.quasi_iso.size() >= 3);
}

TEST_CASE("curved HKR") {
  for (int n : {1, 2}) {
    auto A = standard::curved_semifree(n);
    auto D = kaehler(A);
    auto M = hochschild_second_kind(A, window(-6, 0));
    auto R = de_rham_mixed(D, twist_curvature(D, A), window(-6, 0));
    auto rep = hkr_map(A, M, D, R);
    INFO(rep.message);
    CHECK(rep.chain_map);
    CHECK(rep.quasi_isomorphism());
    CHECK(rep.quasi_iso.size() >= 3);
  }
}

TEST_CASE("explicit complexes") {
  auto K = explicit_mixed("K", 1, -8, 0);
  for (int k = -8; k <= 0; ++k) CHECK(K.b.rank(k) == 1);
  CHECK(K.b.labels(0)[0] == "f[0,0]");
  CHECK(K.b.labels(-1)[0] == "e[0,0]");
  CHECK(K.b.labels(-2)[0] == "f[1,0]");
  CHECK(K.b.differential(-2).get(0, 0) == Poly::monomial(1, 2));
  CHECK(K.B_at(-2).get(0, 0) == Poly(2));  // (n+1) n
  auto K2 = explicit_mixed("K", 2, -8, 0);
  CHECK(K2.b.labels(-6)[0] == "f[1,1]");
  CHECK(K2.B_at(-6).get(0, 0) == Poly(4));  // ln + l + i
  auto Kd = explicit_mixed("K_dual", 2, 0, 8);
  CHECK(Kd.exact_below);
  CHECK(Kd.b.differential(7).get(0, 0) == Poly::x());
  CHECK(Kd.B_at(5).get(0, 0) == Poly(4));
  auto L = explicit_mixed("laurent_dual", 2, -6, 0);
  CHECK(L.b.rank(0) == 1);
  CHECK(L.b.rank(-1) == 1);
  CHECK(L.b.differential(-1).get(0, 0) == Poly::monomial(-1, 2));
  CHECK(L.B_at(-1).get(0, 0) == Poly(-1));
  CHECK_THROWS_AS(explicit_mixed("nope", 1, 0, 1), PreconditionError);
  CHECK_THROWS_AS(explicit_mixed("K", 0, 0, 1), PreconditionError);

  auto C = instantiate_explicit("K", 1, window(-8, 0));
  C.complex.validate();
}

TEST_CASE("phi is a quasi-isomorphism of mixed complexes") {
  auto A = standard::curved_semifree(1);
  auto D = kaehler(A);
  CHECK(phi_image(D, 1, Chain{Word{0, 0, 0}}) == D.forms.gen("dt"));
  CHECK(phi_image(D, 1, Chain{Word{1, 0, 0}}) == D.forms.unit());
  auto rep = verify_phi(1, window(-8, 0));
  INFO(rep.message());
  CHECK(rep.mixed.chain_map);
  CHECK(rep.ok());
  CHECK(rep.cyclic_quasi_iso.size() >= 2);
  auto rep2 = verify_phi(2, window(-8, 0, 3));
  INFO(rep2.message());
  CHECK(rep2.ok());
}

TEST_CASE("monomial models") {
  auto T = window(-8, 8);
  auto m1 = cn_model(1, T);
  CHECK(*m1.i_min(-1) == 1);
  CHECK(*m1.i_min(-2) == 3);
  CHECK(*m1.i_min(2) == 0);
  CHECK(*cn_model(2, T).i_min(-2) == 2);
  auto L = laurent_model(2, T);
  CHECK(*L.i_min(0) == -2);
  CHECK(*L.i_min(3) == -8);
  CHECK_FALSE(L.i_min(-1).has_value());
  CHECK(L.rank(2) == 0);
  CHECK(m1.rank(-3) == 0);
  CHECK(embeds(cn_model(1, T), cn_model(2, T)).ok);
  CHECK(embeds(cn_model(2, T), cn_model(3, T)).ok);
  CHECK_FALSE(embeds(cn_model(2, T), cn_model(1, T)).ok);
}

TEST_CASE("dual of K matches the monomial model") {
  for (int n : {1, 2}) {
    auto T = window(0, 8, 5);
    auto C = instantiate_explicit("K_dual", n, T);
    auto H = homology_with_u_action(C);
    auto rep = compare(H, cn_model(n, T));
    for (const auto& m : rep.mismatches) INFO(m);
    CHECK(rep.ok);
    CHECK(rep.degrees_checked >= 3);
    CHECK(rep.u_checked >= 1);
  }
}

TEST_CASE("Laurent dual") {
  auto T = window(-10, 2, 5);
  auto C = instantiate_explicit("laurent_dual", 2, T);
  auto H = homology_with_u_action(C);
  for (int t = -8; t <= 0; ++t) CHECK(C.trusted.at(t));
  auto rep = compare(H, laurent_model(2, T));
  for (const auto& m : rep.mismatches) INFO(m);
  CHECK(rep.ok);
  CHECK(rep.u_checked >= 3);
}

TEST_CASE("spectral sequence of a u-filtration with B = 0") {
  MixedComplex M;
  M.provenance = "explicit";
  M.b = FreeComplex(Ring::Polynomial, -6, 0);
  for (int k = -6; k <= 0; ++k) M.b.set_basis(k, {"g" + std::to_string(k)});
  M.exact_above = true;
  auto C = negative_cyclic(M, window(-6, 0, 3));
  auto S = spectral_sequence(u_filtration(C), 4);
  REQUIRE(S.degenerates_at.has_value());
  CHECK(*S.degenerates_at == 1);
  CHECK(S.page(1).total_size(-4) == S.page(4).total_size(-4));
}

TEST_CASE("G-filtration of the twisted de Rham complex") {
  for (int n : {1, 2})
    for (int l : {0, 1}) {
      const Rational c = Rational(-1) / ((n + 1) * (l + 1));
      auto rep = g_filtration_d2(n, l, c, FormSign::Commuting);
      INFO(rep.message);
      CHECK(rep.lifted);
      CHECK(rep.target_nonzero);
      CHECK(rep.matches);
      // the anticommuting convention flips the sign of d(d xi) and of d_2
      CHECK(g_filtration_d2(n, l, -c, FormSign::Anticommuting).matches);
    }

  for (int n : {1, 2}) {
    auto A = standard::curved_semifree(n);
    for (auto sign : {FormSign::Commuting, FormSign::Anticommuting}) {
      auto D = kaehler(A, sign);
      auto M = de_rham_complex(D, twist_curvature(D, A), window(-10, 0));
      auto F = form_filtration(D, M);
      auto S = spectral_sequence(F, 3);
      const Page& E3 = S.page(3);
      for (const auto& [pk, e] : E3.entries)
        if (e.trusted) CHECK_MESSAGE(pk.second % 2 != 0, "even entry at level " << pk.first << " degree " << pk.second);
      CHECK_FALSE(S.page(2).d_zero);
      CHECK(E3.d_zero);

      // ranks at x = 1: the limit page against the homology of the total complex
      auto F1 = evaluate_at(F, 1);
      auto S1 = spectral_sequence(F1, F1.max_level() - F1.min_level() + 1);
      HomologyOptions opts;
      opts.generators = false;
      auto H1 = homology(F1.complex, opts);
      for (int k = -9; k <= -1; ++k) CHECK(S1.pages.back().total_size(k) == H1.at(k).size());
    }
  }
}
