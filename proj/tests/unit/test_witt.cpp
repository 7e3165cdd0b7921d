#include "doctest.h"
#include "hochlab/exactalg/errors.hpp"
#include "hochlab/witt/witt.hpp"

using namespace hochlab;

namespace {

const Ring Q = Ring::Rational;

WittVector series_of(std::vector<long> c) {
  std::vector<Poly> a;
  for (long v : c) a.emplace_back(v);
  return WittVector(Q, a);
}

std::vector<Poly> rationals(std::vector<long> c) {
  std::vector<Poly> a;
  for (long v : c) a.emplace_back(v);
  return a;
}

}  // namespace

TEST_CASE("Witt addition is the product of series") {
  const Poly a(3), b(-5);
  auto s = witt_add(WittVector::teichmuller(Q, a, 3), WittVector::teichmuller(Q, b, 3));
  CHECK(s == series_of({2, -15, 0}));
  auto z = WittVector::zero(Q, 4);
  auto w = random_witt(4, 3);
  CHECK(witt_add(w, z) == w);
  CHECK(witt_add(w, witt_neg(w)) == z);
  // inverse of 1 - a t is the geometric series
  CHECK(witt_neg(WittVector::teichmuller(Q, a, 3)) == series_of({3, 9, 27}));
  CHECK_THROWS_AS(witt_add(w, WittVector::zero(Q, 5)), PreconditionError);
  CHECK_THROWS_AS(WittVector(Q, {Poly::x()}), PreconditionError);
  CHECK_THROWS_AS(WittVector::zero(Q, 0), PreconditionError);
}

TEST_CASE("ghost coordinates") {
  const Poly a(Rational(2, 3));
  auto gh = ghost(WittVector::teichmuller(Q, a, 5));
  Poly p(1);
  for (int m = 0; m < 5; ++m) {
    p *= a;
    CHECK(gh[static_cast<std::size_t>(m)] == p);
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto u = random_witt(6, seed), v = random_witt(6, seed + 100);
    CHECK(from_ghost(Q, ghost(u)) == u);
    auto gs = ghost(witt_add(u, v)), gp = ghost(witt_mul(u, v)), gu = ghost(u), gv = ghost(v);
    for (std::size_t m = 0; m < 6; ++m) {
      CHECK(gs[m] == gu[m] + gv[m]);
      CHECK(gp[m] == gu[m] * gv[m]);
    }
  }
  // polynomial coefficients: 1 - x t
  auto gx = ghost(WittVector::teichmuller(Ring::Polynomial, Poly::x(), 4));
  CHECK(gx[3] == Poly::monomial(1, 4));
}

TEST_CASE("Witt multiplication") {
  const Poly a(Rational(-7, 2)), b(4);
  CHECK(witt_mul(WittVector::teichmuller(Q, a, 6), WittVector::teichmuller(Q, b, 6)) == WittVector::teichmuller(Q, a * b, 6));
  const Ring R = Ring::Polynomial;
  CHECK(witt_mul(WittVector::teichmuller(R, Poly::x(), 5), WittVector::teichmuller(R, Poly({1, 1}), 5)) ==
        WittVector::teichmuller(R, Poly::x() * Poly({1, 1}), 5));
  auto e = WittVector::one(Q, 6);
  for (auto g : ghost(e)) CHECK(g == Poly(1));

  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto u = random_witt(6, seed), v = random_witt(6, seed + 10), w = random_witt(6, seed + 20);
    CHECK(witt_mul(u, e) == u);
    CHECK(witt_mul(u, v) == witt_mul(v, u));
    CHECK(witt_mul(witt_mul(u, v), w) == witt_mul(u, witt_mul(v, w)));
    CHECK(witt_mul(u, witt_add(v, w)) == witt_add(witt_mul(u, v), witt_mul(u, w)));
    // truncation commutes with the operations
    auto U = random_witt(9, seed), V = random_witt(9, seed + 10);
    CHECK(witt_mul(U, V).truncate(6) == witt_mul(U.truncate(6), V.truncate(6)));
    CHECK(witt_add(U, V).truncate(6) == witt_add(U.truncate(6), V.truncate(6)));
  }
  CHECK(witt_scale(e, 3) == witt_add(e, witt_add(e, e)));
  CHECK(witt_scale(e, -1) == witt_neg(e));
}

TEST_CASE("Frobenius and Verschiebung") {
  const Poly a(Rational(3, 2));
  CHECK(verschiebung(WittVector::teichmuller(Q, a, 4), 2) == WittVector(Q, {Poly(), -a, Poly(), Poly()}));
  CHECK(frobenius(WittVector::teichmuller(Q, a, 6), 3) == WittVector::teichmuller(Q, a * a * a, 2));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto w = random_witt(6, seed);
    for (int n = 1; n <= 3; ++n) CHECK(frobenius(verschiebung(w, n), n) == witt_scale(w, n).truncate(6 / n));
  }
  CHECK_THROWS_AS(frobenius(random_witt(2, 1), 3), PreconditionError);
}

TEST_CASE("rationality") {
  auto w = WittVector::quotient(Q, rationals({1, -1}), rationals({1, -2}), 10);
  CHECK(w.coefficient(3) == Poly(4));
  auto rep = is_rational(w, 1);
  INFO(rep.to_string());
  REQUIRE(rep.rational);
  CHECK(rep.certificate->first == std::vector<Rational>{1, -1});
  CHECK(rep.certificate->second == std::vector<Rational>{1, -2});
  for (auto r : rep.hankel_ranks) CHECK(r < 2);

  auto poly = WittVector::quotient(Q, rationals({1, 2, 0, 5}), rationals({1}), 10);
  auto pr = is_rational(poly, 3);
  REQUIRE(pr.rational);
  CHECK(pr.certificate->second == std::vector<Rational>{1});

  std::vector<Poly> e;
  Rational f = 1;
  for (int k = 1; k <= 10; ++k) {
    f /= k;
    e.emplace_back(f);
  }
  auto exp_rep = is_rational(WittVector(Q, e), 3);
  CHECK_FALSE(exp_rep.rational);
  CHECK_FALSE(exp_rep.certificate.has_value());
  CHECK_THROWS_AS(is_rational(WittVector(Q, e), 5), PreconditionError);
  CHECK_THROWS_AS(is_rational(WittVector::one(Ring::Polynomial, 8), 1), PreconditionError);

  // products of rational vectors are rational; (1 - a t)/(1 - b t) has degree 1
  auto u = WittVector::quotient(Q, rationals({1, -1}), rationals({1, -2}), 12);
  auto v = WittVector::quotient(Q, rationals({1, 3}), rationals({1, -5}), 12);
  CHECK(is_rational(witt_mul(u, v), 2).rational);
  CHECK(is_rational(witt_add(u, v), 2).rational);
}
