#include "doctest.h"
#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/errors.hpp"
#include "hochlab/hochschild/cyclic.hpp"

using namespace hochlab;

namespace {
TruncationPolicy policy(int lo, int hi, int N, TruncationStyle style = TruncationStyle::Subcomplex) {
  TruncationPolicy T;
  T.min_degree = lo;
  T.max_degree = hi;
  T.u_order = N;
  T.style = style;
  return T;
}

// Rank one in every degree of [lo, hi], b = 0, B = 0, nothing above hi.
MixedComplex line(int lo, int hi) {
  MixedComplex M;
  M.provenance = "explicit";
  M.b = FreeComplex(Ring::Polynomial, lo, hi);
  for (int k = lo; k <= hi; ++k) M.b.set_basis(k, {"g" + std::to_string(k)});
  M.exact_above = true;
  return M;
}
}  // namespace

TEST_CASE("vanishing B gives shifted copies") {
  auto M = line(-8, 0);
  for (auto style : {TruncationStyle::Subcomplex, TruncationStyle::Quotient}) {
    auto C = negative_cyclic(M, policy(-8, 0, 5, style));
    auto H = homology_with_u_action(C);
    for (int t = -6; t <= -2; ++t) {
      CHECK(C.trusted.at(t));
      const std::size_t copies = static_cast<std::size_t>(-t / 2 + 1);
      CHECK(H.homology.at(t).free_rank == copies);
    }
    CHECK_FALSE(C.trusted.at(-8));
    // u shifts copies: injective with unit maximal minors
    for (int t = -4; t <= -2; t += 2) {
      REQUIRE(H.u_action.count(t));
      const auto& U = H.u_action.at(t);
      CHECK(U.rows() == U.cols() + 1);
      CHECK(smith_normal_form(U).rank == U.cols());
      for (const auto& p : smith_normal_form(U).diagonal) CHECK(p.is_unit());
    }
  }
}

TEST_CASE("cyclic differential squares to zero and respects levels") {
  auto M = hochschild_mixed(standard::truncated_polynomial(2), TruncationPolicy{0, 11, 4, 2, {}, TruncationStyle::Subcomplex, true});
  auto C = negative_cyclic(M, policy(-4, 4, 4));
  C.complex.validate();
  for (int t = -3; t <= 4; ++t) {
    auto d = C.complex.differential(t);
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (const auto& [c, v] : d.row(r)) {
        const int jr = C.level.at(t - 1)[r].first, jc = C.level.at(t)[c].first;
        CHECK((jr == jc || jr == jc + 1));
      }
  }
}

TEST_CASE("truncated polynomial rings: odd classes only") {
  for (int n : {2, 3}) {
    TruncationPolicy MT{0, 9, 3, 2, {}, TruncationStyle::Subcomplex, true};
    auto M = hochschild_mixed(standard::truncated_polynomial(n), MT);
    auto C = negative_cyclic(M, policy(-2, 4, 3));
    auto H = homology_with_u_action(C, false);
    int trusted = 0;
    for (const auto& D : H.homology.degrees) {
      if (!D.trusted) continue;
      ++trusted;
      CHECK(D.free_rank == (D.degree % 2 != 0 ? static_cast<std::size_t>(n - 1) : 0));
    }
    CHECK(trusted >= 3);
  }
}

TEST_CASE("stabilization in the u-order") {
  TruncationPolicy MT{0, 14, 4, 2, {}, TruncationStyle::Subcomplex, true};
  auto M = hochschild_mixed(standard::truncated_polynomial(2), MT);
  auto a = homology_with_u_action(negative_cyclic(M, policy(-2, 5, 3)), false).homology;
  auto b = homology_with_u_action(negative_cyclic(M, policy(-2, 5, 5)), false).homology;
  int common = 0;
  for (const auto& D : a.degrees)
    if (D.trusted && b.at(D.degree).trusted) {
      ++common;
      CHECK(D.free_rank == b.at(D.degree).free_rank);
      CHECK(D.torsion == b.at(D.degree).torsion);
    }
  CHECK(common >= 1);
}

TEST_CASE("coordinates round trip") {
  auto M = line(-6, 0);
  auto C = negative_cyclic(M, policy(-6, 0, 3));
  for (int t = -6; t <= 0; ++t)
    for (std::size_t i = 0; i < C.complex.rank(t); ++i) {
      Vector v = C.coordinates(t, C.element(t, i));
      for (std::size_t r = 0; r < v.size(); ++r) CHECK(v[r] == Poly(r == i ? 1 : 0));
    }
}

TEST_CASE("policy checks") {
  CHECK_THROWS_AS(negative_cyclic(line(0, 2), policy(3, 1, 2)), PreconditionError);
  CHECK_THROWS_AS(negative_cyclic(line(0, 2), policy(0, 1, 0)), PreconditionError);
}

TEST_CASE("kernel levels over Q") {
  TruncationPolicy MT{0, 7, 3, 2, {}, TruncationStyle::Subcomplex, false};
  auto M = hochschild_mixed(standard::truncated_polynomial(3), MT);
  auto C = negative_cyclic(M, policy(0, 2, 3));
  std::size_t restricted = 0;
  for (int t = 0; t <= 2; ++t)
    for (std::size_t i = 0; i < C.complex.rank(t); ++i) {
      auto parts = C.element(t, i);
      for (const auto& [j, v] : parts)
        if (C.restricted(t, j)) {
          ++restricted;
          CHECK(is_zero_vector(M.B_at(t + 2 * j).apply(v)));
        }
      Vector unit(C.complex.rank(t), Poly(0));
      unit[i] = 1;
      CHECK(C.coordinates(t, parts) == unit);
    }
  CHECK(restricted > 0);
}
