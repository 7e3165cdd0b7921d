#include "doctest.h"
#include "hochlab/dgcore/standard.hpp"
#include "hochlab/exactalg/errors.hpp"
#include "hochlab/exactalg/homology.hpp"
#include "hochlab/hochschild/chains.hpp"

using namespace hochlab;

namespace {
TruncationPolicy window(int lo, int hi, bool drop_unit = false) {
  TruncationPolicy T;
  T.min_degree = lo;
  T.max_degree = hi;
  T.drop_unit = drop_unit;
  return T;
}

std::size_t rank_at(const HomologyReport& H, int k) { return H.at(k).free_rank; }
}  // namespace

TEST_CASE("base ring alone") {
  DgPresentation Q(Ring::Rational, MulKind::GradedCommutative, {});
  auto M = hochschild_mixed(Q, window(0, 3, true));
  CHECK(M.b.total_rank() == 0);
  auto U = hochschild_mixed(Q, window(0, 3));
  CHECK(U.b.rank(0) == 1);
  CHECK(U.b.total_rank() == 1);
}

TEST_CASE("operators on short chains") {
  auto A = standard::truncated_polynomial(3);
  HochschildOps ops(A, false);
  CHECK(ops.b(Chain{{0}}).empty());
  auto B = ops.B(Chain{{0}});
  REQUIRE(B.size() == 1);
  CHECK(B.begin()->first == Chain{{}, {0}});
  CHECK(B.begin()->second == Poly(1));
  CHECK(ops.B(Chain{{}, {0}}).empty());
  // b(a|b) = ab - ba vanishes for a commutative algebra in degree 0
  CHECK(ops.b(Chain{{0}, {0}}).empty());
  CHECK(ops.label(Chain{{}, {0, 0}}) == "(1|x*x)");
}

TEST_CASE("truncated polynomial rings") {
  for (int n : {2, 3}) {
    auto A = standard::truncated_polynomial(n);
    auto M = hochschild_mixed(A, window(0, 5, true));
    CHECK(M.provenance == "first-kind");
    HomologyOptions opts;
    opts.generators = false;
    auto H = homology(M.b, opts);
    for (int k = 0; k <= 4; ++k) CHECK(rank_at(H, k) == static_cast<std::size_t>(n - 1));
    auto full = homology(hochschild_mixed(A, window(0, 5)).b, opts);
    CHECK(rank_at(full, 0) == static_cast<std::size_t>(n));
  }
}

TEST_CASE("degree precondition names generators") {
  DgPresentation P(Ring::Rational, MulKind::FreeAssociative, {{"a", 1, 0, {}}, {"b", -3, 0, {}}});
  try {
    hochschild_mixed(P, window(0, 3));
    FAIL("expected rejection");
  } catch (const PreconditionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unbounded tensor length in window") != std::string::npos);
    CHECK(msg.find("a") != std::string::npos);
    CHECK(msg.find("b") != std::string::npos);
  }
  DgPresentation odd(Ring::Rational, MulKind::FreeAssociative, {{"e", -1, 0, {}}});
  CHECK_THROWS_AS(hochschild_mixed(odd, window(0, 3)), PreconditionError);
  CHECK_THROWS_AS(hochschild_mixed(standard::curved_truncated(1), window(-4, 0)), PreconditionError);
}

TEST_CASE("second kind without curvature agrees with the first kind") {
  auto C = standard::c_algebra(2);
  auto a = hochschild_mixed(C, window(0, 6));
  auto b = hochschild_second_kind(C, window(0, 6));
  for (int k = 1; k <= 6; ++k) CHECK(a.b.differential(k) == b.b.differential(k));
  for (int k = 0; k < 6; ++k) CHECK(a.B_at(k) == b.B_at(k));
}

TEST_CASE("second kind of the curved truncated ring is the dual naive complex") {
  for (int n : {1, 2}) {
    auto T = standard::curved_truncated(n);
    auto C = standard::c_algebra(n);
    auto S = hochschild_second_kind(T, window(-6, 0));
    auto D = dualize(naive_hochschild(C, window(0, 6)));
    verify_mixed(D);
    auto target = tensor_index(D);
    BasisBijection bij = [&](int k, std::size_t i) -> std::optional<std::size_t> {
      const Chain& c = S.tensors.at(k).at(i);
      Word w;
      for (std::size_t j = c.size() - 1; j >= 1; --j) w.push_back(static_cast<int>(c[j].size()) - 1);
      Chain e = c[0].empty() ? Chain{w} : Chain{w, Word{static_cast<int>(c[0].size()) - 1}};
      auto it = target.find(e);
      if (it == target.end() || it->second.first != k) return std::nullopt;
      return it->second.second;
    };
    auto rep = isomorphic_by_scaling(S, D, bij);
    INFO(rep.message);
    CHECK(rep.ok);
  }
}

TEST_CASE("scaling check detects a changed entry") {
  auto C = standard::c_algebra(1);
  auto N = naive_hochschild(C, window(0, 4));
  auto N2 = N;
  auto d = N2.b.differential(2);
  d.set(0, 0, d.get(0, 0) + Poly::x());
  N2.b.set_differential(2, d);
  BasisBijection same = [](int, std::size_t i) -> std::optional<std::size_t> { return i; };
  CHECK(isomorphic_by_scaling(N, N, same).ok);
  CHECK_FALSE(isomorphic_by_scaling(N, N2, same).ok);
}

TEST_CASE("double dual") {
  auto N = naive_hochschild(standard::c_algebra(2), window(0, 6));
  auto DD = dualize(dualize(N));
  // both differentials come back negated, which the sign (-1)^k on degree k undoes
  for (int k = 1; k <= 6; ++k) CHECK(DD.b.differential(k) == -N.b.differential(k));
  for (int k = 0; k < 6; ++k) CHECK(DD.B_at(k) == -N.B_at(k));
  BasisBijection same = [](int, std::size_t i) -> std::optional<std::size_t> { return i; };
  auto rep = isomorphic_by_scaling(N, DD, same);
  REQUIRE(rep.ok);
  for (int k = 0; k <= 6; ++k)
    for (const auto& s : rep.scaling.at(k)) CHECK(s * s == 1);
}

TEST_CASE("naive complex") {
  DgPresentation base(Ring::Polynomial, MulKind::FreeAssociative, {});
  auto N0 = naive_hochschild(base, window(0, 4));
  CHECK(N0.b.rank(0) == 1);
  CHECK(N0.b.total_rank() == 1);
  // C1: words y^k in degree k, forms y^k dy in degree k + 2
  auto N = naive_hochschild(standard::c_algebra(1), window(0, 6));
  CHECK(N.b.rank(0) == 1);
  CHECK(N.b.rank(1) == 1);
  for (int k = 2; k <= 6; ++k) CHECK(N.b.rank(k) == 2);
  CHECK_THROWS_AS(naive_hochschild(standard::truncated_polynomial(2), window(0, 2)), PreconditionError);
}

TEST_CASE("comparison map is a quasi-isomorphism") {
  for (int n : {1, 2}) {
    auto C = standard::c_algebra(n);
    auto M = hochschild_mixed(C, window(0, 8));
    auto N = naive_hochschild(C, window(0, 8));
    auto rep = comparison_map(C, M, N);
    INFO(rep.message);
    CHECK(rep.chain_map);
    CHECK(rep.quasi_isomorphism());
    CHECK(rep.quasi_iso.size() >= 5);
  }
}

TEST_CASE("functoriality of the Hochschild complex") {
  for (int n : {1, 2}) {
    auto Cn = standard::c_algebra(n), Cm = standard::c_algebra(n + 1);
    std::vector<AlgebraElement> imgs;
    for (int i = 1; i <= n; ++i) imgs.push_back(Cm.gen("y" + std::to_string(i)));
    AlgebraMorphism f(Cn, Cm, imgs);
    auto rep = induced_chain_map(f, hochschild_mixed(Cn, window(0, 6)), hochschild_mixed(Cm, window(0, 6)));
    INFO(rep.message);
    CHECK(rep.chain_map);
  }
}

TEST_CASE("transition maps of truncated rings vanish on even homology") {
  for (int n : {2, 3}) {
    auto big = standard::truncated_polynomial(n + 1), small = standard::truncated_polynomial(n);
    AlgebraMorphism f(big, small, {small.gen("x")});
    auto src = hochschild_mixed(big, window(0, 6, true));
    auto dst = hochschild_mixed(small, window(0, 6, true));
    auto rep = induced_chain_map(f, src, dst);
    CHECK(rep.chain_map);
    auto hs = homology(src.b), hd = homology(dst.b);
    for (int l = n - 1; 2 * l <= 4; ++l) {
      auto m = induced_map(hs, 2 * l, hd, 2 * l, rep.components.at(2 * l));
      CHECK(m.is_zero());
    }
  }
}

TEST_CASE("dropped components are counted under a weight bound") {
  auto A = standard::truncated_polynomial(3);
  auto T = window(0, 4);
  T.weight_bound = 2;
  auto M = hochschild_mixed(A, T);
  for (int k = 0; k <= 4; ++k)
    for (int w : M.b.blocks(k)) CHECK(w <= 2);
  CHECK(M.dropped == 0);
}
