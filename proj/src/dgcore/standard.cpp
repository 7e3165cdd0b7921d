#include "hochlab/dgcore/standard.hpp"

#include <string>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab::standard {

namespace {
void need_positive(int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
}
}  // namespace

DgPresentation c_algebra(int n) {
  need_positive(n);
  std::vector<GeneratorSpec> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({"y" + std::to_string(i), 2 * i - 1, 0, std::nullopt});
  DgPresentation P(Ring::Polynomial, MulKind::FreeAssociative, gens);
  P.set_differential("y1", P.scalar(Poly::x()));
  for (int i = 1; i < n; ++i) {
    AlgebraElement d(P.id(), {});
    for (int j = 1; j <= i; ++j) d += P.word({j - 1, i - j});
    P.set_differential("y" + std::to_string(i + 1), d);
  }
  return P;
}

DgPresentation truncated_polynomial(int n) {
  need_positive(n);
  return DgPresentation(Ring::Rational, MulKind::GradedCommutative, {{"x", 0, 1, n}});
}

DgPresentation curved_truncated(int n) {
  need_positive(n);
  DgPresentation P(Ring::Polynomial, MulKind::GradedCommutative, {{"t", -2, 1, n + 1}});
  P.set_curvature(P.word({0}, Poly::monomial(-1, 1)));
  return P;
}

DgPresentation curved_semifree(int n) {
  need_positive(n);
  DgPresentation P(Ring::Polynomial, MulKind::GradedCommutative,
                   {{"t", -2, 1, std::nullopt}, {"xi", -2 * n - 1, n + 1, std::nullopt}});
  P.set_differential("xi", P.word(Word(static_cast<std::size_t>(n + 1), 0)));
  P.set_curvature(P.word({0}, Poly::monomial(-1, 1)));
  return P;
}

DgPresentation koszul_point(int n) {
  need_positive(n);
  DgPresentation P(Ring::Polynomial, MulKind::GradedCommutative, {{"xi", 1, 0, std::nullopt}});
  P.set_differential("xi", P.scalar(Poly::monomial(1, n)));
  return P;
}

}  // namespace hochlab::standard
