#include "hochlab/witt/witt.hpp"

#include <random>
#include <sstream>

#include "hochlab/exactalg/errors.hpp"
#include "hochlab/exactalg/smith.hpp"

namespace hochlab {

namespace {

void check_pair(const WittVector& a, const WittVector& b) {
  if (a.ring != b.ring) throw PreconditionError("witt: coefficient rings differ");
  if (a.precision() != b.precision())
    throw PreconditionError("witt: precisions " + std::to_string(a.precision()) + " and " + std::to_string(b.precision()) +
                            " differ");
}

// series with constant term, truncated to degree L
std::vector<Poly> series(const WittVector& w) {
  std::vector<Poly> s{Poly(1)};
  s.insert(s.end(), w.coeffs.begin(), w.coeffs.end());
  return s;
}

std::vector<Poly> times(const std::vector<Poly>& a, const std::vector<Poly>& b, std::size_t L) {
  std::vector<Poly> c(L + 1);
  for (std::size_t i = 0; i < a.size() && i <= L; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= L; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

// inverse of a series with constant term 1
std::vector<Poly> inverse(const std::vector<Poly>& a, std::size_t L) {
  std::vector<Poly> b(L + 1);
  b[0] = 1;
  for (std::size_t k = 1; k <= L; ++k) {
    Poly s;
    for (std::size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * b[k - i];
    b[k] = -s;
  }
  return b;
}

WittVector from_series(Ring ring, std::vector<Poly> s) {
  s.erase(s.begin());
  return WittVector(ring, std::move(s));
}

}  // namespace

WittVector::WittVector(Ring r, std::vector<Poly> c) : ring(r), coeffs(std::move(c)) {
  if (coeffs.empty()) throw PreconditionError("witt: precision must be at least 1");
  if (ring == Ring::Rational)
    for (const auto& a : coeffs)
      if (!a.is_constant()) throw PreconditionError("witt: coefficient " + a.to_string() + " is not rational");
}

WittVector WittVector::zero(Ring ring, int precision) {
  if (precision < 1) throw PreconditionError("witt: precision must be at least 1");
  return WittVector(ring, std::vector<Poly>(static_cast<std::size_t>(precision)));
}

WittVector WittVector::one(Ring ring, int precision) { return teichmuller(ring, Poly(1), precision); }

WittVector WittVector::teichmuller(Ring ring, const Poly& a, int precision) {
  WittVector w = zero(ring, precision);
  w.coeffs[0] = -a;
  return WittVector(ring, w.coeffs);
}

WittVector WittVector::quotient(Ring ring, const std::vector<Poly>& f, const std::vector<Poly>& g, int precision) {
  if (precision < 1) throw PreconditionError("witt: precision must be at least 1");
  if (f.empty() || g.empty() || g[0].is_zero() || f[0] != g[0])
    throw PreconditionError("witt: quotient needs f(0) = g(0) != 0");
  const auto L = static_cast<std::size_t>(precision);
  if (!g[0].is_constant()) throw PreconditionError("witt: g(0) must be a unit");
  const Rational g0 = g[0].coeff(0);
  std::vector<Poly> gn, fn;
  for (const auto& c : g) gn.push_back(c * Poly(Rational(1 / g0)));
  for (const auto& c : f) fn.push_back(c * Poly(Rational(1 / g0)));
  return from_series(ring, times(fn, inverse(gn, L), L));
}

Poly WittVector::coefficient(int k) const {
  if (k == 0) return Poly(1);
  if (k < 0 || k > precision()) throw PreconditionError("witt: coefficient index out of range");
  return coeffs[static_cast<std::size_t>(k) - 1];
}

WittVector WittVector::truncate(int p) const {
  if (p < 1 || p > precision()) throw PreconditionError("witt: cannot truncate to precision " + std::to_string(p));
  return WittVector(ring, std::vector<Poly>(coeffs.begin(), coeffs.begin() + p));
}

std::string WittVector::to_string() const {
  std::ostringstream os;
  os << "1";
  for (int k = 1; k <= precision(); ++k) {
    const Poly& a = coeffs[static_cast<std::size_t>(k) - 1];
    if (a.is_zero()) continue;
    os << " + (" << a.to_string() << ")t";
    if (k > 1) os << "^" << k;
  }
  os << " + O(t^" << precision() + 1 << ")";
  return os.str();
}

WittVector witt_add(const WittVector& a, const WittVector& b) {
  check_pair(a, b);
  return from_series(a.ring, times(series(a), series(b), static_cast<std::size_t>(a.precision())));
}

WittVector witt_neg(const WittVector& a) {
  return from_series(a.ring, inverse(series(a), static_cast<std::size_t>(a.precision())));
}

WittVector witt_scale(const WittVector& a, long n) {
  std::vector<Poly> gh = ghost(a);
  for (auto& g : gh) g *= Rational(n);
  return from_ghost(a.ring, gh);
}

std::vector<Poly> ghost(const WittVector& w) {
  // sum_j gh_j a_{m-j} = -m a_m, with a_0 = 1
  const int L = w.precision();
  std::vector<Poly> gh(static_cast<std::size_t>(L));
  for (int m = 1; m <= L; ++m) {
    Poly s = w.coefficient(m) * Poly(Rational(-m));
    for (int j = 1; j < m; ++j) s -= gh[static_cast<std::size_t>(j) - 1] * w.coefficient(m - j);
    gh[static_cast<std::size_t>(m) - 1] = s;
  }
  return gh;
}

WittVector from_ghost(Ring ring, const std::vector<Poly>& gh) {
  const int L = static_cast<int>(gh.size());
  if (L < 1) throw PreconditionError("witt: empty ghost vector");
  std::vector<Poly> a(static_cast<std::size_t>(L));
  auto coef = [&a](int k) { return k == 0 ? Poly(1) : a[static_cast<std::size_t>(k) - 1]; };
  for (int m = 1; m <= L; ++m) {
    Poly s = gh[static_cast<std::size_t>(m) - 1];
    for (int j = 1; j < m; ++j) s += gh[static_cast<std::size_t>(j) - 1] * coef(m - j);
    a[static_cast<std::size_t>(m) - 1] = s * Poly(Rational(-1, m));
  }
  return WittVector(ring, std::move(a));
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
  check_pair(a, b);
  const auto ga = ghost(a), gb = ghost(b);
  std::vector<Poly> gh(ga.size());
  for (std::size_t i = 0; i < gh.size(); ++i) gh[i] = ga[i] * gb[i];
  return from_ghost(a.ring, gh);
}

WittVector frobenius(const WittVector& w, int n) {
  if (n < 1) throw PreconditionError("witt: frobenius needs n >= 1");
  const int L = w.precision() / n;
  if (L < 1) throw PreconditionError("witt: precision " + std::to_string(w.precision()) + " too small for F_" + std::to_string(n));
  const auto gh = ghost(w);
  std::vector<Poly> out;
  for (int m = 1; m <= L; ++m) out.push_back(gh[static_cast<std::size_t>(n * m) - 1]);
  return from_ghost(w.ring, out);
}

WittVector verschiebung(const WittVector& w, int n) {
  if (n < 1) throw PreconditionError("witt: verschiebung needs n >= 1");
  WittVector out = WittVector::zero(w.ring, w.precision());
  for (int k = 1; k * n <= w.precision(); ++k) out.coeffs[static_cast<std::size_t>(k * n) - 1] = w.coefficient(k);
  return out;
}

std::string RationalityReport::to_string() const {
  std::ostringstream os;
  os << (rational ? "rational" : "not rational") << " with degree bound " << degree_bound << " at precision " << precision;
  if (certificate) {
    auto poly = [](const std::vector<Rational>& c) {
      std::vector<Rational> v(c);
      return Poly(v).to_string();
    };
    os << ": f = " << poly(certificate->first) << ", g = " << poly(certificate->second) << " (in t)";
  }
  return os.str();
}

RationalityReport is_rational(const WittVector& w, int D) {
  if (w.ring != Ring::Rational) throw PreconditionError("is_rational: rationality is decided for rational coefficients");
  if (D < 0) throw PreconditionError("is_rational: negative degree bound");
  const int L = w.precision();
  if (L < 2 * D + 2)
    throw PreconditionError("is_rational: precision " + std::to_string(L) + " below 2D + 2 = " + std::to_string(2 * D + 2));
  RationalityReport rep;
  rep.degree_bound = D;
  rep.precision = L;
  auto c = [&w](int k) { return w.coefficient(k).coeff(0); };

  for (int k = 1; k + 2 * D <= L; ++k) {
    SparseMatrix H(static_cast<std::size_t>(D) + 1, static_cast<std::size_t>(D) + 1, Ring::Rational);
    for (int i = 0; i <= D; ++i)
      for (int j = 0; j <= D; ++j) H.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), Poly(c(k + i + j)));
    rep.hankel_ranks.push_back(rank_over_field(H));
  }

  // smallest d <= D with sum_{i=0}^d g_i c_{k-i} = 0 for d < k <= L, g_0 = 1
  for (int d = 0; d <= D; ++d) {
    std::vector<Rational> g{1};
    if (d > 0) {
      SparseMatrix M(static_cast<std::size_t>(L - d), static_cast<std::size_t>(d), Ring::Rational);
      Vector rhs(static_cast<std::size_t>(L - d));
      for (int k = d + 1; k <= L; ++k) {
        const auto r = static_cast<std::size_t>(k - d - 1);
        for (int i = 1; i <= d; ++i) M.set(r, static_cast<std::size_t>(i) - 1, Poly(c(k - i)));
        rhs[r] = Poly(-c(k));
      }
      const auto sol = solve_factor(M, rhs);
      if (!sol) continue;
      for (const auto& s : *sol) g.push_back(s.coeff(0));
    } else {
      bool trivial = true;
      for (int k = 1; k <= L; ++k) trivial = trivial && c(k) == 0;
      if (!trivial) continue;
    }
    std::vector<Rational> f(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k)
      for (int i = 0; i <= k; ++i) f[static_cast<std::size_t>(k)] += g[static_cast<std::size_t>(i)] * c(k - i);
    while (f.size() > 1 && f.back() == 0) f.pop_back();
    while (g.size() > 1 && g.back() == 0) g.pop_back();
    // the certificate must reproduce w
    std::vector<Poly> fp(f.begin(), f.end()), gp(g.begin(), g.end());
    if (WittVector::quotient(Ring::Rational, fp, gp, L) != w) throw InvariantError("is_rational: certificate does not reproduce the series");
    rep.rational = true;
    rep.certificate = std::make_pair(f, g);
    break;
  }
  return rep;
}

WittVector random_witt(int precision, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
  std::vector<Poly> a;
  for (int k = 0; k < precision; ++k) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    a.emplace_back(q);
  }
  return WittVector(Ring::Rational, std::move(a));
}

}  // namespace hochlab
