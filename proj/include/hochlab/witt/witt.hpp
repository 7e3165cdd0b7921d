#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochlab/exactalg/poly.hpp"

namespace hochlab {

/**
 * Big Witt vector 1 + a_1 t + ... + a_L t^L over Q (constant coefficients) or
 * Q[x], with Witt addition the product of series. The series variable t plays the role of x^-1.
 */
struct WittVector {
  Ring ring = Ring::Rational;
  std::vector<Poly> coeffs;  // a_1 .. a_L

  /// Throws PreconditionError when L < 1 or a coefficient is not in the ring.
  WittVector(Ring ring, std::vector<Poly> coeffs);
  /// The series 1, the additive zero.
  static WittVector zero(Ring ring, int precision);
  /// 1 - t, the multiplicative unit.
  static WittVector one(Ring ring, int precision);
  /// 1 - a t.
  static WittVector teichmuller(Ring ring, const Poly& a, int precision);
  /// The series f / g mod t^{L+1}; needs f(0) = g(0) != 0.
  static WittVector quotient(Ring ring, const std::vector<Poly>& f, const std::vector<Poly>& g, int precision);

  int precision() const { return static_cast<int>(coeffs.size()); }
  /// Coefficient of t^k, with a_0 = 1.
  Poly coefficient(int k) const;
  WittVector truncate(int precision) const;
  std::string to_string() const;

  friend bool operator==(const WittVector& a, const WittVector& b) { return a.ring == b.ring && a.coeffs == b.coeffs; }
  friend bool operator!=(const WittVector& a, const WittVector& b) { return !(a == b); }
};

/// Throws PreconditionError on a precision or ring mismatch.
WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
/// n * a in Witt addition, for any integer n.
WittVector witt_scale(const WittVector& a, long n);
WittVector witt_mul(const WittVector& a, const WittVector& b);

/// gh_m = coefficient of t^m in -t d/dt log w, m = 1..L.
std::vector<Poly> ghost(const WittVector& w);
WittVector from_ghost(Ring ring, const std::vector<Poly>& gh);

/// gh_m(F_n w) = gh_{nm}(w); the result has precision floor(L / n), which must be >= 1.
WittVector frobenius(const WittVector& w, int n);
/// V_n(w)(t) = w(t^n), truncated back to precision L.
WittVector verschiebung(const WittVector& w, int n);

struct RationalityReport {
  bool rational = false;
  int degree_bound = 0;
  int precision = 0;
  /// w = f / g with f(0) = g(0) = 1 and deg f, deg g <= degree_bound; coefficients from t^0.
  std::optional<std::pair<std::vector<Rational>, std::vector<Rational>>> certificate;
  /// Ranks of the (D+1)-square Hankel matrices (c_{k+i+j}), k = 1 .. L - 2D; all < D+1 when rational.
  std::vector<std::size_t> hankel_ranks;
  std::string to_string() const;
};

/**
 * Decides whether w agrees to precision L with a ratio f/g of degrees <= D,
 * by the smallest linear recurrence of order <= D satisfied by the coefficients.
 * Needs rational coefficients and L >= 2D + 2 (PreconditionError otherwise).
 */
RationalityReport is_rational(const WittVector& w, int degree_bound);

/// Random Witt vector over Q with small rational coefficients.
WittVector random_witt(int precision, std::uint64_t seed);

}  // namespace hochlab
