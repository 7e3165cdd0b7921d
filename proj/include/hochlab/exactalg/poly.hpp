#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hochlab {

using Rational = mpq_class;

/// Coefficient ring of every matrix and complex in the library.
enum class Ring { Rational, Polynomial };

std::string to_string(Ring ring);

/**
 * Exact univariate polynomial over Q in the variable x.
 *
 * Coefficients are stored dense by exponent with trailing zeros trimmed, so
 * the zero polynomial has no coefficients and the representation is unique.
 * Elements of Q are the constant polynomials.
 */
class Poly {
 public:
  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs);

  /// c * x^e
  static Poly monomial(const Rational& c, int e);
  static Poly x() { return monomial(1, 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  /// Nonzero constant; the units of both Q and Q[x].
  bool is_unit() const { return c_.size() == 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  /// Degree, -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Smallest exponent with nonzero coefficient, -1 for zero.
  int valuation() const;
  const Rational& lead() const;
  Rational coeff(int e) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Poly monic() const;
  Rational eval(const Rational& at) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Euclidean division; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  bool divisible_by(const Poly& divisor) const;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& p, unsigned e);

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Canonical text of a rational: "p" or "p/q".
std::string rational_to_string(const Rational& q);

}  // namespace hochlab
