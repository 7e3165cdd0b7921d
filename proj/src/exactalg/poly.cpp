#include "hochlab/exactalg/poly.hpp"

#include <ostream>
#include <sstream>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

std::string to_string(Ring ring) {
  return ring == Ring::Rational ? "Q" : "Q[x]";
}

std::string rational_to_string(const Rational& q) {
  return q.get_str();
}

Poly::Poly(long c) : c_{Rational(c)} { trim(); }

Poly::Poly(const Rational& c) : c_{c} { trim(); }

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& q : c_) q.canonicalize();
  trim();
}

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) {
  for (auto& q : c_) q.canonicalize();
  trim();
}

Poly Poly::monomial(const Rational& c, int e) {
  if (e < 0) throw PreconditionError("Poly::monomial: negative exponent");
  if (c == 0) return {};
  std::vector<Rational> v(static_cast<std::size_t>(e) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

const Rational& Poly::lead() const {
  if (c_.empty()) throw PreconditionError("Poly::lead: zero polynomial");
  return c_.back();
}

Rational Poly::coeff(int e) const {
  if (e < 0 || e >= static_cast<int>(c_.size())) return 0;
  return c_[static_cast<std::size_t>(e)];
}

Poly Poly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  Poly r = *this;
  r *= Rational(1) / c_.back();
  return r;
}

Rational Poly::eval(const Rational& at) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  Poly p;
  p.c_ = std::move(r);
  p.trim();
  return p;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& q : c_) q *= s;
  return *this;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw PreconditionError("Poly::divmod: division by zero");
  Poly rem = *this;
  if (rem.degree() < divisor.degree()) return {Poly{}, rem};
  const int dd = divisor.degree();
  const Rational inv_lead = Rational(1) / divisor.lead();
  std::vector<Rational> q(static_cast<std::size_t>(rem.degree() - dd) + 1);
  for (int top = rem.degree(); top >= dd; --top) {
    const Rational& lc = rem.c_[static_cast<std::size_t>(top)];
    if (lc == 0) continue;
    Rational f = lc * inv_lead;
    q[static_cast<std::size_t>(top - dd)] = f;
    for (int i = 0; i <= dd; ++i)
      rem.c_[static_cast<std::size_t>(top - dd + i)] -= f * divisor.c_[static_cast<std::size_t>(i)];
  }
  rem.trim();
  return {Poly(std::move(q)), rem};
}

bool Poly::divisible_by(const Poly& divisor) const {
  if (divisor.is_zero()) return is_zero();
  return divmod(divisor).second.is_zero();
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly u = a, v = b;
  while (!v.is_zero()) {
    Poly r = u.divmod(v).second;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

Poly pow(const Poly& p, unsigned e) {
  Poly r(1), base = p;
  while (e) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int e = degree(); e >= 0; --e) {
    Rational c = c_[static_cast<std::size_t>(e)];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rational a = abs(c);
    if (e == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "x";
      if (e > 1) os << "^" << e;
    }
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

}  // namespace hochlab
