#include "hochlab/barcobar/amitsur.hpp"

#include <random>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {

std::size_t power(std::size_t r, int e) {
  std::size_t p = 1;
  for (int i = 0; i < e; ++i) p *= r;
  return p;
}

// digits of a basis index of C^{(x) len}, most significant first
std::vector<std::size_t> digits(std::size_t idx, std::size_t r, int len) {
  std::vector<std::size_t> out(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = idx % r;
    idx /= r;
  }
  return out;
}

std::size_t index(const std::vector<std::size_t>& dig, std::size_t r) {
  std::size_t idx = 0;
  for (std::size_t d : dig) idx = idx * r + d;
  return idx;
}

}  // namespace

AmitsurComplex amitsur_complex(const CoalgebraData& C, int length) {
  if (length < 0) throw PreconditionError("amitsur: negative length");
  const std::size_t r = C.size();
  if (r == 0 || C.counit.size() != r || C.coproduct.size() != r) throw PreconditionError("amitsur: malformed coalgebra data");
  AmitsurComplex K;
  K.rank = r;
  for (int n = 0; n <= length + 1; ++n) {
    const std::size_t dim = power(r, n + 1);
    SparseMatrix d(n == 0 ? 0 : power(r, n), dim, Ring::Rational);
    for (std::size_t col = 0; n > 0 && col < dim; ++col) {
      const auto dig = digits(col, r, n + 1);
      for (int i = 1; i <= n; ++i) {
        const Rational& e = C.counit[dig[static_cast<std::size_t>(i)]];
        if (e == 0) continue;
        auto rest = dig;
        rest.erase(rest.begin() + i);
        d.add(index(rest, r), col, Poly(i % 2 == 1 ? e : Rational(-e)));
      }
    }
    K.d.push_back(std::move(d));
    if (n > length) break;
    SparseMatrix h(power(r, n + 2), dim, Ring::Rational);
    for (std::size_t col = 0; col < dim; ++col) {
      const auto dig = digits(col, r, n + 1);
      for (const auto& [ab, c] : C.coproduct[dig[0]]) {
        std::vector<std::size_t> out{ab.first, ab.second};
        out.insert(out.end(), dig.begin() + 1, dig.end());
        h.add(index(out, r), col, Poly(c));
      }
    }
    K.h.push_back(std::move(h));
  }
  return K;
}

AmitsurReport amitsur_homotopy(const CoalgebraData& C, int length) {
  // section law first, with a witness
  for (std::size_t i = 0; i < C.size(); ++i) {
    std::map<std::size_t, Rational> img;
    for (const auto& [ab, c] : C.coproduct.at(i)) img[ab.first] += c * C.counit.at(ab.second);
    for (const auto& [j, c] : img)
      if (c != (j == i ? 1 : 0))
        throw PreconditionError("amitsur: (id (x) eps) Delta differs from id on " + C.basis[i].label);
    if (img[i] != 1) throw PreconditionError("amitsur: (id (x) eps) Delta differs from id on " + C.basis[i].label);
  }
  const AmitsurComplex K = amitsur_complex(C, length);
  AmitsurReport rep;
  rep.length = length;
  for (int n = 0; n <= length; ++n) {
    const auto un = static_cast<std::size_t>(n);
    const std::size_t dim = K.d[un].cols();
    rep.ranks.push_back(dim);
    if (n > 0 && !(K.d[un - 1] * K.d[un]).is_zero()) {
      rep.ok = false;
      rep.failures.push_back("d^2 != 0 on K_" + std::to_string(n));
    }
    SparseMatrix s = K.d[un + 1] * K.h[un];
    if (n > 0) s = s + K.h[un - 1] * K.d[un];
    if (s != SparseMatrix::identity(dim, Ring::Rational)) {
      rep.ok = false;
      rep.failures.push_back("d h + h d != id on K_" + std::to_string(n));
    }
  }
  return rep;
}

CoalgebraData random_section_coalgebra(std::size_t rank, std::uint64_t seed) {
  if (rank == 0) throw PreconditionError("random_section_coalgebra: rank must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  auto rnd = [&] {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
  };

  CoalgebraData C;
  for (std::size_t i = 0; i < rank; ++i) C.basis.push_back({"c" + std::to_string(i), 0, 0});
  C.counit.resize(rank);
  for (auto& e : C.counit) e = rnd();
  while (C.counit[0] == 0) C.counit[0] = rnd();

  // Delta(v) = v (x) u + (anything) (x) ker(eps), with eps(u) = 1
  const std::size_t u = 0;
  const Rational u_coeff = 1 / C.counit[0];
  C.coproduct.resize(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    std::map<std::pair<std::size_t, std::size_t>, Rational> t;
    t[{i, u}] += u_coeff;
    for (std::size_t a = 0; a < rank; ++a)
      for (std::size_t j = 1; j < rank; ++j) {
        const Rational c = rnd();
        if (c == 0) continue;
        // e_a (x) (e_j - eps_j / eps_0 e_0)
        t[{a, j}] += c;
        t[{a, u}] -= c * C.counit[j] / C.counit[0];
      }
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    C.coproduct[i] = std::move(t);
  }
  return C;
}

}  // namespace hochlab
