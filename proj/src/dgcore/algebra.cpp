#include "hochlab/dgcore/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>

#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

namespace {
std::atomic<std::uint64_t> next_id{1};

std::string coeff_prefix(const Poly& c, bool word_is_unit) {
  if (word_is_unit) return c.is_constant() ? c.to_string() : "(" + c.to_string() + ")";
  if (c.is_one()) return "";
  if (c == Poly(-1)) return "-";
  if (c.is_constant()) return c.to_string() + "*";
  return "(" + c.to_string() + ")*";
}
}  // namespace

// ---------------------------------------------------------------- elements

AlgebraElement::AlgebraElement(std::uint64_t owner, std::map<Word, Poly> terms)
    : owner_(owner), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

AlgebraElement AlgebraElement::scalar(const Poly& c, std::uint64_t owner) {
  AlgebraElement e;
  e.owner_ = owner;
  e.add_term({}, c);
  return e;
}

Poly AlgebraElement::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Poly{} : it->second;
}

void AlgebraElement::add_term(const Word& w, const Poly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void AlgebraElement::adopt(std::uint64_t other) {
  if (other == 0) return;
  if (owner_ != 0 && owner_ != other) throw PreconditionError("algebra elements from different presentations");
  owner_ = other;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  adopt(o.owner_);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  adopt(o.owner_);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

AlgebraElement operator*(const Poly& c, const AlgebraElement& a) {
  AlgebraElement r;
  r.owner_ = a.owner_;
  if (c.is_zero()) return r;
  for (const auto& [w, v] : a.terms_) r.terms_.emplace(w, c * v);
  return r;
}

// ------------------------------------------------------------ presentation

DgPresentation::DgPresentation(Ring base, MulKind kind, std::vector<GeneratorSpec> generators)
    : base_(base), kind_(kind), gens_(std::move(generators)), id_(next_id++) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].name.empty()) throw PreconditionError("generator with empty name");
    if (base_ == Ring::Polynomial && gens_[i].name == "x")
      throw PreconditionError("x is the coefficient variable of Q[x] and cannot be a generator");
    if (gens_[i].nilpotency && *gens_[i].nilpotency < 1)
      throw PreconditionError("nilpotency bound of " + gens_[i].name + " must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (gens_[j].name == gens_[i].name) throw PreconditionError("duplicate generator name " + gens_[i].name);
  }
  curvature_ = AlgebraElement(id_, {});
}

int DgPresentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  throw PreconditionError("unknown generator " + name);
}

void DgPresentation::check_owner(const AlgebraElement& a) const {
  if (a.owner() != 0 && a.owner() != id_) throw PreconditionError("element belongs to a different presentation");
  if (base_ == Ring::Rational)
    for (const auto& [w, c] : a.terms())
      if (!c.is_constant()) throw PreconditionError("coefficient " + c.to_string() + " is not in Q");
}

void DgPresentation::set_differential(const std::string& name, AlgebraElement value) {
  check_owner(value);
  d_[generator_index(name)] = AlgebraElement(id_, value.terms());
}

void DgPresentation::set_curvature(AlgebraElement h) {
  check_owner(h);
  curvature_ = AlgebraElement(id_, h.terms());
}

AlgebraElement DgPresentation::generator_differential(int g) const {
  auto it = d_.find(g);
  return it == d_.end() ? AlgebraElement(id_, {}) : it->second;
}

AlgebraElement DgPresentation::unit() const { return AlgebraElement::scalar(1, id_); }
AlgebraElement DgPresentation::scalar(const Poly& c) const {
  AlgebraElement e = AlgebraElement::scalar(c, id_);
  check_owner(e);
  return e;
}
AlgebraElement DgPresentation::gen(const std::string& name) const { return gen(generator_index(name)); }
AlgebraElement DgPresentation::gen(int g) const { return word({g}); }

AlgebraElement DgPresentation::word(const Word& w, const Poly& c) const {
  AlgebraElement e(id_, {});
  auto nf = normalize(w);
  if (nf) e.add_term(nf->second, Poly(nf->first) * c);
  return e;
}

int DgPresentation::degree(const Word& w) const {
  int d = 0;
  for (int g : w) d += gens_.at(static_cast<std::size_t>(g)).degree;
  return d;
}

int DgPresentation::weight(const Word& w) const {
  int d = 0;
  for (int g : w) d += gens_.at(static_cast<std::size_t>(g)).weight;
  return d;
}

std::optional<std::pair<int, Word>> DgPresentation::normalize(const Word& raw) const {
  Word w = raw;
  int sign = 1;
  if (kind_ == MulKind::GradedCommutative) {
    for (std::size_t i = 1; i < w.size(); ++i)
      for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
        if (gens_[static_cast<std::size_t>(w[j - 1])].degree % 2 != 0 &&
            gens_[static_cast<std::size_t>(w[j])].degree % 2 != 0)
          sign = -sign;
        std::swap(w[j - 1], w[j]);
      }
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      const auto& g = gens_[static_cast<std::size_t>(w[i])];
      const int count = static_cast<int>(j - i);
      if (g.degree % 2 != 0 && count > 1) return std::nullopt;
      if (g.nilpotency && count >= *g.nilpotency) return std::nullopt;
      i = j;
    }
  } else {
    for (std::size_t i = 0; i < w.size();) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      const auto& g = gens_[static_cast<std::size_t>(w[i])];
      if (g.nilpotency && static_cast<int>(j - i) >= *g.nilpotency) return std::nullopt;
      i = j;
    }
  }
  return std::make_pair(sign, std::move(w));
}

AlgebraElement DgPresentation::multiply(const AlgebraElement& a, const AlgebraElement& b) const {
  check_owner(a);
  check_owner(b);
  AlgebraElement r(id_, {});
  for (const auto& [w1, c1] : a.terms())
    for (const auto& [w2, c2] : b.terms()) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      auto nf = normalize(w);
      if (nf) r.add_term(nf->second, Poly(nf->first) * c1 * c2);
    }
  return r;
}

AlgebraElement DgPresentation::derivation(const AlgebraElement& a, const std::vector<AlgebraElement>& on_gens,
                                          int parity) const {
  check_owner(a);
  AlgebraElement r(id_, {});
  for (const auto& [w, c] : a.terms()) {
    int before = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const AlgebraElement& dg = on_gens.at(static_cast<std::size_t>(w[i]));
      if (!dg.is_zero()) {
        AlgebraElement left = word(Word(w.begin(), w.begin() + static_cast<long>(i)));
        AlgebraElement right = word(Word(w.begin() + static_cast<long>(i) + 1, w.end()));
        AlgebraElement t = multiply(multiply(left, dg), right);
        r += Poly(koszul_sign(static_cast<long>(parity) * before)) * c * t;
      }
      before += gens_[static_cast<std::size_t>(w[i])].degree;
    }
  }
  return r;
}

AlgebraElement DgPresentation::differential(const AlgebraElement& a) const {
  std::vector<AlgebraElement> dg;
  for (std::size_t g = 0; g < gens_.size(); ++g) dg.push_back(generator_differential(static_cast<int>(g)));
  return derivation(a, dg, 1);
}

std::optional<int> DgPresentation::degree_of(const AlgebraElement& a) const {
  std::optional<int> d;
  for (const auto& [w, c] : a.terms()) {
    int k = degree(w);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d;
}

bool DgPresentation::is_homogeneous(const AlgebraElement& a, int deg) const {
  for (const auto& [w, c] : a.terms())
    if (degree(w) != deg) return false;
  return true;
}

std::string DgPresentation::word_to_string(const Word& w) const {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += gens_.at(static_cast<std::size_t>(w[i])).name;
  }
  return s;
}

std::string DgPresentation::to_string(const AlgebraElement& a) const {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    std::string term = coeff_prefix(c, w.empty()) + (w.empty() ? "" : word_to_string(w));
    if (!first) {
      if (term.front() == '-')
        term = " - " + term.substr(1);
      else
        term = " + " + term;
    }
    s += term;
    first = false;
  }
  return s;
}

std::map<int, std::vector<Word>> DgPresentation::monomial_basis(int lo, int hi, std::optional<int> max_weight) const {
  if (lo > hi) throw PreconditionError("monomial_basis: empty window");
  bool pos = false, neg = false;
  std::vector<int> zero_free;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (g.degree > 0) pos = true;
    if (g.degree < 0) neg = true;
    if (g.degree == 0) {
      if (!g.nilpotency) throw PreconditionError("basis not finite in window: degree-0 generator " + g.name + " has no nilpotency bound");
      zero_free.push_back(static_cast<int>(i));
    }
  }
  if (pos && neg) throw PreconditionError("basis not finite in window: generator degrees of both signs");
  if (kind_ == MulKind::FreeAssociative && zero_free.size() > 1)
    throw PreconditionError("basis not finite in window: several degree-0 generators in a free algebra");
  const int bound = pos ? std::max(hi, 0) : (neg ? std::max(-lo, 0) : 0);

  std::vector<Word> words;
  if (kind_ == MulKind::GradedCommutative) {
    Word cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int absdeg) {
      if (i == gens_.size()) {
        words.push_back(cur);
        return;
      }
      const auto& g = gens_[i];
      int max_e;
      if (g.degree % 2 != 0) max_e = 1;
      else if (g.degree == 0) max_e = *g.nilpotency - 1;
      else max_e = (bound - absdeg) / std::abs(g.degree);
      if (g.nilpotency) max_e = std::min(max_e, *g.nilpotency - 1);
      for (int e = 0; e <= max_e; ++e) {
        const int nd = absdeg + e * std::abs(g.degree);
        if (nd > bound) break;
        for (int k = 0; k < e; ++k) cur.push_back(static_cast<int>(i));
        rec(i + 1, nd);
        for (int k = 0; k < e; ++k) cur.pop_back();
      }
    };
    rec(0, 0);
  } else {
    Word cur;
    std::function<void(int)> rec = [&](int absdeg) {
      words.push_back(cur);
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        const int nd = absdeg + std::abs(g.degree);
        if (nd > bound) continue;
        cur.push_back(static_cast<int>(i));
        if (normalize(cur)) rec(nd);
        cur.pop_back();
      }
    };
    rec(0);
  }
  std::map<int, std::vector<Word>> out;
  for (auto& w : words) {
    const int d = degree(w);
    if (d < lo || d > hi) continue;
    if (max_weight && weight(w) > *max_weight) continue;
    out[d].push_back(std::move(w));
  }
  for (auto& [d, ws] : out)
    std::sort(ws.begin(), ws.end(), [this](const Word& a, const Word& b) {
      const int wa = weight(a), wb = weight(b);
      if (wa != wb) return wa < wb;
      return a < b;
    });
  return out;
}

// -------------------------------------------------------------- validation

ValidationReport validate_presentation(const DgPresentation& P) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& g, const std::string& msg) {
    rep.ok = false;
    rep.generator = g;
    rep.message = msg;
    return rep;
  };
  const auto& gens = P.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    AlgebraElement dg = P.generator_differential(static_cast<int>(i));
    if (!P.is_homogeneous(dg, gens[i].degree - 1))
      return fail(gens[i].name, "d(" + gens[i].name + ") = " + P.to_string(dg) + " is not of degree " +
                                    std::to_string(gens[i].degree - 1));
  }
  const AlgebraElement& h = P.curvature();
  if (!P.is_homogeneous(h, -2)) return fail("", "curvature is not of degree -2");
  if (!P.differential(h).is_zero()) return fail("", "d(h) != 0");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    AlgebraElement g = P.gen(static_cast<int>(i));
    AlgebraElement dd = P.differential(P.differential(g));
    AlgebraElement comm = P.multiply(h, g) - P.multiply(g, h);
    if (dd != comm)
      return fail(gens[i].name, "d^2(" + gens[i].name + ") = " + P.to_string(dd) + " differs from [h, " +
                                    gens[i].name + "] = " + P.to_string(comm));
  }
  return rep;
}

// --------------------------------------------------------------- morphisms

AlgebraMorphism::AlgebraMorphism(const DgPresentation& src, const DgPresentation& dst, std::vector<AlgebraElement> imgs)
    : source(&src), target(&dst), images(std::move(imgs)) {
  if (images.size() != src.generators().size())
    throw PreconditionError("morphism: one image per source generator required");
  if (src.base() != dst.base()) throw PreconditionError("morphism: base rings differ");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& g = src.generators()[i];
    if (images[i].owner() != 0 && images[i].owner() != dst.id())
      throw PreconditionError("morphism: image of " + g.name + " lives in another presentation");
    images[i] = AlgebraElement(dst.id(), images[i].terms());
    if (!dst.is_homogeneous(images[i], g.degree))
      throw PreconditionError("morphism: degree mismatch in assignment of " + g.name);
    for (const auto& [w, c] : images[i].terms())
      if (dst.weight(w) != g.weight) throw PreconditionError("morphism: weight mismatch in assignment of " + g.name);
  }
}

AlgebraMorphism AlgebraMorphism::identity(const DgPresentation& P) {
  std::vector<AlgebraElement> imgs;
  for (std::size_t i = 0; i < P.generators().size(); ++i) imgs.push_back(P.gen(static_cast<int>(i)));
  return AlgebraMorphism(P, P, std::move(imgs));
}

AlgebraElement apply_morphism(const AlgebraMorphism& f, const AlgebraElement& a) {
  if (a.owner() != 0 && a.owner() != f.source->id())
    throw PreconditionError("apply_morphism: element is not in the source presentation");
  const DgPresentation& T = *f.target;
  AlgebraElement r(T.id(), {});
  for (const auto& [w, c] : a.terms()) {
    AlgebraElement prod = T.scalar(c);
    for (int g : w) prod = T.multiply(prod, f.images.at(static_cast<std::size_t>(g)));
    r += prod;
  }
  return r;
}

ValidationReport is_chain_algebra_map(const AlgebraMorphism& f) {
  ValidationReport rep;
  const auto& gens = f.source->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    AlgebraElement lhs = apply_morphism(f, f.source->generator_differential(static_cast<int>(i)));
    AlgebraElement rhs = f.target->differential(f.images[i]);
    if (lhs != rhs) {
      rep.ok = false;
      rep.generator = gens[i].name;
      rep.message = "f(d " + gens[i].name + ") = " + f.target->to_string(lhs) + " but d(f " + gens[i].name +
                    ") = " + f.target->to_string(rhs);
      return rep;
    }
  }
  return rep;
}

}  // namespace hochlab
