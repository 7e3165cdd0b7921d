#include "hochlab/cli/presentation_parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

namespace hochlab {

ParseError::ParseError(int line, int column, const std::string& what)
    : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what), line_(line), column_(column) {}

namespace {

struct Token {
  enum Kind { Ident, Number, Symbol, End } kind = End;
  std::string text;
  int column = 0;
};

std::vector<Token> tokenize(const std::string& line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.column = static_cast<int>(i) + 1;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      t.kind = Token::Ident;
      t.text = line.substr(i, j - i);
      // Q[x] is one token
      if (t.text == "Q" && line.compare(j, 3, "[x]") == 0) {
        t.text = "Q[x]";
        j += 3;
      }
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      t.kind = Token::Number;
      t.text = line.substr(i, j - i);
      i = j;
    } else if (std::string("+-*/^()=").find(c) != std::string::npos) {
      t.kind = Token::Symbol;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw ParseError(lineno, t.column, std::string("unexpected character '") + c + "'");
    }
    out.push_back(t);
  }
  Token end;
  end.column = static_cast<int>(line.size()) + 1;
  out.push_back(end);
  return out;
}

class Cursor {
 public:
  Cursor(std::vector<Token> toks, int lineno) : t_(std::move(toks)), line_(lineno) {}
  const Token& peek() const { return t_[i_]; }
  Token next() {
    Token t = t_[i_];
    if (i_ + 1 < t_.size()) ++i_;
    return t;
  }
  bool at_end() const { return peek().kind == Token::End; }
  bool accept(const std::string& sym) {
    if (peek().kind == Token::Symbol && peek().text == sym) {
      next();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, peek().column, what); }
  [[noreturn]] void fail_at(const Token& t, const std::string& what) const { throw ParseError(line_, t.column, what); }
  void expect(const std::string& sym) {
    if (!accept(sym)) fail("expected '" + sym + "'");
  }
  std::string ident(const std::string& what) {
    if (peek().kind != Token::Ident) fail("expected " + what);
    return next().text;
  }
  long integer(const std::string& what) {
    bool neg = accept("-");
    if (peek().kind != Token::Number) fail("expected " + what);
    const Token t = next();
    if (t.text.size() > 9) fail_at(t, what + " out of range");
    long v = std::stol(t.text);
    return neg ? -v : v;
  }
  void finish() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }
  int line() const { return line_; }

 private:
  std::vector<Token> t_;
  std::size_t i_ = 0;
  int line_;
};

class ExprParser {
 public:
  ExprParser(const DgPresentation& P, Cursor& c) : P_(P), c_(c) {}

  AlgebraElement expr() {
    AlgebraElement acc;
    bool neg = false;
    if (c_.accept("-"))
      neg = true;
    else
      c_.accept("+");
    acc = neg ? -term() : term();
    for (;;) {
      if (c_.accept("+"))
        acc += term();
      else if (c_.accept("-"))
        acc -= term();
      else
        return acc;
    }
  }

 private:
  AlgebraElement term() {
    AlgebraElement acc = factor();
    while (c_.accept("*")) acc = P_.multiply(acc, factor());
    return acc;
  }

  AlgebraElement factor() {
    AlgebraElement base = atom();
    if (!c_.accept("^")) return base;
    if (c_.peek().kind != Token::Number) c_.fail("expected exponent");
    const Token t = c_.next();
    if (t.text.size() > 4) c_.fail_at(t, "exponent too large");
    const int k = std::stoi(t.text);
    AlgebraElement r = P_.unit();
    for (int i = 0; i < k; ++i) r = P_.multiply(r, base);
    return r;
  }

  AlgebraElement atom() {
    const Token t = c_.peek();
    if (c_.accept("(")) {
      AlgebraElement e = expr();
      c_.expect(")");
      return e;
    }
    if (t.kind == Token::Number) {
      c_.next();
      Rational q(t.text);
      if (c_.accept("/")) {
        const Token d = c_.peek();
        if (d.kind != Token::Number) c_.fail("expected denominator");
        c_.next();
        Rational den(d.text);
        if (den == 0) c_.fail_at(d, "division by zero");
        q /= den;
      }
      return P_.scalar(Poly(q));
    }
    if (t.kind == Token::Ident) {
      c_.next();
      if (t.text == "x" && P_.base() == Ring::Polynomial) return P_.scalar(Poly::x());
      for (const auto& g : P_.generators())
        if (g.name == t.text) return P_.gen(t.text);
      c_.fail_at(t, "unknown generator '" + t.text + "'");
    }
    c_.fail("expected a number, generator or '('");
  }

  const DgPresentation& P_;
  Cursor& c_;
};

struct Line {
  int number;
  Cursor cursor;
  Token head;  // the keyword, once consumed
};

}  // namespace

DgPresentation parse_presentation(const std::string& text) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      auto toks = tokenize(raw, n);
      if (toks.size() > 1) lines.push_back({n, Cursor(std::move(toks), n), {}});
    }
  }

  std::optional<Ring> base;
  std::optional<MulKind> kind;
  std::vector<GeneratorSpec> gens;
  std::map<std::string, int> gen_line;
  std::vector<Line*> deferred;

  // pass 1: everything that fixes the generators
  for (auto& L : lines) {
    Cursor& c = L.cursor;
    const Token head = c.peek();
    if (head.kind != Token::Ident) c.fail("expected a keyword");
    const std::string kw = c.next().text;
    L.head = head;
    if (kw == "base") {
      c.expect("=");
      if (base) c.fail_at(head, "base given twice");
      const Token v = c.peek();
      const std::string s = c.ident("Q or Q[x]");
      if (s == "Q")
        base = Ring::Rational;
      else if (s == "Q[x]")
        base = Ring::Polynomial;
      else
        c.fail_at(v, "unknown base '" + s + "'");
      c.finish();
    } else if (kw == "algebra") {
      c.expect("=");
      if (kind) c.fail_at(head, "algebra given twice");
      const Token v = c.peek();
      const std::string s = c.ident("commutative or free");
      if (s == "commutative")
        kind = MulKind::GradedCommutative;
      else if (s == "free")
        kind = MulKind::FreeAssociative;
      else
        c.fail_at(v, "unknown algebra kind '" + s + "'");
      c.finish();
    } else if (kw == "generator") {
      const Token nt = c.peek();
      GeneratorSpec g;
      g.name = c.ident("generator name");
      if (gen_line.count(g.name)) c.fail_at(nt, "generator '" + g.name + "' declared twice (line " + std::to_string(gen_line[g.name]) + ")");
      if (g.name == "x") c.fail_at(nt, "'x' is reserved for the base variable");
      bool have_degree = false;
      std::set<std::string> seen;
      while (!c.at_end()) {
        const Token at = c.peek();
        const std::string key = c.ident("degree, weight or nilpotent");
        if (!seen.insert(key).second) c.fail_at(at, "'" + key + "' given twice");
        if (key == "degree") {
          g.degree = static_cast<int>(c.integer("degree"));
          have_degree = true;
        } else if (key == "weight") {
          g.weight = static_cast<int>(c.integer("weight"));
        } else if (key == "nilpotent") {
          const Token kt = c.peek();
          const long k = c.integer("nilpotency");
          if (k < 1) c.fail_at(kt, "nilpotency must be at least 1");
          g.nilpotency = static_cast<int>(k);
        } else {
          c.fail_at(at, "unknown attribute '" + key + "'");
        }
      }
      if (!have_degree) c.fail("generator '" + g.name + "' needs a degree");
      gen_line[g.name] = L.number;
      gens.push_back(g);
    } else if (kw == "relation") {
      const Token nt = c.peek();
      const std::string name = c.ident("generator name");
      c.expect("^");
      const Token kt = c.peek();
      const long k = c.integer("exponent");
      c.expect("=");
      const Token z = c.peek();
      if (z.kind != Token::Number || z.text != "0") c.fail("only relations NAME^K = 0 are supported");
      c.next();
      c.finish();
      if (k < 1) c.fail_at(kt, "exponent must be at least 1");
      bool found = false;
      for (auto& g : gens)
        if (g.name == name) {
          if (g.nilpotency && *g.nilpotency != k) c.fail_at(nt, "conflicting nilpotency for '" + name + "'");
          g.nilpotency = static_cast<int>(k);
          found = true;
        }
      if (!found) c.fail_at(nt, "relation on undeclared generator '" + name + "'");
    } else if (kw == "d" || kw == "curvature") {
      deferred.push_back(&L);
    } else {
      c.fail_at(head, "unknown keyword '" + kw + "'");
    }
  }

  if (!base) throw ParseError(1, 1, "missing 'base = Q' or 'base = Q[x]'");
  if (!kind) throw ParseError(1, 1, "missing 'algebra = commutative' or 'algebra = free'");
  DgPresentation P(*base, *kind, gens);

  // pass 2: differentials and curvature
  std::map<std::string, int> d_line;
  int curvature_line = 0;
  for (Line* L : deferred) {
    Cursor& c = L->cursor;
    const Token head = L->head;
    if (head.text == "d") {
      const Token nt = c.peek();
      const std::string name = c.ident("generator name");
      if (!gen_line.count(name)) c.fail_at(nt, "unknown generator '" + name + "'");
      if (d_line.count(name)) c.fail_at(head, "d " + name + " given twice");
      c.expect("=");
      const Token et = c.peek();
      AlgebraElement v = ExprParser(P, c).expr();
      c.finish();
      const GeneratorSpec& g = gens[static_cast<std::size_t>(P.generator_index(name))];
      if (!v.is_zero() && !P.is_homogeneous(v, g.degree - 1))
        c.fail_at(et, "d " + name + " must be homogeneous of degree " + std::to_string(g.degree - 1));
      P.set_differential(name, v);
      d_line[name] = L->number;
    } else {
      if (curvature_line) c.fail_at(head, "curvature given twice");
      c.expect("=");
      const Token et = c.peek();
      AlgebraElement h = ExprParser(P, c).expr();
      c.finish();
      if (!h.is_zero() && !P.is_homogeneous(h, -2)) c.fail_at(et, "curvature must be homogeneous of degree -2");
      P.set_curvature(h);
      curvature_line = L->number;
    }
  }

  auto rep = validate_presentation(P);
  if (!rep.ok) {
    int line = curvature_line ? curvature_line : 1;
    if (d_line.count(rep.generator))
      line = d_line[rep.generator];
    else if (gen_line.count(rep.generator))
      line = gen_line[rep.generator];
    throw ParseError(line, 1, rep.message);
  }
  return P;
}

std::string format_presentation(const DgPresentation& P) {
  std::ostringstream os;
  os << "base = " << (P.base() == Ring::Polynomial ? "Q[x]" : "Q") << "\n";
  os << "algebra = " << (P.kind() == MulKind::FreeAssociative ? "free" : "commutative") << "\n";
  for (const auto& g : P.generators()) {
    os << "generator " << g.name << " degree " << g.degree;
    if (g.weight != 0) os << " weight " << g.weight;
    if (g.nilpotency) os << " nilpotent " << *g.nilpotency;
    os << "\n";
  }
  for (std::size_t i = 0; i < P.generators().size(); ++i) {
    auto d = P.generator_differential(static_cast<int>(i));
    if (!d.is_zero()) os << "d " << P.generators()[i].name << " = " << P.to_string(d) << "\n";
  }
  if (!P.curvature().is_zero()) os << "curvature = " << P.to_string(P.curvature()) << "\n";
  return os.str();
}

}  // namespace hochlab
