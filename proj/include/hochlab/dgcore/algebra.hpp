#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochlab/exactalg/poly.hpp"

namespace hochlab {

/// A monomial as a sequence of generator indices (already in normal form).
using Word = std::vector<int>;

struct GeneratorSpec {
  std::string name;
  int degree = 0;
  int weight = 0;
  /// g^k = 0 for k >= nilpotency (consecutive occurrences in free algebras).
  std::optional<int> nilpotency;
};

enum class MulKind { FreeAssociative, GradedCommutative };

/**
 * Linear combination of normal-form words with coefficients in the base ring.
 * Zero coefficients are never stored.
 */
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(std::uint64_t owner, std::map<Word, Poly> terms);

  static AlgebraElement scalar(const Poly& c, std::uint64_t owner = 0);

  const std::map<Word, Poly>& terms() const { return terms_; }
  std::uint64_t owner() const { return owner_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coeff(const Word& w) const;
  void add_term(const Word& w, const Poly& c);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement operator-() const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Poly& c, const AlgebraElement& a);
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) { return !(a == b); }

 private:
  void adopt(std::uint64_t other);
  std::uint64_t owner_ = 0;  // 0: not tied to a presentation (scalars)
  std::map<Word, Poly> terms_;
};

/**
 * Finitely generated (curved) dg algebra over Q or Q[x]. Over Q[x] the
 * variable x is a central even coefficient, never a generator.
 */
class DgPresentation {
 public:
  DgPresentation(Ring base, MulKind kind, std::vector<GeneratorSpec> generators);

  Ring base() const { return base_; }
  MulKind kind() const { return kind_; }
  std::uint64_t id() const { return id_; }
  const std::vector<GeneratorSpec>& generators() const { return gens_; }
  int generator_index(const std::string& name) const;

  void set_differential(const std::string& name, AlgebraElement value);
  void set_curvature(AlgebraElement h);
  const AlgebraElement& curvature() const { return curvature_; }
  /// d of a generator (zero when unassigned).
  AlgebraElement generator_differential(int g) const;

  AlgebraElement unit() const;
  AlgebraElement gen(const std::string& name) const;
  AlgebraElement gen(int g) const;
  AlgebraElement scalar(const Poly& c) const;
  AlgebraElement word(const Word& w, const Poly& c = 1) const;

  int degree(const Word& w) const;
  int weight(const Word& w) const;
  /// Sign and normal form of a raw product of generators, or nothing if zero.
  std::optional<std::pair<int, Word>> normalize(const Word& raw) const;

  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  AlgebraElement differential(const AlgebraElement& a) const;
  /// Extends a degree-`parity` derivation given on generators (Koszul signs).
  AlgebraElement derivation(const AlgebraElement& a, const std::vector<AlgebraElement>& on_gens, int parity) const;

  /// Homogeneous degree, or nothing for zero / inhomogeneous elements.
  std::optional<int> degree_of(const AlgebraElement& a) const;
  bool is_homogeneous(const AlgebraElement& a, int degree) const;

  std::string word_to_string(const Word& w) const;
  std::string to_string(const AlgebraElement& a) const;

  /// Normal-form words with degree in [lo, hi] (and weight <= max_weight if given),
  /// grouped by degree, ordered by (degree, weight, word).
  std::map<int, std::vector<Word>> monomial_basis(int lo, int hi, std::optional<int> max_weight = {}) const;

 private:
  void check_owner(const AlgebraElement& a) const;

  Ring base_;
  MulKind kind_;
  std::vector<GeneratorSpec> gens_;
  std::map<int, AlgebraElement> d_;
  AlgebraElement curvature_;
  std::uint64_t id_;
};

struct ValidationReport {
  bool ok = true;
  std::string generator;  // first offending generator, empty if none
  std::string message;
};

ValidationReport validate_presentation(const DgPresentation& P);

struct AlgebraMorphism {
  const DgPresentation* source = nullptr;
  const DgPresentation* target = nullptr;
  std::vector<AlgebraElement> images;  // indexed by source generator

  /// Checks degrees and weights of the images; throws PreconditionError.
  AlgebraMorphism(const DgPresentation& src, const DgPresentation& dst, std::vector<AlgebraElement> imgs);
  static AlgebraMorphism identity(const DgPresentation& P);
};

AlgebraElement apply_morphism(const AlgebraMorphism& f, const AlgebraElement& a);
ValidationReport is_chain_algebra_map(const AlgebraMorphism& f);

inline int koszul_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace hochlab
