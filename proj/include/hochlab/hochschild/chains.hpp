#pragma once

#include <map>
#include <optional>
#include <string>

#include "hochlab/dgcore/algebra.hpp"
#include "hochlab/hochschild/mixed.hpp"

namespace hochlab {

enum class TruncationStyle {
  Subcomplex,  // top u-level restricted to ker B, a genuine subcomplex of C[[u]]
  Quotient     // C[[u]]/u^N
};

struct TruncationPolicy {
  int min_degree = 0;
  int max_degree = 0;
  /// Number of u-levels kept (powers u^0 .. u^{N-1}).
  int u_order = 4;
  int trust_margin = 2;
  std::optional<int> weight_bound;
  TruncationStyle style = TruncationStyle::Subcomplex;
  /// Also drop the length-0 unit chain (1), i.e. reduce against the augmentation.
  bool drop_unit = false;

  /// Throws PreconditionError on an empty window, N < 1 or m < 1.
  void check() const;
};

using ChainVector = std::map<Chain, Poly>;

void add_to(ChainVector& v, const Chain& c, const Poly& coeff);

/**
 * b and B on reduced Hochschild chains of a presentation. Bar entries are
 * nonempty words; a unit produced in a bar slot is dropped.
 */
class HochschildOps {
 public:
  HochschildOps(const DgPresentation& A, bool with_curvature);

  int degree(const Chain& c) const;
  int weight(const Chain& c) const;
  std::string label(const Chain& c) const;

  ChainVector b(const Chain& c) const;
  ChainVector B(const Chain& c) const;
  ChainVector b(const ChainVector& v) const;
  ChainVector B(const ChainVector& v) const;

 private:
  const DgPresentation& A_;
  bool curvature_;
};

/// Chains with total degree in the window, per degree, sorted by (weight, length, entries).
std::map<int, std::vector<Chain>> hochschild_chains(const DgPresentation& P, const TruncationPolicy& T);

/// Reduced first-kind mixed complex; throws PreconditionError for curved input.
MixedComplex hochschild_mixed(const DgPresentation& P, const TruncationPolicy& T);

/// b = b_m2 + b_m1 + b_m0 with the curvature insertions.
MixedComplex hochschild_second_kind(const DgPresentation& P, const TruncationPolicy& T);

/**
 * Cone(Omega -> A) for a semi-free presentation. Basis: words w (tensor {w})
 * and one-forms w*d(g) (tensor {w, {g}}) of degree |w| + |g| + 1.
 */
class NaiveOps {
 public:
  explicit NaiveOps(const DgPresentation& A) : A_(A) {}

  int degree(const Chain& e) const;
  std::string label(const Chain& e) const;
  /// a0 * d_dR(word) written in the basis w*d(g).
  ChainVector omega_of_ddr(const Word& word, const Word& a0 = {}) const;
  ChainVector D(const Chain& e) const;
  ChainVector B(const Chain& e) const;

 private:
  const DgPresentation& A_;
};

MixedComplex naive_hochschild(const DgPresentation& P, const TruncationPolicy& T);

struct ChainMapReport {
  bool chain_map = true;
  std::optional<int> first_failing_degree;
  std::string message;
  /// Component in each source degree.
  std::map<int, SparseMatrix> components;
  /// Per trusted degree: whether the induced map on homology is an isomorphism.
  std::map<int, bool> quasi_iso;
  bool quasi_isomorphism() const;
};

/// Checks f b = b f and f B = B f degreewise; fills chain_map, first_failing_degree, message.
void check_mixed_map(const MixedComplex& src, const MixedComplex& dst, ChainMapReport& rep);

/// Compares homology degreewise through the components (trusted degrees only).
void compare_homology(const MixedComplex& src, const MixedComplex& dst, ChainMapReport& rep, int trust_margin);

/// (a0) -> a0, (a0|a1) -> (-1)^{|a0|} a0 d_dR(a1), longer chains -> 0.
ChainMapReport comparison_map(const DgPresentation& P, const MixedComplex& M, const MixedComplex& Nv,
                              int trust_margin = 2);

/// Map of Hochschild complexes induced by an algebra map, entrywise on tensors.
ChainMapReport induced_chain_map(const AlgebraMorphism& f, const MixedComplex& src, const MixedComplex& dst);

}  // namespace hochlab
