#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "hochlab/dgcore/algebra.hpp"
#include "hochlab/hochschild/chains.hpp"
#include "hochlab/hochschild/mixed.hpp"

namespace hochlab {

/**
 * Sym(Omega^1[1]) of a graded-commutative semi-free presentation, as a
 * graded-commutative algebra on the generators g followed by one-forms dg of
 * degree |g| + 1. With the anticommuting convention d(dg) = -d_dR(dg) and
 * (forms, d, d_dR) is a mixed complex; with the commuting one d(dg) = d_dR(dg),
 * which only gives a complex (forms, d).
 */
enum class FormSign { Anticommuting, Commuting };

struct DeRhamData {
  DgPresentation forms;
  std::size_t base_count = 0;
  FormSign sign = FormSign::Anticommuting;

  /// Index of the one-form d<g> among the forms generators.
  int form_generator(int g) const { return static_cast<int>(base_count) + g; }
  /// Number of one-form factors in a word.
  int form_degree(const Word& w) const;
  /// An element of the source presentation, read in the forms algebra.
  AlgebraElement lift(const DgPresentation& source, const AlgebraElement& a) const;
  /// The de Rham derivation g -> dg, dg -> 0 (odd).
  AlgebraElement ddr(const AlgebraElement& a) const;
};

/// Throws PreconditionError for non-commutative input or generators with relations.
DeRhamData kaehler(const DgPresentation& A, FormSign sign = FormSign::Anticommuting);

/// Left multiplication by a closed one-form added to d; no twist when empty.
struct DeRhamTwist {
  std::optional<AlgebraElement> form;
};

/// x * d(gen), the twist of the curved truncated algebras.
DeRhamTwist twist_x_ddr(const DeRhamData& D, const std::string& gen);
/// -d_dR(h) for the curvature h of the source.
DeRhamTwist twist_curvature(const DeRhamData& D, const DgPresentation& source);

/// (forms, d + twist) on the window with words as tensors and weights as blocks; B is left empty.
/// Throws PreconditionError if the twist is not closed or the window is infinite.
MixedComplex de_rham_complex(const DeRhamData& D, const DeRhamTwist& twist, const TruncationPolicy& T);
/// de_rham_complex with B = d_dR; needs the anticommuting convention.
MixedComplex de_rham_mixed(const DeRhamData& D, const DeRhamTwist& twist, const TruncationPolicy& T);

/// Image of a Hochschild chain: (1/k!) a0 d_dR(a1) ... d_dR(ak).
AlgebraElement hkr_image(const DeRhamData& D, const DgPresentation& source, const Chain& c);

/// HKR from a (first or second kind) Hochschild complex of `source` to a de Rham complex.
ChainMapReport hkr_map(const DgPresentation& source, const MixedComplex& M, const DeRhamData& D,
                       const MixedComplex& target, int trust_margin = 2);

}  // namespace hochlab
