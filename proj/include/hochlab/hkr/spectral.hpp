#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochlab/exactalg/free_complex.hpp"
#include "hochlab/hkr/forms.hpp"
#include "hochlab/hochschild/cyclic.hpp"

namespace hochlab {

/**
 * A complex with a decreasing filtration given by a level per basis element:
 * F^p is spanned by the basis elements of level >= p, and d never lowers the level.
 */
struct FiltrationData {
  FreeComplex complex;
  std::map<int, std::vector<int>> level;  // per degree, per basis element

  /// Throws PreconditionError when a level is missing or d lowers one.
  void check() const;
  int min_level() const;
  int max_level() const;
};

/// Number of one-form factors (the symmetric-power degree) of each word.
FiltrationData form_filtration(const DeRhamData& D, const MixedComplex& M);
/// The block tags (weights) as levels.
FiltrationData weight_filtration(const FreeComplex& C);
/// The power of u as level.
FiltrationData u_filtration(const CyclicComplex& C);

/// Base change along Q[x] -> Q, x -> at.
FreeComplex evaluate_at(const FreeComplex& C, const Rational& at);
FiltrationData evaluate_at(const FiltrationData& F, const Rational& at);

struct PageEntry {
  std::size_t free_rank = 0;
  std::vector<Poly> torsion;
  bool trusted = true;
  std::size_t size() const { return free_rank + torsion.size(); }
  bool is_zero() const { return size() == 0; }
};

/// E_r^{p,k} for level p and total degree k, with d_r : E_r^{p,k} -> E_r^{p+r,k-1}.
struct Page {
  int r = 1;
  std::map<std::pair<int, int>, PageEntry> entries;
  /// In generator coordinates (free generators first, then torsion); empty maps omitted.
  std::map<std::pair<int, int>, SparseMatrix> d;
  /// Whether d_r vanishes between trusted bidegrees.
  bool d_zero = true;

  /// Sum over levels of the entries in total degree k.
  std::size_t total_size(int k) const;
};

struct SpectralSequence {
  Ring ring = Ring::Rational;
  std::vector<Page> pages;  // r = 1 .. r_max
  /// Smallest r with d_s = 0 for r <= s <= r_max, when r_max exceeds the filtration length.
  std::optional<int> degenerates_at;

  const Page& page(int r) const;
};

/**
 * Pages E_r = Z_r / (Z_{r-1}^{p+1} + B_{r-1}) for r = 1 .. r_max, exactly over
 * the ring of the complex. Degrees closer than trust_margin to a window edge
 * are marked untrusted.
 */
SpectralSequence spectral_sequence(const FiltrationData& F, int r_max, int trust_margin = 1);

/// a + c with c in F^{p+1} such that d(a + c) lies in F^{p+r}, if any.
std::optional<Vector> lift_to_page(const FiltrationData& F, int r, int p, int k, const Vector& a);
/// Class of an element of Z_r^p in E_r^{p,k}, in generator coordinates.
Vector page_class(const FiltrationData& F, int r, int p, int k, const Vector& a);

struct D2Report {
  bool lifted = false;          // t^n dxi^l survives to E_2
  bool target_nonzero = false;  // x^2 dt dxi^(l+1) is nonzero on E_2
  bool matches = false;         // d_2 of the first is `coefficient` times the second
  std::string message;
};

/**
 * d_2 on the form-degree filtration of (forms of the curved semi-free algebra,
 * d + x dt), evaluated on the class of t^n dxi^l and compared with
 * coefficient * x^2 dt dxi^(l+1), exactly over Q[x].
 */
D2Report g_filtration_d2(int n, int l, const Rational& coefficient, FormSign sign);

}  // namespace hochlab
