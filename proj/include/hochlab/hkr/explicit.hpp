#pragma once

#include <map>
#include <string>

#include "hochlab/hkr/forms.hpp"
#include "hochlab/hochschild/chains.hpp"
#include "hochlab/hochschild/cyclic.hpp"
#include "hochlab/hochschild/mixed.hpp"

namespace hochlab {

/**
 * Complexes over Q[x] written down by formula, as mixed complexes whose
 * u-part is B. All of them have rank at most one per degree.
 *
 *   K(n):      e[l,i] in degree -2nl-2i-1, f[l,i] in -2nl-2i (l >= 0, 0 <= i < n)
 *              b f[l,i] = x e[l,i] (x^2 e[l,0] when i = 0 < l)
 *              B f[l,i] = (ln+l+i) e[l,i-1], B f[l,0] = (ln+l)(ln+l-1) e[l-1,n-1]
 *   K_dual(n): the transpose of K, in positive degrees
 *   laurent_dual(n): e[k] in degree -2k (k >= 0), f[k] in 1-2k (k >= 1)
 *              b f[k] = -x^n e[k], B f[k] = -e[k-1]
 *
 * Tensors are {{family, indices...}} with family 0 for e and 1 for f.
 */
MixedComplex explicit_mixed(const std::string& name, int n, int min_degree, int max_degree);

/// CC^- of an explicit complex; the mixed complex is built on the window the
/// policy needs. Throws PreconditionError for unknown names or n < 1.
CyclicComplex instantiate_explicit(const std::string& name, int n, const TruncationPolicy& T);

/// Map of negative cyclic complexes induced by mixed-complex components, in degree t.
SparseMatrix cyclic_component(const CyclicComplex& src, const CyclicComplex& dst,
                              const std::map<int, SparseMatrix>& f, int t);

struct PhiReport {
  ChainMapReport mixed;             // phi against (b, B) and (d + x dt, d_dR)
  std::map<int, bool> cyclic_quasi_iso;  // per degree trusted on both sides
  bool ok() const;
  std::string message() const;
};

/// The map K -> twisted de Rham complex of the curved semi-free algebra,
/// checked exactly and compared on homology and on CC^- homology.
PhiReport verify_phi(int n, const TruncationPolicy& T);

/// phi on one basis element of K, tensor as in explicit_mixed.
AlgebraElement phi_image(const DeRhamData& D, int n, const Chain& tensor);

}  // namespace hochlab
