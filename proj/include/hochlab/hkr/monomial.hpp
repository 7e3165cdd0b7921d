#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hochlab/hochschild/cyclic.hpp"

namespace hochlab {

/**
 * span{x^i u^j : alpha*i + beta*j + gamma >= 0, i >= floor, j >= min_u_power}
 * with x^i u^j in degree -2j. Each degree is free of rank <= 1 over Q[x],
 * generated by x^{i_min(j)}. Without a floor the x-powers may be negative
 * (a Laurent model), recorded as a valuation rather than a coefficient x^-1.
 */
struct MonomialModel {
  long alpha = 1, beta = 0, gamma = 0;
  std::optional<long> valuation_floor = 0;
  std::optional<long> min_u_power;
  int min_degree = 0, max_degree = 0;

  std::optional<long> i_min(long j) const;
  std::size_t rank(int degree) const;
  std::string to_string() const;
};

/// Throws PreconditionError when alpha <= 0 or the window is empty.
MonomialModel monomial_model(long alpha, long beta, long gamma, std::optional<long> valuation_floor,
                             const TruncationPolicy& T, std::optional<long> min_u_power = {});

/// n i + (n+1) j + n >= 0 with i >= 0.
MonomialModel cn_model(int n, const TruncationPolicy& T);
/// x^{-n} Q[x, u/x^n]: i + n j + n >= 0, j >= 0, no floor.
MonomialModel laurent_model(int n, const TruncationPolicy& T);

struct ModelReport {
  bool ok = true;
  std::size_t degrees_checked = 0;
  std::size_t u_checked = 0;
  std::vector<std::string> mismatches;
};

/// Ranks, absence of torsion and u = c x^e with e = i_min(j) - i_min(j+1),
/// over the trusted degrees of H inside the model window.
ModelReport compare(const CyclicHomology& H, const MonomialModel& M);

/// Region of `a` inside region of `b` in every degree of the window, so generator
/// valuations do not increase from a to b.
ModelReport embeds(const MonomialModel& a, const MonomialModel& b);

}  // namespace hochlab
