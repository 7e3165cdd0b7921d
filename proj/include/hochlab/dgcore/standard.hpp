#pragma once

#include "hochlab/dgcore/algebra.hpp"

namespace hochlab::standard {

/// Q[x]<y_1..y_n>, |y_i| = 2i-1, d y_1 = x, d y_{i+1} = sum_{j=1}^{i} y_j y_{i+1-j}.
DgPresentation c_algebra(int n);
/// Q[x]/x^n over Q, x of degree 0.
DgPresentation truncated_polynomial(int n);
/// Q[x,t]/t^{n+1} over Q[x], |t| = -2, curvature -x*t.
DgPresentation curved_truncated(int n);
/// Q[x,t,xi] over Q[x], |t| = -2, |xi| = -2n-1, d xi = t^{n+1}, curvature -x*t.
/// Weights w(t) = 1, w(xi) = n+1.
DgPresentation curved_semifree(int n);
/// Q[x,xi] over Q[x], |xi| = 1, d xi = x^n.
DgPresentation koszul_point(int n);

}  // namespace hochlab::standard
