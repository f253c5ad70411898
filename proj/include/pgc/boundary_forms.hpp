#pragma once

// Exterior algebra on alpha_{pq} restricted to a boundary stratum where two
// vertices u, v collide: there alpha_{uw} - alpha_{uw0} = alpha_{vw} - alpha_{vw0}
// for all w, w0 distinct from u and v.

#include <vector>

#include "pgc/arnold.hpp"

namespace pgc {

using BoundaryElement = AlphaPolynomial;

BoundaryElement alpha(Label p, Label q, const Rational& c = 1);

/// Normal form on the stratum: every alpha_{uw} with w != w0 is replaced by
/// alpha_{uw0} - alpha_{vw0} + alpha_{vw}, w0 the smallest vertex other than
/// u and v. Throws ArgumentError if fewer than three vertices are declared,
/// if u or v is undeclared, or if a generator uses an undeclared vertex.
BoundaryElement impose_boundary(const BoundaryElement& x, const std::vector<Label>& vertices,
                                Label u, Label v);

/// alpha_uw alpha_ux == (1/2)(alpha_vw - alpha_vx)(alpha_uw + alpha_ux) on the
/// (u, v) stratum. Throws ArgumentError unless u, v, w, x are distinct.
bool check_key_relation(const std::vector<Label>& vertices, Label u, Label v, Label w, Label x);

/// Left minus right side of the expansion of alpha_{1v} ... alpha_{kv}
/// against the u-edges, on vertices {1..k, u, v} with u = k+1, v = k+2.
BoundaryElement boundary_expansion_defect(int k);
bool check_boundary_expansion(int k);

}  // namespace pgc
