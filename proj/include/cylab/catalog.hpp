#ifndef CYLAB_CATALOG_HPP
#define CYLAB_CATALOG_HPP

#include "cylab/derivation.hpp"

namespace cylab::catalog {

// Parameter gates. Threefold families need d >= 1, l >= 2; the contractible
// fourfold family needs d >= 2 and 2 <= l < k with k, l coprime.
void require_surface_params(int d, int l);
void require_contractible_params(int d, int k, int l);

// f_{d,l} = y^l + x - x^d z over an ambient containing x, y, z.
Polynomial defining_poly(const AmbientPtr& amb, int d, int l);

// Q[x,y,z] localized at f_{d,l}; inverse variable "wf".
RingPtr open_complement(int d, int l);
// Same threefold presented over the punctured t-line:
// Q[x,y,z][t^{+-1}] / (x^d z - y^l - x + t); inverse variable "ti".
RingPtr open_complement_t(int d, int l);
// The closed fiber surface X^d Z = Y^l + X - 1.
RingPtr fiber_surface(int d, int l);
// Its product with the punctured line, Laurent variable u ("ui" inverse).
RingPtr fiber_surface_star(int d, int l);
// Base change of the open complement along u -> t = u^l:
// Q[x,y,z][u^{+-1}] / (x^d z - y^l - x + u^l).
RingPtr open_complement_cover(int d, int l);
// Cylinder over the contractible threefold:
// Q[x,y,z,t,v] / (y^l + x - x^d z - t^k).
RingPtr contractible_cylinder(int d, int k, int l);
// Plain Q[x,y,z,v].
RingPtr affine_four_space();

// x^d d/dy + l y^{l-1} d/dz on any presentation with generators x, y, z.
Derivation vertical_lnd(const RingPtr& ring, int d, int l);
// l y^{l-1} d/dx + (z - 1) d/dy on the d = 1 open complement.
Derivation second_lnd(const RingPtr& ring, int l);
// u^{ld-1} (X^d d/dY + l Y^{l-1} d/dZ) on the covered surface product.
Derivation lifted_lnd(const RingPtr& ring, int d, int l);

// Isomorphism between the base-changed open complement and the surface
// product: (X,Y,Z,u) -> (u^l X, u Y, u^{(1-d)l} Z, u) as a pullback pair.
RingMap cover_trivialization(const RingPtr& source_cover, const RingPtr& target_star, int d,
                             int l);
RingMap cover_trivialization_inverse(const RingPtr& source_star, const RingPtr& target_cover,
                                     int d, int l);

// The cyclic group action on the surface product: (X, Y, Z, u) scaled by
// (1, zeta^{-1}, 1, zeta); inverse variable weights follow.
MonomialGroupAction deck_action_star(const RingPtr& star, int l);
// Deck action on the base-changed presentation: only u moves.
MonomialGroupAction deck_action_cover(const RingPtr& cover, int l);

// Finite cover projection Q[x,y,z,v] -> O(contractible cylinder).
RingMap branched_cover(const RingPtr& four_space, const RingPtr& cylinder);

}  // namespace cylab::catalog

#endif
