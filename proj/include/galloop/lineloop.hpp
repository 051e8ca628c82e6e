// The loop prolongation of the Galilean line group by scalar functions of
// time: pairs (phi, g) with the non-associative product
//   (phi2, g2)(phi1, g1) = (S_{b1} phi2 + phi1 + omega(g2, g1)/m, g2 g1).
#pragma once

#include "galloop/cocycles.hpp"

namespace galloop {

struct LoopElement {
  TrigPoly phi;
  LineGroupElement g;

  static LoopElement identity() { return {}; }
};

/// Element of the Bargmann central extension of the Galilei group.
struct CentralExtElement {
  double phi = 0.0;
  GalileiElement h;
};

LoopElement loop_compose(const LoopElement& x2, const LoopElement& x1, Mass m);

/// Residual of two loop elements as functions.
double loop_residual(const LoopElement& x, const LoopElement& y);

/// The unique a with a * y = z.
LoopElement right_divide(const LoopElement& z, const LoopElement& y, Mass m);
/// The unique x with y * x = z.
LoopElement left_divide(const LoopElement& y, const LoopElement& z, Mass m);

/// l with l * x = e.
LoopElement left_inverse(const LoopElement& x, Mass m);
/// r with x * r = e.
LoopElement right_inverse(const LoopElement& x, Mass m);

/// A(x3, x2, x1) defined by x3 (x2 x1) = A [(x3 x2) x1], obtained by right
/// division and verified by recomposition (throws std::logic_error if the
/// recomposed product misses by more than 1e-8).
LoopElement associator(const LoopElement& x3, const LoopElement& x2, const LoopElement& x1, Mass m);

/// Closed form of the associator under the product above:
///   A = ( -(1/m) S_{-(b3+b2+b1)} (d omega)(g3, g2, g1), e ).
/// The shift and sign follow from placing A on the left in the defining
/// relation; d omega is evaluated with three_cocycle_derived.
LoopElement associator_closed_form(const LoopElement& x3, const LoopElement& x2, const LoopElement& x1,
                                   Mass m);

/// ((1/m) d omega, e) with no shift or sign change, d omega from coboundary2.
/// Kept to report how far the unshifted form is from the true associator.
LoopElement associator_unshifted(const LoopElement& x3, const LoopElement& x2, const LoopElement& x1,
                                 Mass m);

CentralExtElement central_compose(const CentralExtElement& y2, const CentralExtElement& y1, Mass m);

/// Throws std::domain_error unless x.g is Galilei and x.phi is constant.
CentralExtElement reduce_to_central(const LoopElement& x);
LoopElement embed_central(const CentralExtElement& y);

}  // namespace galloop
