// The function-valued two-cochain omega on the Galilean line group, its
// coboundary, the closed-form three-cocycle, and the Galilei reduction.
//
// Convention: hbar = 1, phases are dimensionless, the mass is the only scale.
// The coboundary carries the shift action on the left argument:
//   (d w)(g3, g2, g1) = S_{b1} w(g3, g2) + w(g3 g2, g1) - w(g2, g1) - w(g3, g2 g1)
#pragma once

#include <functional>
#include <stdexcept>

#include "galloop/linegroup.hpp"

namespace galloop {

class Mass {
 public:
  explicit Mass(double m) : m_(m) {
    if (!(m > 0.0)) throw std::invalid_argument("mass must be positive");
  }
  double value() const { return m_; }

 private:
  double m_;
};

using TwoCochain = std::function<TrigPoly(const LineGroupElement&, const LineGroupElement&)>;
using ThreeCochain =
    std::function<TrigPoly(const LineGroupElement&, const LineGroupElement&, const LineGroupElement&)>;

/// omega(g2, g1) = (m/2) [ (S a2) . (S R2) adot1 - (S adot2) . (S R2) a1 ],
/// S the shift by b1.
TrigPoly omega(const LineGroupElement& g2, const LineGroupElement& g1, Mass m);

/// The Bargmann two-cocycle on constant Galilei parameters:
/// (m/2) (a2 . R2 v1 - v2 . R2 a1 + b1 v2 . R2 v1).
double omega_galilei(const GalileiElement& h2, const GalileiElement& h1, Mass m);

TwoCochain omega_cochain(Mass m);

TrigPoly coboundary2(const TwoCochain& w, const LineGroupElement& g3, const LineGroupElement& g2,
                     const LineGroupElement& g1);

/// The two cross-product pieces of the closed-form three-cocycle. Each one
/// is a triple product Omega . (u x w); `swapped` exchanges u and w.
struct ThreeCocycleTerms {
  TrigPoly rotation_of_g2;  // (m/2) S_{b1} Omega2 . (S_{b1}R2 a1 x S_{b2+b1}(R3^T a3))
  TrigPoly rotation_of_g3;  // -(m/2) S_{b2+b1} Omega3 . (S_{b1} a2 x S_{b1}R2 a1)
};
ThreeCocycleTerms three_cocycle_terms(const LineGroupElement& g3, const LineGroupElement& g2,
                                      const LineGroupElement& g1, Mass m, bool swapped = false);

/// Closed form of d omega exactly as customarily printed:
///   (m/2) S_{b1}Omega2 . (S_{b1}R2 a1 x S_{b2+b1}(R3^T a3))
///   - (m/2) S_{b2+b1}Omega3 . (S_{b1}a2 x S_{b1}R2 a1).
/// It does not agree with coboundary2(omega); see three_cocycle_derived.
TrigPoly three_cocycle(const LineGroupElement& g3, const LineGroupElement& g2, const LineGroupElement& g1,
                       Mass m);

ThreeCochain three_cocycle_cochain(Mass m);

/// Closed form that does equal coboundary2(omega) identically:
///   -(m/2) [ S_{b1}Omega2 . (S_{b1}R2 a1 x S_{b2+b1}(R3^T a3))
///          + S_{b2+b1}(R3^T Omega3) . (S_{b1}a2 x S_{b1}R2 a1) ]
/// R3^T Omega3 is the body-frame angular velocity of R3.
TrigPoly three_cocycle_derived(const LineGroupElement& g3, const LineGroupElement& g2,
                               const LineGroupElement& g1, Mass m);

ThreeCochain three_cocycle_derived_cochain(Mass m);

/// Level-three coboundary with the same shift action:
///   S_{b1} d(g4,g3,g2) - d(g4,g3,g2 g1) + d(g4,g3 g2,g1) - d(g4 g3,g2,g1) + d(g3,g2,g1)
TrigPoly three_cocycle_condition(const ThreeCochain& d, const LineGroupElement& g4,
                                 const LineGroupElement& g3, const LineGroupElement& g2,
                                 const LineGroupElement& g1);

}  // namespace galloop
