#include "galloop/cocycles.hpp"

namespace galloop {

TrigPoly omega(const LineGroupElement& g2, const LineGroupElement& g1, Mass m) {
  const Mat3Fn r2 = shift(g2.R, g1.b);
  const Vec3Fn a2 = shift(g2.a, g1.b);
  const Vec3Fn adot2 = shift(g2.adot(), g1.b);
  return 0.5 * m.value() * (dot(a2, r2 * g1.adot()) - dot(adot2, r2 * g1.a));
}

double omega_galilei(const GalileiElement& h2, const GalileiElement& h1, Mass m) {
  const Vec3 r2v1 = h2.R0 * h1.v;
  return 0.5 * m.value() * (dot(h2.a0, r2v1) - dot(h2.v, h2.R0 * h1.a0) + h1.b * dot(h2.v, r2v1));
}

TwoCochain omega_cochain(Mass m) {
  return [m](const LineGroupElement& g2, const LineGroupElement& g1) { return omega(g2, g1, m); };
}

TrigPoly coboundary2(const TwoCochain& w, const LineGroupElement& g3, const LineGroupElement& g2,
                     const LineGroupElement& g1) {
  return shift(w(g3, g2), g1.b) + w(g3 * g2, g1) - w(g2, g1) - w(g3, g2 * g1);
}

ThreeCocycleTerms three_cocycle_terms(const LineGroupElement& g3, const LineGroupElement& g2,
                                      const LineGroupElement& g1, Mass m, bool swapped) {
  const double b1 = g1.b;
  const double b21 = g2.b + g1.b;
  const double half_m = 0.5 * m.value();

  const Vec3Fn r2a1 = shift(g2.R, b1) * g1.a;
  const Vec3Fn r3t_a3 = shift(transpose(g3.R) * g3.a, b21);
  const Vec3Fn a2 = shift(g2.a, b1);

  const auto triple = [swapped](const Vec3Fn& axis, const Vec3Fn& u, const Vec3Fn& w) {
    return swapped ? dot(axis, cross(w, u)) : dot(axis, cross(u, w));
  };
  return {half_m * triple(shift(g2.omega(), b1), r2a1, r3t_a3),
          -half_m * triple(shift(g3.omega(), b21), a2, r2a1)};
}

TrigPoly three_cocycle(const LineGroupElement& g3, const LineGroupElement& g2, const LineGroupElement& g1,
                       Mass m) {
  const auto terms = three_cocycle_terms(g3, g2, g1, m);
  return terms.rotation_of_g2 + terms.rotation_of_g3;
}

ThreeCochain three_cocycle_cochain(Mass m) {
  return [m](const LineGroupElement& g3, const LineGroupElement& g2, const LineGroupElement& g1) {
    return three_cocycle(g3, g2, g1, m);
  };
}

TrigPoly three_cocycle_derived(const LineGroupElement& g3, const LineGroupElement& g2,
                               const LineGroupElement& g1, Mass m) {
  const double b1 = g1.b;
  const double b21 = g2.b + g1.b;
  const Vec3Fn r2a1 = shift(g2.R, b1) * g1.a;
  const Vec3Fn r3t_a3 = shift(transpose(g3.R) * g3.a, b21);
  const Vec3Fn body3 = shift(transpose(g3.R) * g3.omega(), b21);
  return -0.5 * m.value() *
         (dot(shift(g2.omega(), b1), cross(r2a1, r3t_a3)) + dot(body3, cross(shift(g2.a, b1), r2a1)));
}

ThreeCochain three_cocycle_derived_cochain(Mass m) {
  return [m](const LineGroupElement& g3, const LineGroupElement& g2, const LineGroupElement& g1) {
    return three_cocycle_derived(g3, g2, g1, m);
  };
}

TrigPoly three_cocycle_condition(const ThreeCochain& d, const LineGroupElement& g4,
                                 const LineGroupElement& g3, const LineGroupElement& g2,
                                 const LineGroupElement& g1) {
  return shift(d(g4, g3, g2), g1.b) - d(g4, g3, g2 * g1) + d(g4, g3 * g2, g1) - d(g4 * g3, g2, g1) +
         d(g3, g2, g1);
}

}  // namespace galloop
