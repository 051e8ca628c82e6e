#include "galloop/lineloop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace galloop {

LoopElement loop_compose(const LoopElement& x2, const LoopElement& x1, Mass m) {
  return {shift(x2.phi, x1.g.b) + x1.phi + (1.0 / m.value()) * omega(x2.g, x1.g, m), x2.g * x1.g};
}

double loop_residual(const LoopElement& x, const LoopElement& y) {
  return std::max(residual_norm(x.phi - y.phi), element_residual(x.g, y.g));
}

LoopElement right_divide(const LoopElement& z, const LoopElement& y, Mass m) {
  // a * y = z:  g_a = g_z g_y^-1,  S_{b_y} phi_a = phi_z - phi_y - omega(g_a, g_y)/m
  LineGroupElement ga = z.g * inverse(y.g);
  TrigPoly rhs = z.phi - y.phi - (1.0 / m.value()) * omega(ga, y.g, m);
  return {shift(rhs, -y.g.b), std::move(ga)};
}

LoopElement left_divide(const LoopElement& y, const LoopElement& z, Mass m) {
  // y * x = z:  g_x = g_y^-1 g_z,  phi_x = phi_z - S_{b_x} phi_y - omega(g_y, g_x)/m
  LineGroupElement gx = inverse(y.g) * z.g;
  TrigPoly phi = z.phi - shift(y.phi, gx.b) - (1.0 / m.value()) * omega(y.g, gx, m);
  return {std::move(phi), std::move(gx)};
}

LoopElement left_inverse(const LoopElement& x, Mass m) { return right_divide(LoopElement::identity(), x, m); }

LoopElement right_inverse(const LoopElement& x, Mass m) { return left_divide(x, LoopElement::identity(), m); }

LoopElement associator(const LoopElement& x3, const LoopElement& x2, const LoopElement& x1, Mass m) {
  const LoopElement right_first = loop_compose(x3, loop_compose(x2, x1, m), m);
  const LoopElement left_first = loop_compose(loop_compose(x3, x2, m), x1, m);
  LoopElement a = right_divide(right_first, left_first, m);
  if (loop_residual(loop_compose(a, left_first, m), right_first) > 1e-8) {
    throw std::logic_error("associator: right division failed to recompose");
  }
  return a;
}

LoopElement associator_closed_form(const LoopElement& x3, const LoopElement& x2, const LoopElement& x1,
                                   Mass m) {
  const double b = x3.g.b + x2.g.b + x1.g.b;
  const TrigPoly d = three_cocycle_derived(x3.g, x2.g, x1.g, m);
  return {shift((-1.0 / m.value()) * d, -b), LineGroupElement::identity()};
}

LoopElement associator_unshifted(const LoopElement& x3, const LoopElement& x2, const LoopElement& x1,
                                 Mass m) {
  const TrigPoly d = coboundary2(omega_cochain(m), x3.g, x2.g, x1.g);
  return {(1.0 / m.value()) * d, LineGroupElement::identity()};
}

CentralExtElement central_compose(const CentralExtElement& y2, const CentralExtElement& y1, Mass m) {
  return {y2.phi + y1.phi + omega_galilei(y2.h, y1.h, m) / m.value(), galilei_compose(y2.h, y1.h)};
}

CentralExtElement reduce_to_central(const LoopElement& x) {
  if (!x.phi.is_constant()) throw std::domain_error("reduce_to_central: phi depends on time");
  return {x.phi.constant_term(), to_galilei(x.g)};
}

LoopElement embed_central(const CentralExtElement& y) { return {TrigPoly(y.phi), embed_galilei(y.h)}; }

}  // namespace galloop
