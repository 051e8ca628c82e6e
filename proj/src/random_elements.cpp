#include "galloop/random_elements.hpp"

#include <cmath>
#include <numbers>

namespace galloop {

double ElementSampler::grid_frequency(bool allow_zero) {
  while (true) {
    const double w = 0.5 * uniform_int(-4, 4);
    if (allow_zero || w != 0.0) return w;
  }
}

Vec3 ElementSampler::unit_vector() {
  std::normal_distribution<double> n(0.0, 1.0);
  while (true) {
    const Vec3 v{n(rng_), n(rng_), n(rng_)};
    const double len = norm(v);
    if (len > 1e-3) return (1.0 / len) * v;
  }
}

Vec3 ElementSampler::vector(double scale) {
  return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

Mat3 ElementSampler::constant_rotation() {
  return rotation_about_axis(unit_vector(), uniform(0.0, 2.0 * std::numbers::pi), 0.0).at(0.0);
}

Mat3Fn ElementSampler::rotation() {
  const int factors = uniform_int(1, 2);
  Mat3Fn r = Mat3Fn::identity();
  for (int i = 0; i < factors; ++i) {
    r = r * rotation_about_axis(unit_vector(), uniform(0.0, 2.0 * std::numbers::pi), grid_frequency());
  }
  return r;
}

Mat3Fn ElementSampler::time_dependent_rotation() {
  Mat3Fn r = rotation_about_axis(unit_vector(), uniform(0.0, 2.0 * std::numbers::pi), grid_frequency(false));
  if (uniform_int(0, 1) == 1) {
    r = r * rotation_about_axis(unit_vector(), uniform(0.0, 2.0 * std::numbers::pi), grid_frequency());
  }
  return r;
}

Vec3Fn ElementSampler::translation() {
  Vec3Fn a;
  const int degree = uniform_int(0, 3);
  const double nu = 0.5 * uniform_int(1, 4);
  for (int i = 0; i < 3; ++i) {
    TrigPoly p;
    for (int k = 0; k <= degree; ++k) p += TrigPoly::monomial(k, uniform(-1.0, 1.0));
    p += TrigPoly::cos_term(0, nu, uniform(-1.0, 1.0)) + TrigPoly::sin_term(0, nu, uniform(-1.0, 1.0));
    a[i] = std::move(p);
  }
  return a;
}

LineGroupElement ElementSampler::element() {
  Mat3Fn r = rotation();
  Vec3Fn a = translation();
  return {std::move(r), std::move(a), uniform(-1.0, 1.0)};
}

LineGroupElement ElementSampler::element_with_rotating_frame() {
  Mat3Fn r = time_dependent_rotation();
  Vec3Fn a = translation();
  return {std::move(r), std::move(a), uniform(-1.0, 1.0)};
}

LineGroupElement ElementSampler::constant_rotation_element() {
  const Mat3 r = constant_rotation();
  Vec3Fn a = translation();
  return {Mat3Fn::constant(r), std::move(a), uniform(-1.0, 1.0)};
}

GalileiElement ElementSampler::galilei() {
  GalileiElement h;
  h.R0 = constant_rotation();
  h.v = vector();
  h.a0 = vector();
  h.b = uniform(-1.0, 1.0);
  return h;
}

Vec3Fn ElementSampler::velocity_label() {
  switch (uniform_int(0, 2)) {
    case 0:
      return Vec3Fn::constant(vector());
    case 1: {
      Vec3Fn q = Vec3Fn::constant(vector());
      return q + Vec3Fn::linear(vector());
    }
    default: {
      const double nu = 0.5 * uniform_int(1, 4);
      Vec3Fn q = Vec3Fn::constant(vector());
      for (int i = 0; i < 3; ++i) q[i] += TrigPoly::cos_term(0, nu, uniform(-1.0, 1.0));
      return q;
    }
  }
}

}  // namespace galloop
