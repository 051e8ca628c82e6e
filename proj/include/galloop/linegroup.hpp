// The Galilean line group: time-dependent rotations R(t), translations a(t)
// and time shifts b, acting on spacetime as x' = R(t) x + a(t), t' = t + b.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "galloop/fnvec.hpp"

namespace galloop {

struct LineGroupElement {
  Mat3Fn R = Mat3Fn::identity();
  Vec3Fn a{};
  double b = 0.0;

  static LineGroupElement identity() { return {}; }
  static LineGroupElement translation(Vec3Fn a) { return {Mat3Fn::identity(), std::move(a), 0.0}; }
  static LineGroupElement rotation(Mat3Fn r) { return {std::move(r), Vec3Fn{}, 0.0}; }
  static LineGroupElement time_shift(double b) { return {Mat3Fn::identity(), Vec3Fn{}, b}; }

  Vec3Fn adot() const { return differentiate(a); }
  /// Angular velocity of R; throws std::domain_error if R is not a rotation.
  Vec3Fn omega() const;

  /// Applies the transformation to the spacetime point (x, t).
  std::pair<Vec3, double> act(const Vec3& x, double t) const;
};

/// Constant-coefficient element of the Galilei subgroup: R(t) = R0,
/// a(t) = a0 + v t.
struct GalileiElement {
  Mat3 R0 = identity3();
  Vec3 v{};
  Vec3 a0{};
  double b = 0.0;

  static GalileiElement identity() { return {}; }
  static GalileiElement boost(const Vec3& v) { return {identity3(), v, {}, 0.0}; }
  static GalileiElement translation(const Vec3& a0) { return {identity3(), {}, a0, 0.0}; }
};

/// Group law: (R2, a2, b2)(R1, a1, b1) =
///   ((S R2) R1, S a2 + (S R2) a1, b2 + b1),  S = shift by b1.
LineGroupElement compose(const LineGroupElement& g2, const LineGroupElement& g1);
LineGroupElement operator*(const LineGroupElement& g2, const LineGroupElement& g1);
LineGroupElement inverse(const LineGroupElement& g);

/// Residual of two elements as functions: max over R, a entries and |b2 - b1|.
double element_residual(const LineGroupElement& x, const LineGroupElement& y);

/// Rotation about the unit axis n by the angle theta0 + omega t (Rodrigues).
Mat3Fn rotation_about_axis(const Vec3& n, double theta0, double omega);

/// Omega such that Omega x a = Rdot R^T a, read off the antisymmetric part
/// of Rdot R^T. Throws std::domain_error when the symmetric part exceeds atol.
Vec3Fn angular_velocity(const Mat3Fn& r, double atol = 1e-9);

LineGroupElement embed_galilei(const GalileiElement& h);
/// Galilei composition written directly on the constant parameters.
GalileiElement galilei_compose(const GalileiElement& h2, const GalileiElement& h1);

/// True when R is constant and a is at most linear in t.
bool is_galilei(const LineGroupElement& g);
/// Reads back the constant parameters; throws std::domain_error otherwise.
GalileiElement to_galilei(const LineGroupElement& g);

/// "(R = [9 entries]; a = [3 entries]; b = <real>)"
std::string to_string(const LineGroupElement& g);
LineGroupElement parse_line_group_element(std::string_view text);
/// "[f1, f2, ...]" with TrigPoly entries.
std::vector<TrigPoly> parse_trigpoly_list(std::string_view text);

}  // namespace galloop
