// Three-vectors and 3x3 matrices whose entries are TrigPoly functions of time,
// plus the constant-valued counterparts used for Galilei elements and grids.
#pragma once

#include <array>
#include <string>

#include "galloop/timefn.hpp"

namespace galloop {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;  // row-major

struct Vec3Fn {
  std::array<TrigPoly, 3> c{};

  static Vec3Fn constant(const Vec3& v);
  /// v * t
  static Vec3Fn linear(const Vec3& v);

  TrigPoly& operator[](int i) { return c[i]; }
  const TrigPoly& operator[](int i) const { return c[i]; }

  Vec3 at(double t) const { return {c[0](t), c[1](t), c[2](t)}; }

  Vec3Fn operator-() const;
  Vec3Fn& operator+=(const Vec3Fn& o);
  Vec3Fn& operator-=(const Vec3Fn& o);
  friend Vec3Fn operator+(Vec3Fn a, const Vec3Fn& b) { return a += b; }
  friend Vec3Fn operator-(Vec3Fn a, const Vec3Fn& b) { return a -= b; }
  friend Vec3Fn operator*(const TrigPoly& s, const Vec3Fn& v);
  friend Vec3Fn operator*(double s, const Vec3Fn& v);

  friend bool operator==(const Vec3Fn&, const Vec3Fn&) = default;
};

struct Mat3Fn {
  std::array<TrigPoly, 9> e{};  // row-major

  static Mat3Fn identity();
  static Mat3Fn constant(const Mat3& m);

  TrigPoly& operator()(int r, int col) { return e[3 * r + col]; }
  const TrigPoly& operator()(int r, int col) const { return e[3 * r + col]; }

  Mat3 at(double t) const;

  friend Mat3Fn operator*(const Mat3Fn& a, const Mat3Fn& b);
  friend Vec3Fn operator*(const Mat3Fn& a, const Vec3Fn& v);
  friend Mat3Fn operator-(const Mat3Fn& a, const Mat3Fn& b);
  friend Mat3Fn operator+(const Mat3Fn& a, const Mat3Fn& b);

  friend bool operator==(const Mat3Fn&, const Mat3Fn&) = default;
};

TrigPoly dot(const Vec3Fn& a, const Vec3Fn& b);
Vec3Fn cross(const Vec3Fn& a, const Vec3Fn& b);
Vec3Fn shift(const Vec3Fn& v, double b);
Mat3Fn shift(const Mat3Fn& m, double b);
Vec3Fn differentiate(const Vec3Fn& v);
Mat3Fn differentiate(const Mat3Fn& m);
Vec3Fn antiderivative(const Vec3Fn& v,
                      AntiderivativeConvention conv = AntiderivativeConvention::kNoConstant);
Mat3Fn transpose(const Mat3Fn& m);

double residual_norm(const Vec3Fn& v);
double residual_norm(const Mat3Fn& m);
bool approx_equal(const Vec3Fn& a, const Vec3Fn& b, double atol = 1e-10);
bool approx_equal(const Mat3Fn& a, const Mat3Fn& b, double atol = 1e-10);

/// Pointwise check R(t) R(t)^T = I at the sample times and det R(0) = +1.
bool is_rotation(const Mat3Fn& r, double atol = 1e-10);

// Constant linear algebra.
double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(double s, const Vec3& v);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 transpose(const Mat3& m);
Mat3 identity3();
double det(const Mat3& m);
double norm(const Vec3& v);

std::string to_string(const Vec3Fn& v);

}  // namespace galloop
