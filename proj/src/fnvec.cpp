#include "galloop/fnvec.hpp"

#include <algorithm>
#include <cmath>

namespace galloop {

Vec3Fn Vec3Fn::constant(const Vec3& v) { return {{TrigPoly(v[0]), TrigPoly(v[1]), TrigPoly(v[2])}}; }

Vec3Fn Vec3Fn::linear(const Vec3& v) {
  return {{TrigPoly::monomial(1, v[0]), TrigPoly::monomial(1, v[1]), TrigPoly::monomial(1, v[2])}};
}

Vec3Fn Vec3Fn::operator-() const { return {{-c[0], -c[1], -c[2]}}; }

Vec3Fn& Vec3Fn::operator+=(const Vec3Fn& o) {
  for (int i = 0; i < 3; ++i) c[i] += o.c[i];
  return *this;
}

Vec3Fn& Vec3Fn::operator-=(const Vec3Fn& o) {
  for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
  return *this;
}

Vec3Fn operator*(const TrigPoly& s, const Vec3Fn& v) { return {{s * v.c[0], s * v.c[1], s * v.c[2]}}; }
Vec3Fn operator*(double s, const Vec3Fn& v) { return {{s * v.c[0], s * v.c[1], s * v.c[2]}}; }

Mat3Fn Mat3Fn::identity() {
  Mat3Fn m;
  for (int i = 0; i < 3; ++i) m(i, i) = TrigPoly(1.0);
  return m;
}

Mat3Fn Mat3Fn::constant(const Mat3& a) {
  Mat3Fn m;
  for (int i = 0; i < 9; ++i) m.e[i] = TrigPoly(a[i]);
  return m;
}

Mat3 Mat3Fn::at(double t) const {
  Mat3 m{};
  for (int i = 0; i < 9; ++i) m[i] = e[i](t);
  return m;
}

Mat3Fn operator*(const Mat3Fn& a, const Mat3Fn& b) {
  Mat3Fn m;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      TrigPoly sum;
      for (int k = 0; k < 3; ++k) {
        if (a(r, k).is_zero() || b(k, c).is_zero()) continue;
        sum += a(r, k) * b(k, c);
      }
      m(r, c) = std::move(sum);
    }
  }
  return m;
}

Vec3Fn operator*(const Mat3Fn& a, const Vec3Fn& v) {
  Vec3Fn out;
  for (int r = 0; r < 3; ++r) {
    TrigPoly sum;
    for (int k = 0; k < 3; ++k) {
      if (a(r, k).is_zero() || v[k].is_zero()) continue;
      sum += a(r, k) * v[k];
    }
    out[r] = std::move(sum);
  }
  return out;
}

Mat3Fn operator-(const Mat3Fn& a, const Mat3Fn& b) {
  Mat3Fn m;
  for (int i = 0; i < 9; ++i) m.e[i] = a.e[i] - b.e[i];
  return m;
}

Mat3Fn operator+(const Mat3Fn& a, const Mat3Fn& b) {
  Mat3Fn m;
  for (int i = 0; i < 9; ++i) m.e[i] = a.e[i] + b.e[i];
  return m;
}

TrigPoly dot(const Vec3Fn& a, const Vec3Fn& b) {
  TrigPoly sum;
  for (int i = 0; i < 3; ++i) {
    if (a[i].is_zero() || b[i].is_zero()) continue;
    sum += a[i] * b[i];
  }
  return sum;
}

Vec3Fn cross(const Vec3Fn& a, const Vec3Fn& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

Vec3Fn shift(const Vec3Fn& v, double b) { return {{shift(v[0], b), shift(v[1], b), shift(v[2], b)}}; }

Mat3Fn shift(const Mat3Fn& m, double b) {
  Mat3Fn out;
  for (int i = 0; i < 9; ++i) out.e[i] = shift(m.e[i], b);
  return out;
}

Vec3Fn differentiate(const Vec3Fn& v) {
  return {{differentiate(v[0]), differentiate(v[1]), differentiate(v[2])}};
}

Mat3Fn differentiate(const Mat3Fn& m) {
  Mat3Fn out;
  for (int i = 0; i < 9; ++i) out.e[i] = differentiate(m.e[i]);
  return out;
}

Vec3Fn antiderivative(const Vec3Fn& v, AntiderivativeConvention conv) {
  return {{antiderivative(v[0], conv), antiderivative(v[1], conv), antiderivative(v[2], conv)}};
}

Mat3Fn transpose(const Mat3Fn& m) {
  Mat3Fn out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(c, r) = m(r, c);
  return out;
}

double residual_norm(const Vec3Fn& v) {
  return std::max({residual_norm(v[0]), residual_norm(v[1]), residual_norm(v[2])});
}

double residual_norm(const Mat3Fn& m) {
  double r = 0.0;
  for (const auto& x : m.e) r = std::max(r, residual_norm(x));
  return r;
}

bool approx_equal(const Vec3Fn& a, const Vec3Fn& b, double atol) {
  return residual_norm(a - b) < atol;
}

bool approx_equal(const Mat3Fn& a, const Mat3Fn& b, double atol) {
  return residual_norm(a - b) < atol;
}

bool is_rotation(const Mat3Fn& r, double atol) {
  for (double t : sample_times()) {
    const Mat3 m = r.at(t);
    const Mat3 p = m * transpose(m);
    const Mat3 id = identity3();
    for (int i = 0; i < 9; ++i) {
      if (std::abs(p[i] - id[i]) >= atol) return false;
    }
  }
  return std::abs(det(r.at(0.0)) - 1.0) < atol;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k < 3; ++k) m[3 * r + c] += a[3 * r + k] * b[3 * k + c];
  return m;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  Vec3 out{};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) out[r] += a[3 * r + k] * v[k];
  return out;
}

Mat3 transpose(const Mat3& m) {
  Mat3 out{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out[3 * c + r] = m[3 * r + c];
  return out;
}

Mat3 identity3() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

double det(const Mat3& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

std::string to_string(const Vec3Fn& v) {
  return "[" + to_string(v[0]) + ", " + to_string(v[1]) + ", " + to_string(v[2]) + "]";
}

}  // namespace galloop
