#include "galloop/linegroup.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace galloop {

Vec3Fn LineGroupElement::omega() const { return angular_velocity(R); }

std::pair<Vec3, double> LineGroupElement::act(const Vec3& x, double t) const {
  return {R.at(t) * x + a.at(t), t + b};
}

LineGroupElement compose(const LineGroupElement& g2, const LineGroupElement& g1) {
  const Mat3Fn r2 = shift(g2.R, g1.b);
  return {r2 * g1.R, shift(g2.a, g1.b) + r2 * g1.a, g2.b + g1.b};
}

LineGroupElement operator*(const LineGroupElement& g2, const LineGroupElement& g1) {
  return compose(g2, g1);
}

LineGroupElement inverse(const LineGroupElement& g) {
  const Mat3Fn rt = shift(transpose(g.R), -g.b);
  return {rt, -(rt * shift(g.a, -g.b)), -g.b};
}

double element_residual(const LineGroupElement& x, const LineGroupElement& y) {
  return std::max({residual_norm(x.R - y.R), residual_norm(x.a - y.a), std::abs(x.b - y.b)});
}

Mat3Fn rotation_about_axis(const Vec3& n, double theta0, double omega) {
  if (std::abs(norm(n) - 1.0) > 1e-12) throw std::invalid_argument("rotation axis must be a unit vector");
  // cos/sin of theta0 + omega t
  const TrigPoly c = TrigPoly::cos_term(0, omega, std::cos(theta0)) +
                     TrigPoly::sin_term(0, omega, -std::sin(theta0));
  const TrigPoly s = TrigPoly::cos_term(0, omega, std::sin(theta0)) +
                     TrigPoly::sin_term(0, omega, std::cos(theta0));
  const TrigPoly one_minus_c = TrigPoly(1.0) - c;
  // R = I + sin K + (1 - cos) K^2 with K the cross-product matrix of n;
  // K^2 = n n^T - I.
  const Mat3 k{0, -n[2], n[1], n[2], 0, -n[0], -n[1], n[0], 0};
  Mat3Fn r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double k2 = n[i] * n[j] - (i == j ? 1.0 : 0.0);
      TrigPoly entry = k[3 * i + j] * s + k2 * one_minus_c;
      if (i == j) entry += TrigPoly(1.0);
      r(i, j) = std::move(entry);
    }
  }
  return r;
}

Vec3Fn angular_velocity(const Mat3Fn& r, double atol) {
  const Mat3Fn w = differentiate(r) * transpose(r);
  if (residual_norm(w + transpose(w)) >= atol) {
    throw std::domain_error("angular_velocity: Rdot R^T is not antisymmetric; input is not a rotation");
  }
  return {{0.5 * (w(2, 1) - w(1, 2)), 0.5 * (w(0, 2) - w(2, 0)), 0.5 * (w(1, 0) - w(0, 1))}};
}

LineGroupElement embed_galilei(const GalileiElement& h) {
  return {Mat3Fn::constant(h.R0), Vec3Fn::constant(h.a0) + Vec3Fn::linear(h.v), h.b};
}

GalileiElement galilei_compose(const GalileiElement& h2, const GalileiElement& h1) {
  // x -> R2 (R1 x + a1 + v1 t) + a2 + v2 (t + b1)
  return {h2.R0 * h1.R0, h2.R0 * h1.v + h2.v, h2.R0 * h1.a0 + h2.a0 + h1.b * h2.v, h2.b + h1.b};
}

bool is_galilei(const LineGroupElement& g) {
  for (const auto& e : g.R.e)
    if (!e.is_constant()) return false;
  for (int i = 0; i < 3; ++i) {
    for (const auto& term : g.a[i].terms()) {
      if (term.omega != 0.0 || term.power > 1) return false;
    }
  }
  return true;
}

GalileiElement to_galilei(const LineGroupElement& g) {
  if (!is_galilei(g)) throw std::domain_error("element is not in the Galilei subgroup");
  GalileiElement h;
  for (int i = 0; i < 9; ++i) h.R0[i] = g.R.e[i].constant_term();
  for (int i = 0; i < 3; ++i) {
    h.a0[i] = g.a[i].constant_term();
    h.v[i] = differentiate(g.a[i]).constant_term();
  }
  h.b = g.b;
  return h;
}

std::string to_string(const LineGroupElement& g) {
  std::string out = "(R = [";
  for (int i = 0; i < 9; ++i) {
    if (i > 0) out += ", ";
    out += to_string(g.R.e[i]);
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, g.b);
  out += "]; a = " + to_string(g.a) + "; b = " + std::string(buf, res.ptr) + ")";
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<TrigPoly> parse_list(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') throw ParseError("expected '[...]' list");
  s = s.substr(1, s.size() - 2);
  std::vector<TrigPoly> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_trigpoly(trim(s.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

std::vector<TrigPoly> parse_trigpoly_list(std::string_view text) { return parse_list(text); }

LineGroupElement parse_line_group_element(std::string_view text) {
  std::string_view s = trim(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("expected '(R = ...; a = ...; b = ...)'");
  s = s.substr(1, s.size() - 2);
  LineGroupElement g;
  bool seen_r = false, seen_a = false, seen_b = false;
  while (!trim(s).empty()) {
    const auto semi = s.find(';');
    const std::string_view field = trim(s.substr(0, semi));
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value' in element text");
    const std::string_view key = trim(field.substr(0, eq));
    const std::string_view value = trim(field.substr(eq + 1));
    if (key == "R") {
      const auto entries = parse_list(value);
      if (entries.size() != 9) throw ParseError("R needs 9 entries");
      for (int i = 0; i < 9; ++i) g.R.e[i] = entries[i];
      seen_r = true;
    } else if (key == "a") {
      const auto entries = parse_list(value);
      if (entries.size() != 3) throw ParseError("a needs 3 entries");
      for (int i = 0; i < 3; ++i) g.a[i] = entries[i];
      seen_a = true;
    } else if (key == "b") {
      const auto res = std::from_chars(value.data(), value.data() + value.size(), g.b);
      if (res.ec != std::errc{} || res.ptr != value.data() + value.size()) throw ParseError("bad b value");
      seen_b = true;
    } else {
      throw ParseError("unknown element field '" + std::string(key) + "'");
    }
    if (semi == std::string_view::npos) break;
    s.remove_prefix(semi + 1);
  }
  if (!seen_r || !seen_a || !seen_b) throw ParseError("element text needs R, a and b");
  if (!is_rotation(g.R)) throw ParseError("R is not a rotation");
  return g;
}

}  // namespace galloop
