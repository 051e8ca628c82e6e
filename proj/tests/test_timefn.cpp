#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "galloop/timefn.hpp"

using namespace galloop;

namespace {

const double pi = std::numbers::pi;

TrigPoly random_poly(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<int> pw(0, 2), wi(0, 4), n(1, 4);
  TrigPoly f(c(rng));
  for (int i = n(rng); i > 0; --i) {
    const double w = 0.5 * wi(rng);
    f += (i % 2 ? TrigPoly::cos_term(pw(rng), w, c(rng)) : TrigPoly::sin_term(pw(rng), w, c(rng)));
  }
  return f;
}

// Pointwise agreement at random times: the oracle for closed-form results.
bool pointwise_equal(const TrigPoly& f, const std::function<double(double)>& g, int n = 64, double atol = 1e-10) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(-5.0, 5.0);
  for (int i = 0; i < n; ++i) {
    const double x = t(rng);
    if (std::abs(f(x) - g(x)) > atol * (1.0 + std::abs(g(x)))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("timefn: addition merges like terms") {
  CHECK((TrigPoly::t() + (-TrigPoly::t())).is_zero());
  const TrigPoly c = TrigPoly::cos_term(0, 1.0);
  CHECK(c + c == TrigPoly::cos_term(0, 1.0, 2.0));
  const TrigPoly lhs = (TrigPoly::monomial(2) + TrigPoly::sin_term(0, 3.0)) + TrigPoly::monomial(2, 2.0);
  CHECK(lhs == TrigPoly::monomial(2, 3.0) + TrigPoly::sin_term(0, 3.0));
}

TEST_CASE("timefn: products") {
  const TrigPoly c = TrigPoly::cos_term(0, 1.0);
  CHECK(approx_equal(c * c, TrigPoly(0.5) + TrigPoly::cos_term(0, 2.0, 0.5), 1e-14));
  const TrigPoly ts = TrigPoly::t() * TrigPoly::sin_term(0, 1.0);
  REQUIRE(ts.size() == 1);
  CHECK(ts.terms()[0].power == 1);
  CHECK(ts.terms()[0].omega == 1.0);
  const TrigPoly p = TrigPoly::sin_term(0, 2.0) * TrigPoly::cos_term(0, 3.0);
  CHECK(approx_equal(p, TrigPoly::sin_term(0, 5.0, 0.5) - TrigPoly::sin_term(0, 1.0, 0.5), 1e-14));
  CHECK(pointwise_equal(p, [](double t) { return std::sin(2 * t) * std::cos(3 * t); }));
}

TEST_CASE("timefn: shift") {
  CHECK(approx_equal(shift(TrigPoly::t(), 2.0), TrigPoly::t() + 2.0, 1e-14));
  std::mt19937_64 rng(1);
  const TrigPoly f = random_poly(rng);
  CHECK(shift(f, 0.0) == f);
  CHECK(approx_equal(shift(TrigPoly::cos_term(0, 1.0), pi / 2), -TrigPoly::sin_term(0, 1.0), 1e-14));
  CHECK(pointwise_equal(shift(f, 0.7), [&](double t) { return f(t + 0.7); }));
}

TEST_CASE("timefn: differentiate") {
  CHECK(differentiate(TrigPoly::monomial(2)) == TrigPoly::monomial(1, 2.0));
  CHECK(approx_equal(differentiate(TrigPoly::sin_term(0, 1.5)), TrigPoly::cos_term(0, 1.5, 1.5), 1e-14));
  const TrigPoly f = TrigPoly::cos_term(1, 2.0);
  CHECK(approx_equal(differentiate(f), TrigPoly::cos_term(0, 2.0) - TrigPoly::sin_term(1, 2.0, 2.0), 1e-14));
  CHECK(differentiate(TrigPoly(4.0)).is_zero());
}

TEST_CASE("timefn: antiderivative") {
  CHECK(antiderivative(TrigPoly(3.0)) == TrigPoly::monomial(1, 3.0));
  CHECK(approx_equal(antiderivative(TrigPoly::cos_term(0, 2.0)), TrigPoly::sin_term(0, 2.0, 0.5), 1e-14));
  const TrigPoly f = TrigPoly::sin_term(1, 1.0);
  const TrigPoly F = antiderivative(f);
  CHECK(approx_equal(F, TrigPoly::sin_term(0, 1.0) - TrigPoly::cos_term(1, 1.0), 1e-14));
  CHECK(approx_equal(differentiate(F), f, 1e-12));
  // No constant is appended: int sin t = -cos t, which is -1 at t = 0.
  CHECK(antiderivative(TrigPoly::sin_term(0, 1.0))(0.0) == doctest::Approx(-1.0));
  const TrigPoly G = antiderivative(TrigPoly::sin_term(0, 1.0), AntiderivativeConvention::kVanishAtZero);
  CHECK(std::abs(G(0.0)) < 1e-15);
}

TEST_CASE("timefn: evaluate") {
  CHECK(evaluate(TrigPoly::monomial(2) + 1.0, 2.0) == doctest::Approx(5.0));
  CHECK(evaluate(TrigPoly::sin_term(0, 1.0), 0.0) == 0.0);
  CHECK(evaluate(TrigPoly::cos_term(0, 3.0, 2.0), pi) == doctest::Approx(-2.0));
}

TEST_CASE("timefn: approx_equal") {
  const TrigPoly c = TrigPoly::cos_term(0, 1.0), s = TrigPoly::sin_term(0, 1.0);
  CHECK(approx_equal(c * c + s * s, TrigPoly(1.0), 1e-12));
  CHECK_FALSE(approx_equal(TrigPoly::t(), TrigPoly::t() + 1e-6, 1e-12));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const TrigPoly f = random_poly(rng);
    const double b = std::uniform_real_distribution<double>(-2, 2)(rng);
    CHECK(approx_equal(shift(shift(f, b), -b), f, 1e-12));
  }
}

TEST_CASE("timefn: ring and shift properties on random polynomials") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> bd(-1.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    const TrigPoly f = random_poly(rng), g = random_poly(rng), h = random_poly(rng);
    const double b = bd(rng);
    CHECK(approx_equal((f * g) * h, f * (g * h), 1e-10));
    CHECK(approx_equal(f * (g + h), f * g + f * h, 1e-10));
    CHECK(approx_equal(shift(f * g, b), shift(f, b) * shift(g, b), 1e-10));
    CHECK(approx_equal(shift(f + g, b), shift(f, b) + shift(g, b), 1e-10));
    CHECK(approx_equal(differentiate(antiderivative(f)), f, 1e-12));
    CHECK(approx_equal(shift(differentiate(f), b), differentiate(shift(f, b)), 1e-10));
    CHECK(pointwise_equal(f * g, [&](double t) { return f(t) * g(t); }));
  }
}

TEST_CASE("timefn: text round trip and parse errors") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const TrigPoly f = random_poly(rng);
    CHECK(parse_trigpoly(to_string(f)) == f);
  }
  const TrigPoly g = parse_trigpoly("3*t^2 + 0.5*cos(2*t) - 1*t*sin(1*t)");
  CHECK(pointwise_equal(g, [](double t) { return 3 * t * t + 0.5 * std::cos(2 * t) - t * std::sin(t); }));
  CHECK(parse_trigpoly("0").is_zero());
  CHECK_THROWS_AS(parse_trigpoly("3*t^"), ParseError);
  CHECK_THROWS_AS(parse_trigpoly("cos(2*x)"), ParseError);
  CHECK_THROWS_AS(parse_trigpoly(""), ParseError);
}

TEST_CASE("timefn: canonical form and limits") {
  // Negative frequencies fold onto w >= 0: cos(-2t) = cos 2t, sin(-2t) = -sin 2t.
  const TrigTerm terms[] = {{0, -2.0, 1.0, 1.0}};
  CHECK(approx_equal(TrigPoly::from_terms(terms), TrigPoly::cos_term(0, 2.0) - TrigPoly::sin_term(0, 2.0), 1e-15));
  CHECK_THROWS_AS(TrigPoly::monomial(TrigPoly::kMaxDegree + 1), SymbolicOverflow);
  CHECK_THROWS_AS(TrigPoly::monomial(9) * TrigPoly::monomial(9), SymbolicOverflow);
  TrigPoly many;
  for (int i = 0; i < 100; ++i) many += TrigPoly::cos_term(0, 0.01 * (i + 1));
  TrigPoly other;
  for (int i = 0; i < 100; ++i) other += TrigPoly::sin_term(0, 1.37 * (i + 1));
  CHECK_THROWS_AS(many * other, SymbolicOverflow);
}
