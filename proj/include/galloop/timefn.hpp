// Exact arithmetic in the ring of trigonometric polynomials of time.
//
// A TrigPoly is a finite sum  sum_k,w  t^k (c_cos cos(w t) + c_sin sin(w t))
// with w >= 0. Every time-dependent scalar in the library (rotation entries,
// translations, cocycle values, representation phases) lives in this ring,
// which is closed under products, derivatives, antiderivatives and the time
// shift (f)(t) -> f(t + b).
#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace galloop {

/// Thrown when an operation would exceed the degree or term-count limits.
class SymbolicOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the text parser.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrigTerm {
  int power = 0;         // k
  double omega = 0.0;    // w >= 0
  double c_cos = 0.0;
  double c_sin = 0.0;    // always 0 when omega == 0

  friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

enum class AntiderivativeConvention {
  kNoConstant,      // termwise recursion, nothing appended
  kVanishAtZero,    // subtract F(0) so that F(0) = 0
};

class TrigPoly {
 public:
  static constexpr int kMaxDegree = 16;
  static constexpr std::size_t kMaxTerms = 256;
  static constexpr double kDropTol = 1e-14;
  static constexpr double kFreqMergeTol = 1e-12;

  TrigPoly() = default;
  TrigPoly(double c);  // NOLINT: constants convert implicitly

  static TrigPoly t();
  static TrigPoly monomial(int power, double coef = 1.0);
  static TrigPoly cos_term(int power, double omega, double coef = 1.0);
  static TrigPoly sin_term(int power, double omega, double coef = 1.0);
  /// Builds a canonical polynomial from arbitrary (possibly duplicated,
  /// negative-frequency) terms.
  static TrigPoly from_terms(std::span<const TrigTerm> terms);

  std::span<const TrigTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  /// True if the only term is the (k = 0, w = 0) constant (or none).
  bool is_constant() const;
  /// Coefficient of the pure constant term.
  double constant_term() const;
  double max_abs_coefficient() const;

  double operator()(double t) const;

  TrigPoly operator-() const;
  TrigPoly& operator+=(const TrigPoly& o);
  TrigPoly& operator-=(const TrigPoly& o);
  TrigPoly& operator*=(const TrigPoly& o);
  TrigPoly& operator*=(double s);

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(TrigPoly a, double s) { return a *= s; }
  friend TrigPoly operator*(double s, TrigPoly a) { return a *= s; }

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  std::vector<TrigTerm> terms_;  // sorted by (omega, power), canonical
};

TrigPoly add(const TrigPoly& f, const TrigPoly& g);
TrigPoly mul(const TrigPoly& f, const TrigPoly& g);
/// (shift f b)(t) = f(t + b), exact.
TrigPoly shift(const TrigPoly& f, double b);
TrigPoly differentiate(const TrigPoly& f);
TrigPoly antiderivative(
    const TrigPoly& f,
    AntiderivativeConvention conv = AntiderivativeConvention::kNoConstant);
double evaluate(const TrigPoly& f, double t);

/// The 32 deterministic sample times in [-5, 5] used by identity checks.
const std::array<double, 32>& sample_times();

/// max(max |coefficient|, max_i |f(t_i)|) over the sample times.
double residual_norm(const TrigPoly& f);

/// True iff every coefficient of f - g and its value at every sample time
/// are below atol in magnitude.
bool approx_equal(const TrigPoly& f, const TrigPoly& g, double atol = 1e-10);

/// Text form, e.g. "3*t^2 + 0.5*cos(2*t) - 1*t*sin(1*t)". Round-trips
/// exactly through parse_trigpoly.
std::string to_string(const TrigPoly& f);
TrigPoly parse_trigpoly(std::string_view text);

}  // namespace galloop
