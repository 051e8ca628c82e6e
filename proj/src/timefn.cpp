#include "galloop/timefn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

namespace galloop {
namespace {

// Accumulates terms keyed by frequency (merged within kFreqMergeTol) and
// power, then emits the canonical sorted term list.
class TermAccumulator {
 public:
  void add(int power, double omega, double c, double s) {
    if (omega < 0.0) {
      omega = -omega;
      s = -s;
    }
    if (omega <= TrigPoly::kFreqMergeTol) {
      omega = 0.0;
      s = 0.0;
    }
    if (c == 0.0 && s == 0.0) return;
    auto it = blocks_.lower_bound(omega - TrigPoly::kFreqMergeTol);
    if (it == blocks_.end() || it->first > omega + TrigPoly::kFreqMergeTol) {
      it = blocks_.emplace_hint(it, omega, std::vector<std::array<double, 2>>{});
    }
    auto& powers = it->second;
    if (static_cast<std::size_t>(power) >= powers.size()) powers.resize(power + 1, {0.0, 0.0});
    powers[power][0] += c;
    powers[power][1] += s;
  }

  std::vector<TrigTerm> finish() const {
    std::vector<TrigTerm> out;
    for (const auto& [omega, powers] : blocks_) {
      for (std::size_t k = 0; k < powers.size(); ++k) {
        double c = powers[k][0];
        double s = omega == 0.0 ? 0.0 : powers[k][1];
        if (std::abs(c) < TrigPoly::kDropTol) c = 0.0;
        if (std::abs(s) < TrigPoly::kDropTol) s = 0.0;
        if (c == 0.0 && s == 0.0) continue;
        if (static_cast<int>(k) > TrigPoly::kMaxDegree) {
          throw SymbolicOverflow("TrigPoly degree exceeds " + std::to_string(TrigPoly::kMaxDegree));
        }
        out.push_back({static_cast<int>(k), omega, c, s});
      }
    }
    if (out.size() > TrigPoly::kMaxTerms) {
      throw SymbolicOverflow("TrigPoly term count " + std::to_string(out.size()) + " exceeds " +
                             std::to_string(TrigPoly::kMaxTerms));
    }
    return out;
  }

 private:
  std::map<double, std::vector<std::array<double, 2>>> blocks_;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TrigPoly::TrigPoly(double c) {
  if (std::abs(c) >= kDropTol) terms_.push_back({0, 0.0, c, 0.0});
}

TrigPoly TrigPoly::t() { return monomial(1); }

TrigPoly TrigPoly::monomial(int power, double coef) {
  const TrigTerm term{power, 0.0, coef, 0.0};
  return from_terms({&term, 1});
}

TrigPoly TrigPoly::cos_term(int power, double omega, double coef) {
  const TrigTerm term{power, omega, coef, 0.0};
  return from_terms({&term, 1});
}

TrigPoly TrigPoly::sin_term(int power, double omega, double coef) {
  const TrigTerm term{power, omega, 0.0, coef};
  return from_terms({&term, 1});
}

TrigPoly TrigPoly::from_terms(std::span<const TrigTerm> terms) {
  TermAccumulator acc;
  for (const auto& term : terms) {
    if (term.power < 0) throw std::invalid_argument("negative power in TrigPoly term");
    acc.add(term.power, term.omega, term.c_cos, term.c_sin);
  }
  TrigPoly out;
  out.terms_ = acc.finish();
  return out;
}

int TrigPoly::degree() const {
  int d = 0;
  for (const auto& term : terms_) d = std::max(d, term.power);
  return d;
}

bool TrigPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].power == 0 && terms_[0].omega == 0.0);
}

double TrigPoly::constant_term() const {
  if (!terms_.empty() && terms_[0].power == 0 && terms_[0].omega == 0.0) return terms_[0].c_cos;
  return 0.0;
}

double TrigPoly::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& term : terms_) m = std::max({m, std::abs(term.c_cos), std::abs(term.c_sin)});
  return m;
}

double TrigPoly::operator()(double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) {
    double trig = term.c_cos;
    if (term.omega != 0.0) {
      trig = term.c_cos * std::cos(term.omega * t) + term.c_sin * std::sin(term.omega * t);
    }
    sum += std::pow(t, term.power) * trig;
  }
  return sum;
}

TrigPoly TrigPoly::operator-() const {
  TrigPoly out = *this;
  for (auto& term : out.terms_) {
    term.c_cos = -term.c_cos;
    term.c_sin = -term.c_sin;
  }
  return out;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
  std::vector<TrigTerm> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  *this = from_terms(all);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o) { return *this += -o; }

TrigPoly& TrigPoly::operator*=(double s) {
  for (auto& term : terms_) {
    term.c_cos *= s;
    term.c_sin *= s;
  }
  *this = from_terms(terms_);
  return *this;
}

TrigPoly& TrigPoly::operator*=(const TrigPoly& o) {
  *this = *this * o;
  return *this;
}

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  // t^j (c1 cos x + s1 sin x) * t^k (c2 cos y + s2 sin y), x = w1 t, y = w2 t:
  //   cos x cos y = (cos(x-y) + cos(x+y)) / 2
  //   sin x sin y = (cos(x-y) - cos(x+y)) / 2
  //   sin x cos y = (sin(x+y) + sin(x-y)) / 2
  //   cos x sin y = (sin(x+y) - sin(x-y)) / 2
  TermAccumulator acc;
  for (const auto& p : a.terms_) {
    for (const auto& q : b.terms_) {
      const int k = p.power + q.power;
      const double cc = p.c_cos * q.c_cos;
      const double ss = p.c_sin * q.c_sin;
      const double sc = p.c_sin * q.c_cos;
      const double cs = p.c_cos * q.c_sin;
      acc.add(k, p.omega - q.omega, 0.5 * (cc + ss), 0.5 * (sc - cs));
      acc.add(k, p.omega + q.omega, 0.5 * (cc - ss), 0.5 * (sc + cs));
    }
  }
  TrigPoly out;
  out.terms_ = acc.finish();
  return out;
}

TrigPoly add(const TrigPoly& f, const TrigPoly& g) { return f + g; }
TrigPoly mul(const TrigPoly& f, const TrigPoly& g) { return f * g; }

TrigPoly shift(const TrigPoly& f, double b) {
  if (b == 0.0) return f;
  std::vector<TrigTerm> out;
  for (const auto& term : f.terms()) {
    // c cos(w(t+b)) + s sin(w(t+b)) re-expanded in cos(wt), sin(wt).
    const double cb = std::cos(term.omega * b);
    const double sb = std::sin(term.omega * b);
    const double c = term.c_cos * cb + term.c_sin * sb;
    const double s = term.c_sin * cb - term.c_cos * sb;
    // (t + b)^k = sum_j C(k, j) b^(k-j) t^j
    for (int j = 0; j <= term.power; ++j) {
      const double w = binomial(term.power, j) * std::pow(b, term.power - j);
      out.push_back({j, term.omega, w * c, w * s});
    }
  }
  return TrigPoly::from_terms(out);
}

TrigPoly differentiate(const TrigPoly& f) {
  std::vector<TrigTerm> out;
  for (const auto& term : f.terms()) {
    if (term.omega != 0.0) {
      out.push_back({term.power, term.omega, term.omega * term.c_sin, -term.omega * term.c_cos});
    }
    if (term.power > 0) {
      out.push_back({term.power - 1, term.omega, term.power * term.c_cos, term.power * term.c_sin});
    }
  }
  return TrigPoly::from_terms(out);
}

TrigPoly antiderivative(const TrigPoly& f, AntiderivativeConvention conv) {
  std::vector<TrigTerm> out;
  for (const auto& term : f.terms()) {
    if (term.omega == 0.0) {
      out.push_back({term.power + 1, 0.0, term.c_cos / (term.power + 1), 0.0});
      continue;
    }
    // Integration by parts, unrolled:
    //   I_k[c, s] = t^k (c sin - s cos)/w - (k/w) I_{k-1}[-s, c]
    // where I_k[c, s] = int t^k (c cos(wt) + s sin(wt)) dt.
    const double w = term.omega;
    double scale = 1.0;
    double c = term.c_cos;
    double s = term.c_sin;
    for (int k = term.power; k >= 0; --k) {
      out.push_back({k, w, -scale * s / w, scale * c / w});
      scale *= -static_cast<double>(k) / w;
      const double next_c = -s;
      s = c;
      c = next_c;
    }
  }
  TrigPoly result = TrigPoly::from_terms(out);
  if (conv == AntiderivativeConvention::kVanishAtZero) result -= TrigPoly(result(0.0));
  return result;
}

double evaluate(const TrigPoly& f, double t) { return f(t); }

const std::array<double, 32>& sample_times() {
  static const std::array<double, 32> times = [] {
    std::array<double, 32> ts{};
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = -5.0 + 10.0 * static_cast<double>(i) / 31.0;
    return ts;
  }();
  return times;
}

double residual_norm(const TrigPoly& f) {
  double r = f.max_abs_coefficient();
  for (double t : sample_times()) r = std::max(r, std::abs(f(t)));
  return r;
}

bool approx_equal(const TrigPoly& f, const TrigPoly& g, double atol) {
  if (!(atol > 0.0)) throw std::invalid_argument("approx_equal: atol must be positive");
  return residual_norm(f - g) < atol;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void append_term(std::string& out, double coef, int power, const char* fn, double omega) {
  if (out.empty()) {
    if (coef < 0) out += "-";
  } else {
    out += coef < 0 ? " - " : " + ";
  }
  out += format_double(std::abs(coef));
  if (power == 1) out += "*t";
  if (power > 1) out += "*t^" + std::to_string(power);
  if (fn != nullptr) {
    out += "*";
    out += fn;
    out += "(" + format_double(omega) + "*t)";
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  TrigPoly parse() {
    skip_ws();
    if (s_.empty()) throw ParseError("empty TrigPoly expression");
    TrigPoly result;
    double sign = 1.0;
    if (peek() == '-' || peek() == '+') {
      sign = get() == '-' ? -1.0 : 1.0;
    }
    result += sign * term();
    for (skip_ws(); pos_ < s_.size(); skip_ws()) {
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      result += (op == '-' ? -1.0 : 1.0) * term();
    }
    return result;
  }

 private:
  TrigPoly term() {
    TrigPoly product = factor();
    for (skip_ws(); pos_ < s_.size() && peek() == '*'; skip_ws()) {
      ++pos_;
      product *= factor();
    }
    return product;
  }

  TrigPoly factor() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_.substr(pos_, 4) == "cos(" || s_.substr(pos_, 4) == "sin(") {
      const bool is_cos = s_[pos_] == 'c';
      pos_ += 4;
      skip_ws();
      double omega = 1.0;
      if (peek() != 't') {
        omega = number();
        expect('*');
      }
      expect('t');
      expect(')');
      return is_cos ? TrigPoly::cos_term(0, omega) : TrigPoly::sin_term(0, omega);
    }
    if (peek() == 't') {
      ++pos_;
      skip_ws();
      int power = 1;
      if (pos_ < s_.size() && peek() == '^') {
        ++pos_;
        skip_ws();
        const double p = number();
        if (p < 0 || p != std::floor(p)) fail("power must be a non-negative integer");
        power = static_cast<int>(p);
      }
      return TrigPoly::monomial(power);
    }
    return TrigPoly(number());
  }

  double number() {
    skip_ws();
    double v = 0.0;
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{}) fail("expected a number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return v;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const TrigPoly& f) {
  std::string out;
  for (const auto& term : f.terms()) {
    if (term.omega == 0.0) {
      append_term(out, term.c_cos, term.power, nullptr, 0.0);
      continue;
    }
    if (term.c_cos != 0.0) append_term(out, term.c_cos, term.power, "cos", term.omega);
    if (term.c_sin != 0.0) append_term(out, term.c_sin, term.power, "sin", term.omega);
  }
  return out.empty() ? "0" : out;
}

TrigPoly parse_trigpoly(std::string_view text) { return Parser(text).parse(); }

}  // namespace galloop
