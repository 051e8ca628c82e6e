#include "galloop/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <vector>

#include "galloop/random_elements.hpp"

namespace galloop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix_seed(std::uint64_t seed, const std::string& name) {
  // FNV-1a over the check name, folded into the configured seed, so every
  // check draws the same samples regardless of which other checks run.
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Collects checks for one suite.
class Suite {
 public:
  Suite(const VerifyConfig& cfg, std::string name) : cfg_(cfg), start_(std::chrono::steady_clock::now()) {
    report_.suite = std::move(name);
  }

  int count(int fallback) const { return cfg_.samples.value_or(fallback); }
  double tol(double fallback) const { return cfg_.atol.value_or(fallback); }
  Mass mass() const { return Mass(cfg_.mass); }
  PhaseConventions conv() const { return {cfg_.time_shift_sign}; }
  Exec exec() const { return cfg_.exec; }
  const VerifyConfig& config() const { return cfg_; }
  ElementSampler sampler(const std::string& check) const { return ElementSampler(mix_seed(cfg_.seed, check)); }

  /// Max of fn over samples; exceptions count as an infinite residual and
  /// are reported as findings.
  template <typename Sample, typename Fn>
  double max_residual(const std::string& check, const std::vector<Sample>& samples, Fn&& fn) {
    const auto n = static_cast<std::ptrdiff_t>(samples.size());
    std::vector<double> res(samples.size(), 0.0);
    std::vector<std::string> errors(samples.size());
    const auto body = [&](std::ptrdiff_t i) {
      try {
        res[i] = fn(samples[i]);
      } catch (const std::exception& e) {
        res[i] = kInf;
        errors[i] = e.what();
      }
    };
    if (cfg_.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    } else {
      for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      if (std::isnan(res[i])) res[i] = kInf;
      worst = std::max(worst, res[i]);
      if (!errors[i].empty()) {
        finding(check, "sample " + std::to_string(i) + " raised: " + errors[i]);
      }
    }
    return worst;
  }

  void record(const std::string& check, int n, double residual, double atol) {
    report_.checks.push_back(CheckRecord::make(check, n, residual, atol));
  }

  template <typename Sample, typename Fn>
  double run(const std::string& check, const std::vector<Sample>& samples, double atol, Fn&& fn) {
    const double r = max_residual(check, samples, std::forward<Fn>(fn));
    record(check, static_cast<int>(samples.size()), r, tol(atol));
    return r;
  }

  nlohmann::json& data() { return report_.data; }

  void finding(std::string topic, std::string detail) { report_.findings.push_back({std::move(topic), std::move(detail)}); }

  Report finish() {
    report_.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(report_);
  }

 private:
  const VerifyConfig& cfg_;
  std::chrono::steady_clock::time_point start_;
  Report report_;
};

TrigPoly random_trigpoly(ElementSampler& s, int max_terms = 3) {
  TrigPoly f(s.uniform(-1.0, 1.0));
  const int terms = s.uniform_int(1, max_terms);
  for (int i = 0; i < terms; ++i) {
    const int power = s.uniform_int(0, 2);
    const double w = s.grid_frequency();
    f += s.uniform_int(0, 1) ? TrigPoly::cos_term(power, w, s.uniform(-1.0, 1.0))
                             : TrigPoly::sin_term(power, w, s.uniform(-1.0, 1.0));
  }
  return f;
}

LoopElement random_loop_element(ElementSampler& s) {
  TrigPoly phi = random_trigpoly(s, 2);
  return {std::move(phi), s.element()};
}

LoopElement random_galilei_loop_element(ElementSampler& s) {
  return {TrigPoly(s.uniform(-1.0, 1.0)), embed_galilei(s.galilei())};
}

WavepacketState random_state(ElementSampler& s, Mass m) {
  WavepacketState st(m);
  const int kets = s.uniform_int(1, 3);
  double total = 0.0;
  for (int i = 0; i < kets; ++i) {
    const Complex amp(s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0));
    total += std::norm(amp);
    st.terms.push_back({VelocityLabel::from_velocity(s.velocity_label()), amp, TrigPoly{}});
  }
  for (auto& k : st.terms) k.amplitude /= std::sqrt(total);
  return st;
}

/// Rotating-frame label |q> = U(R)|q0> with boost R q0 t.
VelocityLabel rotating_label(const Mat3Fn& R, const Vec3& q0) {
  return {rotating_frame_velocity(R, q0), R * Vec3Fn::linear(q0)};
}

struct Triple {
  LineGroupElement g3, g2, g1;
};

struct LoopTriple {
  LoopElement x3, x2, x1;
};

}  // namespace

Report verify_timefn(const VerifyConfig& cfg) {
  Suite s(cfg, "timefn");
  {
    const std::string name = "timefn.ring_identities";
    auto rng = s.sampler(name);
    std::vector<std::array<TrigPoly, 3>> samples;
    for (int i = 0; i < s.count(200); ++i) samples.push_back({random_trigpoly(rng), random_trigpoly(rng), random_trigpoly(rng)});
    s.run(name, samples, 1e-9, [](const std::array<TrigPoly, 3>& p) {
      const auto& [f, g, h] = p;
      double r = residual_norm((f * g) * h - f * (g * h));
      r = std::max(r, residual_norm(f * (g + h) - (f * g + f * h)));
      r = std::max(r, residual_norm(differentiate(f * g) - (differentiate(f) * g + f * differentiate(g))));
      r = std::max(r, residual_norm(differentiate(antiderivative(f)) - f));
      return r;
    });
  }
  {
    const std::string name = "timefn.shift_automorphism";
    auto rng = s.sampler(name);
    std::vector<std::tuple<TrigPoly, TrigPoly, double, double>> samples;
    for (int i = 0; i < s.count(200); ++i) {
      samples.emplace_back(random_trigpoly(rng), random_trigpoly(rng), rng.uniform(-2, 2), rng.uniform(-2, 2));
    }
    s.run(name, samples, 1e-9, [](const auto& p) {
      const auto& [f, g, b, c] = p;
      double r = residual_norm(shift(f * g, b) - shift(f, b) * shift(g, b));
      r = std::max(r, residual_norm(shift(shift(f, b), c) - shift(f, b + c)));
      r = std::max(r, residual_norm(shift(differentiate(f), b) - differentiate(shift(f, b))));
      return r;
    });
  }
  {
    const std::string name = "timefn.text_roundtrip";
    auto rng = s.sampler(name);
    std::vector<TrigPoly> samples;
    for (int i = 0; i < s.count(200); ++i) samples.push_back(random_trigpoly(rng));
    s.run(name, samples, 1e-15, [](const TrigPoly& f) {
      return parse_trigpoly(to_string(f)) == f ? 0.0 : residual_norm(parse_trigpoly(to_string(f)) - f) + 1e-300;
    });
  }
  return s.finish();
}

Report verify_linegroup(const VerifyConfig& cfg) {
  Suite s(cfg, "linegroup");
  {
    const std::string name = "linegroup.associativity";
    auto rng = s.sampler(name);
    std::vector<Triple> samples;
    for (int i = 0; i < s.count(500); ++i) samples.push_back({rng.element(), rng.element(), rng.element()});
    s.run(name, samples, 1e-10, [](const Triple& t) {
      return element_residual((t.g3 * t.g2) * t.g1, t.g3 * (t.g2 * t.g1));
    });
  }
  {
    const std::string name = "linegroup.inverse";
    auto rng = s.sampler(name);
    std::vector<LineGroupElement> samples;
    for (int i = 0; i < s.count(200); ++i) samples.push_back(rng.element());
    s.run(name, samples, 1e-10, [](const LineGroupElement& g) {
      const LineGroupElement e = LineGroupElement::identity();
      return std::max(element_residual(g * inverse(g), e), element_residual(inverse(g) * g, e));
    });
  }
  {
    const std::string name = "linegroup.rotation_closure";
    auto rng = s.sampler(name);
    std::vector<std::pair<LineGroupElement, LineGroupElement>> samples;
    for (int i = 0; i < s.count(200); ++i) samples.emplace_back(rng.element(), rng.element());
    s.run(name, samples, 1e-10, [](const auto& p) {
      const Mat3Fn r = (p.first * p.second).R;
      return residual_norm(transpose(r) * r - Mat3Fn::identity());
    });
  }
  {
    const std::string name = "linegroup.galilei_embedding";
    auto rng = s.sampler(name);
    std::vector<std::pair<GalileiElement, GalileiElement>> samples;
    for (int i = 0; i < s.count(500); ++i) samples.emplace_back(rng.galilei(), rng.galilei());
    s.run(name, samples, 1e-10, [](const auto& p) {
      return element_residual(embed_galilei(p.first) * embed_galilei(p.second),
                              embed_galilei(galilei_compose(p.first, p.second)));
    });
  }
  {
    const std::string name = "linegroup.text_roundtrip";
    auto rng = s.sampler(name);
    std::vector<LineGroupElement> samples;
    for (int i = 0; i < s.count(100); ++i) samples.push_back(rng.element());
    s.run(name, samples, 1e-12, [](const LineGroupElement& g) {
      return element_residual(parse_line_group_element(to_string(g)), g);
    });
  }
  return s.finish();
}

Report verify_cocycles(const VerifyConfig& cfg) {
  Suite s(cfg, "cocycles");
  const Mass m = s.mass();
  {
    const std::string name = "cocycles.galilei_reduction";
    auto rng = s.sampler(name);
    std::vector<std::pair<GalileiElement, GalileiElement>> samples;
    for (int i = 0; i < s.count(500); ++i) samples.emplace_back(rng.galilei(), rng.galilei());
    s.run(name, samples, 1e-10, [m](const auto& p) {
      const TrigPoly w = omega(embed_galilei(p.first), embed_galilei(p.second), m);
      const double expect = omega_galilei(p.first, p.second, m);
      // Must be constant and equal as constants.
      return residual_norm(w - TrigPoly(expect));
    });
  }
  std::vector<Triple> triples;
  {
    auto rng = s.sampler("cocycles.triples");
    for (int i = 0; i < s.count(200); ++i) triples.push_back({rng.element(), rng.element(), rng.element()});
  }
  const double printed = s.run("cocycles.three_cocycle_printed", triples, 1e-9, [m](const Triple& t) {
    return residual_norm(coboundary2(omega_cochain(m), t.g3, t.g2, t.g1) - three_cocycle(t.g3, t.g2, t.g1, m));
  });
  const double derived = s.run("cocycles.three_cocycle_derived", triples, 1e-9, [m](const Triple& t) {
    return residual_norm(coboundary2(omega_cochain(m), t.g3, t.g2, t.g1) -
                         three_cocycle_derived(t.g3, t.g2, t.g1, m));
  });
  {
    const std::string name = "cocycles.constant_rotation_two_cocycle";
    auto rng = s.sampler(name);
    std::vector<Triple> samples;
    for (int i = 0; i < s.count(200); ++i) {
      samples.push_back({rng.constant_rotation_element(), rng.constant_rotation_element(),
                         rng.constant_rotation_element()});
    }
    s.run(name, samples, 1e-9, [m](const Triple& t) {
      return residual_norm(coboundary2(omega_cochain(m), t.g3, t.g2, t.g1));
    });
  }
  {
    const std::string name = "cocycles.level3";
    auto rng = s.sampler(name);
    std::vector<std::array<LineGroupElement, 4>> samples;
    for (int i = 0; i < s.count(100); ++i) samples.push_back({rng.element(), rng.element(), rng.element(), rng.element()});
    s.run("cocycles.level3_printed", samples, 1e-9, [m](const auto& g) {
      return residual_norm(three_cocycle_condition(three_cocycle_cochain(m), g[0], g[1], g[2], g[3]));
    });
    s.run("cocycles.level3_derived", samples, 1e-9, [m](const auto& g) {
      return residual_norm(three_cocycle_condition(three_cocycle_derived_cochain(m), g[0], g[1], g[2], g[3]));
    });
  }
  s.finding("three-cocycle closed form",
            "coboundary of omega vs printed closed form: max residual " + fmt(printed) +
                "; vs derived form -(m/2)[S_b1 Omega2.(S_b1 R2 a1 x S_b2+b1 R3^T a3) + "
                "S_b2+b1 (R3^T Omega3).(S_b1 a2 x S_b1 R2 a1)]: " + fmt(derived));
  return s.finish();
}

Report verify_lineloop(const VerifyConfig& cfg) {
  Suite s(cfg, "lineloop");
  const Mass m = s.mass();
  std::vector<LoopTriple> triples;
  {
    auto rng = s.sampler("lineloop.triples");
    for (int i = 0; i < s.count(200); ++i) {
      triples.push_back({random_loop_element(rng), random_loop_element(rng), random_loop_element(rng)});
    }
  }
  const double printed = s.run("lineloop.associator_printed", triples, 1e-9, [m](const LoopTriple& t) {
    return loop_residual(associator(t.x3, t.x2, t.x1, m), associator_unshifted(t.x3, t.x2, t.x1, m));
  });
  const double derived = s.run("lineloop.associator_derived", triples, 1e-9, [m](const LoopTriple& t) {
    return loop_residual(associator(t.x3, t.x2, t.x1, m), associator_closed_form(t.x3, t.x2, t.x1, m));
  });
  s.finding("associator closed form",
            "associator from x3(x2x1) = A[(x3x2)x1] vs ((1/m) d omega, e): max residual " + fmt(printed) +
                "; vs (-(1/m) S_-(b1+b2+b3) d omega, e): " + fmt(derived));
  {
    const std::string name = "lineloop.galilei_associator_identity";
    auto rng = s.sampler(name);
    std::vector<LoopTriple> samples;
    for (int i = 0; i < s.count(200); ++i) {
      samples.push_back({random_galilei_loop_element(rng), random_galilei_loop_element(rng),
                         random_galilei_loop_element(rng)});
    }
    s.run(name, samples, 1e-9, [m](const LoopTriple& t) {
      return loop_residual(associator(t.x3, t.x2, t.x1, m), LoopElement::identity());
    });
  }
  {
    const std::string name = "lineloop.division";
    auto rng = s.sampler(name);
    std::vector<std::pair<LoopElement, LoopElement>> samples;
    for (int i = 0; i < s.count(200); ++i) samples.emplace_back(random_loop_element(rng), random_loop_element(rng));
    s.run(name, samples, 1e-9, [m](const auto& p) {
      const auto& [y, z] = p;
      double r = loop_residual(loop_compose(right_divide(z, y, m), y, m), z);
      r = std::max(r, loop_residual(loop_compose(y, left_divide(y, z, m), m), z));
      r = std::max(r, loop_residual(loop_compose(left_inverse(y, m), y, m), LoopElement::identity()));
      r = std::max(r, loop_residual(loop_compose(y, right_inverse(y, m), m), LoopElement::identity()));
      return r;
    });
  }
  {
    const std::string name = "lineloop.central_extension_reduction";
    auto rng = s.sampler(name);
    std::vector<std::pair<CentralExtElement, CentralExtElement>> samples;
    for (int i = 0; i < s.count(200); ++i) {
      samples.push_back({{rng.uniform(-1, 1), rng.galilei()}, {rng.uniform(-1, 1), rng.galilei()}});
    }
    s.run(name, samples, 1e-10, [m](const auto& p) {
      const CentralExtElement expect = central_compose(p.first, p.second, m);
      const LoopElement got = loop_compose(embed_central(p.first), embed_central(p.second), m);
      return loop_residual(got, embed_central(expect));
    });
  }
  return s.finish();
}

Report verify_galrep(const VerifyConfig& cfg) {
  Suite s(cfg, "galrep");
  const Mass m = s.mass();
  const PhaseConventions conv = s.conv();
  {
    const std::string name = "galrep.unitarity";
    auto rng = s.sampler(name);
    std::vector<std::pair<LoopElement, WavepacketState>> samples;
    for (int i = 0; i < s.count(100); ++i) samples.emplace_back(random_loop_element(rng), random_state(rng, m));
    s.run(name, samples, 1e-12, [conv](const auto& p) {
      return std::abs(apply(p.first, p.second, conv).norm2() - p.second.norm2());
    });
  }
  {
    const std::string name = "galrep.composition_law";
    auto rng = s.sampler(name);
    std::vector<std::tuple<LoopElement, LoopElement, WavepacketState>> samples;
    for (int i = 0; i < s.count(100); ++i) {
      samples.emplace_back(random_loop_element(rng), random_loop_element(rng), random_state(rng, m));
    }
    s.run(name, samples, 1e-9, [m, conv](const auto& p) {
      const auto& [x2, x1, st] = p;
      const WavepacketState twice = apply(x2, apply(x1, st, conv), conv);
      const WavepacketState once = apply(loop_compose(x2, x1, m), st, conv);
      double r = 0.0;
      for (std::size_t k = 0; k < st.terms.size(); ++k) {
        r = std::max(r, label_residual(twice.terms[k].label, once.terms[k].label));
        const TrigPoly expect = once.terms[k].phase + xi2_direct(x2, x1, st.terms[k].label, m, conv);
        r = std::max(r, residual_norm(twice.terms[k].phase - expect));
        r = std::max(r, std::abs(twice.terms[k].amplitude - once.terms[k].amplitude));
      }
      return r;
    });
  }
  {
    std::vector<std::tuple<LoopElement, LoopElement, VelocityLabel>> samples;
    auto rng = s.sampler("galrep.xi2_samples");
    for (int i = 0; i < s.count(200); ++i) {
      LoopElement x2 = random_loop_element(rng);
      LoopElement x1 = random_loop_element(rng);
      samples.emplace_back(std::move(x2), std::move(x1), VelocityLabel::from_velocity(rng.velocity_label()));
    }
    const double printed = s.run("galrep.xi2_closed_printed", samples, 1e-9, [m, conv](const auto& p) {
      const auto& [x2, x1, q] = p;
      return residual_norm(xi2_direct(x2, x1, q, m, conv) - xi2_closed(x2, x1, q, m, conv));
    });
    const double derived = s.run("galrep.xi2_closed_derived", samples, 1e-9, [m, conv](const auto& p) {
      const auto& [x2, x1, q] = p;
      return residual_norm(xi2_direct(x2, x1, q, m, conv) - xi2_closed_derived(x2, x1, q, m, conv));
    });
    s.finding("xi2 closed form", "direct xi2 vs printed closed form: max residual " + fmt(printed) +
                                     "; vs derived closed form (omega term without the extra factor m, "
                                     "rotation terms in the rotated frame): " + fmt(derived));
  }
  {
    const std::string name = "galrep.operator_associativity";
    auto rng = s.sampler(name);
    std::vector<std::pair<LoopTriple, WavepacketState>> samples;
    for (int i = 0; i < s.count(100); ++i) {
      LoopTriple t{random_loop_element(rng), random_loop_element(rng), random_loop_element(rng)};
      samples.emplace_back(std::move(t), random_state(rng, m));
    }
    std::vector<double> assoc(samples.size(), 0.0);
    std::vector<double> printed(samples.size(), 0.0);
    s.run(name, samples, 1e-9, [&](const auto& p) {
      const LoopTriple& t = p.first;
      const AssociativityResidual r = associativity_residual(t.x3, t.x2, t.x1, p.second);
      const std::size_t idx = static_cast<std::size_t>(&p - samples.data());
      assoc[idx] = r.associator_phase;
      printed[idx] = associativity_residual(t.x3, t.x2, t.x1, p.second, &xi2_closed).max();
      return r.max();
    });
    const auto nonzero = std::count_if(assoc.begin(), assoc.end(), [](double a) { return a > 1e-6; });
    const double worst_printed = *std::max_element(printed.begin(), printed.end());
    s.data()["operator_associativity"] = {{"samples", samples.size()},
                                          {"nonzero_associator", nonzero},
                                          {"max_associator_phase", *std::max_element(assoc.begin(), assoc.end())},
                                          {"printed_xi2_residual", worst_printed}};
    s.finding("operator associativity",
              std::to_string(nonzero) + " of " + std::to_string(samples.size()) +
                  " triples have a nonzero associator (max phase " +
                  fmt(*std::max_element(assoc.begin(), assoc.end())) +
                  "); with the printed closed form for xi2 the residual would be " + fmt(worst_printed));
  }
  {
    const std::string name = "galrep.boost_property";
    auto rng = s.sampler(name);
    std::vector<Vec3Fn> samples;
    for (int i = 0; i < s.count(100); ++i) samples.push_back(rng.velocity_label());
    s.run(name, samples, 1e-10, [m, conv](const Vec3Fn& q) {
      const Vec3Fn aq = boost_of(q);
      const WavepacketState rest = WavepacketState::single(m, VelocityLabel::constant({}));
      const WavepacketState moved = apply(LoopElement{TrigPoly{}, LineGroupElement::translation(aq)}, rest, conv);
      const VelocityLabel& got = moved.terms.front().label;
      return std::max({residual_norm(got.q - q), residual_norm(got.boost - aq),
                       residual_norm(boost_of(differentiate(aq)) - aq)});
    });
  }
  {
    // Pure time shifts on constant labels: induced phase vs the textbook
    // exponent +m q^2 b/2.
    auto rng = s.sampler("galrep.time_shift_sign");
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Vec3 q = rng.vector();
      const double b = rng.uniform(-1, 1);
      const GalileiPhaseComparison c =
          reduce_to_galilei({TrigPoly{}, LineGroupElement::time_shift(b)}, q, m, conv);
      const double textbook = c.textbook;
      const double induced = c.induced.constant_term();
      worst = std::max(worst, std::abs(induced + textbook) > 1e-12 ? 0.0 : std::abs(textbook));
    }
    s.finding("time-shift sign",
              std::string("time-shift-sign = ") + std::to_string(conv.time_shift_sign) +
                  (worst > 0.0 ? ": induced phase on pure time shifts is -m q^2 b/2, opposite to the textbook "
                                 "+m q^2 b/2 (max magnitude " + fmt(worst) + ")"
                               : ": induced phase on pure time shifts matches the textbook +m q^2 b/2 sign"));
  }
  {
    // Galilei elements with b = 0 and phi constant: induced minus textbook.
    auto rng = s.sampler("galrep.galilei_residual");
    double worst = 0.0;
    bool all_constant = true;
    for (int i = 0; i < 50; ++i) {
      GalileiElement h = rng.galilei();
      const GalileiPhaseComparison c = reduce_to_galilei({TrigPoly(rng.uniform(-1, 1)), embed_galilei(h)},
                                                         rng.vector(), m, conv);
      worst = std::max(worst, residual_norm(c.difference));
      all_constant = all_constant && c.difference_is_constant;
    }
    s.finding("Galilei reduction of xi",
              "induced minus textbook phase on Galilei elements: max " + fmt(worst) +
                  (all_constant ? ", always constant in t" : ", with time-dependent pieces such as q'.v t - v^2 t/2"));
  }
  return s.finish();
}

Report verify_noninertial(const VerifyConfig& cfg) {
  Suite s(cfg, "noninertial");
  const Mass m = s.mass();
  const bool drop = s.config().drop_aq_gauge;
  GridOptions opt;
  opt.exec = s.exec();
  struct FrameSample {
    Mat3Fn R;
    Vec3 q0;
    double t0;
  };
  std::vector<FrameSample> frames;
  {
    auto rng = s.sampler("noninertial.frames");
    for (int i = 0; i < s.count(50); ++i) frames.push_back({rng.time_dependent_rotation(), rng.vector(), rng.uniform(-2, 2)});
  }
  s.run("noninertial.rotating_frame_velocity", frames, 1e-8, [](const FrameSample& f) {
    return rotating_frame_residual(f.R, f.q0, rotating_frame_velocity(f.R, f.q0));
  });
  s.run("noninertial.qdot_decomposition", frames, 1e-8, [](const FrameSample& f) {
    const Vec3Fn q = rotating_frame_velocity(f.R, f.q0);
    return residual_norm(qdot_decomposition(angular_velocity(f.R), q).sum() - differentiate(q));
  });
  s.run("noninertial.generator", frames, 1e-6, [m, conv = s.conv()](const FrameSample& f) {
    const FrameSpec frame = FrameSpec::from_rotation(f.R);
    const VelocityLabel label = rotating_label(f.R, f.q0);
    return generator_residual(hamiltonian_on_ket(frame, label, f.t0, m), time_shift_generator(label, f.t0, m, conv));
  });

  struct GridSample {
    FrameSpec frame;
    double t0;
    Vec3 center;
    Vec3 k;
  };
  const auto packet = [m](const GridSample& g) { return GridWavefunction::gaussian(17, 0.25, m, 0.28, g.center, g.k); };
  std::vector<GridSample> constant_omega;
  std::vector<GridSample> varying_omega;
  {
    auto rng = s.sampler("noninertial.grid");
    const int n = s.count(6);
    for (int i = 0; i < n; ++i) {
      const double t0 = i % 2 == 0 ? 0.0 : rng.uniform(-1, 1);
      constant_omega.push_back({FrameSpec::from_angular_velocity(Vec3Fn::constant(rng.vector())), t0,
                                rng.vector(0.05), rng.vector(1.0)});
    }
    for (int i = 0; i < n; ++i) {
      const double t0 = rng.uniform(0.3, 1.0) * (i % 2 == 0 ? 1.0 : -1.0);
      // Two rotations about independent axes with nonzero rates, so Omegadot != 0.
      const Vec3 n1 = rng.unit_vector();
      Vec3 n2 = rng.unit_vector();
      while (norm(cross(n1, n2)) < 0.3) n2 = rng.unit_vector();
      Mat3Fn r = rotation_about_axis(n1, rng.uniform(-1, 1), rng.uniform(0.5, 2.0)) *
                 rotation_about_axis(n2, rng.uniform(-1, 1), rng.uniform(0.5, 2.0));
      varying_omega.push_back({FrameSpec::from_rotation(std::move(r)), t0, rng.vector(0.05), rng.vector(1.0)});
    }
    // Off-center, moving packet: for an isotropic packet at the origin
    // a_q.(Omegadot x X psi) vanishes identically.
    varying_omega.push_back({FrameSpec::from_angular_velocity(Vec3Fn{{TrigPoly{}, TrigPoly{}, 1.0 + TrigPoly::t()}}),
                             0.8, {0.05, -0.04, 0.03}, {0.6, -0.3, 0.4}});
  }
  const auto gauge_residual = [&, m](const GridSample& g, A0Variant v) {
    const GridWavefunction psi = packet(g);
    const GridWavefunction h = hamiltonian_apply(g.frame, psi, g.t0, opt, drop);
    return relative_residual(gauge_hamiltonian_apply(gauge_fields(g.frame, g.t0, m, drop), v, psi, opt), h, opt.exec);
  };
  s.run("noninertial.gauge_constant_omega", constant_omega, 1e-5, [&](const GridSample& g) {
    return std::max(gauge_residual(g, A0Variant::printed), gauge_residual(g, A0Variant::substitution));
  });
  const double subst = s.run("noninertial.gauge_varying_omega", varying_omega, 1e-5,
                             [&](const GridSample& g) { return gauge_residual(g, A0Variant::substitution); });
  double printed_min = kInf, printed_max = 0.0;
  for (const auto& g : varying_omega) {
    const double r = gauge_residual(g, A0Variant::printed);
    printed_min = std::min(printed_min, r);
    printed_max = std::max(printed_max, r);
  }
  const double threshold = s.tol(1e-5);
  const char* winner = subst < threshold && printed_min >= threshold   ? "substitution-derived"
                       : printed_max < threshold && subst >= threshold ? "printed"
                                                                       : "neither uniquely";
  s.data()["a0_variant"] = {{"samples", varying_omega.size()},
                            {"substitution_max", subst},
                            {"printed_min", printed_min},
                            {"printed_max", printed_max},
                            {"matching", winner}};
  s.finding("scalar potential Omegadot sign",
            std::string("time-dependent Omega: substitution-derived variant (- m a_q.(Omegadot x X)) max residual ") +
                fmt(subst) + ", printed variant (+ m a_q.(Omegadot x X)) residual range [" + fmt(printed_min) + ", " +
                fmt(printed_max) + "]; variant matching the Hamiltonian: " + winner);

  {
    const std::string name = "noninertial.position_operator_accuracy";
    std::vector<int> one{0};
    s.run(name, one, 1e-4, [&](int) {
      const double sigma = 0.5;
      const GridWavefunction psi = GridWavefunction::gaussian(137, 0.05, m, sigma);
      const GridVector x = position_op(psi, opt);
      double r = 0.0;
      for (int axis = 0; axis < 3; ++axis) {
        GridWavefunction exact(psi.n, psi.dq, m);
        for (std::size_t p = 0; p < psi.size(); ++p) {
          exact[p] = Complex(0.0, 1.0 / m.value()) * (-psi.label(p)[axis] / (sigma * sigma)) * psi[p];
        }
        r = std::max(r, relative_residual(x[axis], exact, opt.exec));
      }
      return r;
    });
  }
  {
    const std::string name = "noninertial.canonical_commutator";
    std::vector<int> one{0};
    s.run(name, one, 1e-6, [&](int) {
      // <[X_j, P_k]> = i delta_jk on a packet well inside the grid.
      const GridWavefunction psi = GridWavefunction::gaussian(137, 0.05, m, 0.45, {0.05, -0.03, 0.02}, {0.5, 0.25, -0.25});
      GridOptions nested = opt;
      nested.decay_tol = 1e-8;
      const GridVector p = momentum_op(psi, opt);
      const GridVector x = position_op(psi, opt);
      const Complex norm2 = inner(psi, psi, opt.exec);
      std::vector<GridVector> xp, px;  // xp[k][j] = X_j P_k psi, px[j][k] = P_k X_j psi
      for (int k = 0; k < 3; ++k) xp.push_back(position_op(p[k], nested));
      for (int j = 0; j < 3; ++j) px.push_back(momentum_op(x[j], nested));
      double r = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          GridWavefunction c = xp[k][j];
          for (std::size_t i = 0; i < c.size(); ++i) c[i] -= px[j][k][i];
          const Complex expect = j == k ? Complex(0.0, 1.0) : Complex{};
          r = std::max(r, std::abs(inner(psi, c, opt.exec) / norm2 - expect));
        }
      return r;
    });
  }
  {
    const std::string name = "noninertial.hermiticity_constant_omega";
    auto rng = s.sampler(name);
    std::vector<std::pair<GridSample, GridSample>> samples;
    for (int i = 0; i < s.count(4); ++i) {
      const FrameSpec f = FrameSpec::from_angular_velocity(Vec3Fn::constant(rng.vector()));
      samples.push_back({{f, 0.0, rng.vector(0.05), rng.vector()}, {f, 0.0, rng.vector(0.05), rng.vector()}});
    }
    const auto hermiticity = [&](const GridSample& a, const GridSample& b, double t0) {
      const GridWavefunction phi = packet(a);
      const GridWavefunction psi = packet(b);
      const Complex lhs = inner(phi, hamiltonian_apply(a.frame, psi, t0, opt, drop), opt.exec);
      const Complex rhs = inner(hamiltonian_apply(a.frame, phi, t0, opt, drop), psi, opt.exec);
      return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
    };
    s.run(name, samples, 1e-5, [&](const auto& p) { return hermiticity(p.first, p.second, 0.0); });
    double off = 0.0;
    for (const auto& p : samples) off = std::max(off, hermiticity(p.first, p.second, 0.7));
    s.finding("Hamiltonian ordering", "at t0 = 0.7 the coefficient-first ordering of m qdot.X with a_q = q t0 "
                                      "is not Hermitian (centrifugal coefficient has divergence -2|Omega|^2 t0): "
                                      "relative asymmetry " + fmt(off));
  }
  {
    const std::string name = "noninertial.serial_parallel_agreement";
    std::vector<GridSample> samples(varying_omega.begin(), varying_omega.begin() + 1);
    s.run(name, samples, 1e-300, [&](const GridSample& g) {
      GridOptions ser = opt, par = opt;
      ser.exec = Exec::serial;
      par.exec = Exec::parallel;
      const GridWavefunction psi = packet(g);
      const GaugeFields f = gauge_fields(g.frame, g.t0, m, drop);
      const GridWavefunction a = gauge_hamiltonian_apply(f, A0Variant::substitution, psi, ser);
      const GridWavefunction b = gauge_hamiltonian_apply(f, A0Variant::substitution, psi, par);
      const GridWavefunction c = hamiltonian_apply(g.frame, psi, g.t0, ser, drop);
      const GridWavefunction d = hamiltonian_apply(g.frame, psi, g.t0, par, drop);
      double r = 0.0;
      for (std::size_t i = 0; i < psi.size(); ++i) r = std::max({r, std::abs(a[i] - b[i]), std::abs(c[i] - d[i])});
      return r == 0.0 ? 0.0 : r;
    });
  }
  {
    struct LoopSample {
      double mass;
      Vec3 omega;
      Vec3 normal;
      double lx, ly;
    };
    const std::string name = "noninertial.sagnac_closed_form";
    auto rng = s.sampler(name);
    std::vector<LoopSample> samples;
    for (int i = 0; i < s.count(100); ++i) {
      samples.push_back({rng.uniform(0.1, 3.0), rng.vector(), rng.vector(), rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0)});
    }
    const auto phase = [](const LoopSample& l) {
      return loop_phase(rotating_frame_field(Mass(l.mass), l.omega), rectangle_path(l.normal, l.lx, l.ly));
    };
    s.run(name, samples, 1e-9, [&](const LoopSample& l) {
      return std::abs(phase(l) - sagnac_phase(Mass(l.mass), l.omega, l.normal, l.lx * l.ly));
    });
    s.run("noninertial.sagnac_linearity", samples, 1e-9, [&](const LoopSample& l) {
      const double base = phase(l);
      LoopSample m2 = l, w2 = l, a2 = l;
      m2.mass *= 2.0;
      w2.omega = {2.0 * l.omega[0], 2.0 * l.omega[1], 2.0 * l.omega[2]};
      a2.lx *= 2.0;
      return std::max({std::abs(phase(m2) - 2.0 * base), std::abs(phase(w2) - 2.0 * base),
                       std::abs(phase(a2) - 2.0 * base)});
    });
  }
  return s.finish();
}

Report verify_all(const VerifyConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Report> parts{verify_cocycles(cfg), verify_galrep(cfg),      verify_linegroup(cfg),
                            verify_lineloop(cfg), verify_noninertial(cfg), verify_timefn(cfg)};
  Report out;
  out.suite = "verify";
  for (auto& r : parts) {
    for (auto& c : r.checks) out.checks.push_back(std::move(c));
    for (auto& f : r.findings) out.findings.push_back(std::move(f));
    for (auto& [k, v] : r.data.items()) out.data[k] = v;
  }
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace galloop
