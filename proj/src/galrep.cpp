#include "galloop/galrep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace galloop {

VelocityLabel VelocityLabel::from_velocity(Vec3Fn q) {
  Vec3Fn boost = antiderivative(q);
  return {std::move(q), std::move(boost)};
}

double label_residual(const VelocityLabel& a, const VelocityLabel& b) {
  return std::max(residual_norm(a.q - b.q), residual_norm(a.boost - b.boost));
}

bool approx_equal(const VelocityLabel& a, const VelocityLabel& b, double atol) {
  return label_residual(a, b) < atol;
}

WavepacketState WavepacketState::single(Mass m, VelocityLabel label, Complex amplitude) {
  WavepacketState s(m);
  s.terms.push_back({std::move(label), amplitude, TrigPoly{}});
  return s;
}

double WavepacketState::norm2() const {
  double sum = 0.0;
  for (const auto& term : terms) sum += std::norm(term.amplitude);
  return sum;
}

void WavepacketState::merge_labels(double atol, double t0) {
  std::vector<KetTerm> merged;
  for (auto& term : terms) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const KetTerm& k) { return approx_equal(k.label, term.label, atol); });
    if (it == merged.end()) {
      merged.push_back(std::move(term));
      continue;
    }
    // Fold both phases into the amplitudes at t0 before adding.
    const Complex lhs = it->amplitude * std::polar(1.0, it->phase(t0));
    const Complex rhs = term.amplitude * std::polar(1.0, term.phase(t0));
    it->amplitude = lhs + rhs;
    it->phase = TrigPoly{};
  }
  terms = std::move(merged);
}

Vec3Fn boost_of(const Vec3Fn& q) { return antiderivative(q); }

VelocityLabel transform_label(const LineGroupElement& g, const VelocityLabel& label, double atol) {
  Vec3Fn q_prime = g.R * label.q + differentiate(g.R) * label.boost + g.adot();
  Vec3Fn boost = g.R * label.boost + g.a;
  const double miss = residual_norm(q_prime - differentiate(boost));
  if (miss >= atol) {
    throw std::logic_error("transform_label: R q + Rdot a_q + adot disagrees with d/dt(R a_q + a) by " +
                           std::to_string(miss));
  }
  return {std::move(q_prime), std::move(boost)};
}

VelocityLabel transformed_ket_label(const LineGroupElement& g, const VelocityLabel& label) {
  const VelocityLabel out = transform_label(g, label);
  return {shift(out.q, -g.b), shift(out.boost, -g.b)};
}

TrigPoly xi_phase(const LoopElement& x, const VelocityLabel& label, Mass m, PhaseConventions conv) {
  const LineGroupElement& g = x.g;
  const VelocityLabel moved = transform_label(g, label);
  const TrigPoly boost_term = dot(moved.q, moved.boost);
  const TrigPoly shifted = shift(boost_term, -conv.time_shift_sign * g.b) - boost_term;
  return m.value() * (x.phi + dot(moved.q, g.a) - 0.5 * dot(g.a, g.adot()) + 0.5 * shifted);
}

WavepacketState apply(const LoopElement& x, const WavepacketState& s, PhaseConventions conv, Exec exec) {
  WavepacketState out(s.m);
  out.terms.resize(s.terms.size());
  // Per-term work is independent; results land in fixed slots so the order
  // of evaluation does not affect the output.
  const auto n = static_cast<std::ptrdiff_t>(s.terms.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel && n > 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      const KetTerm& in = s.terms[i];
      out.terms[i] = {transformed_ket_label(x.g, in.label), in.amplitude,
                      in.phase + xi_phase(x, in.label, s.m, conv)};
    } catch (...) {
#pragma omp critical
      failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

TrigPoly xi2_direct(const LoopElement& x2, const LoopElement& x1, const VelocityLabel& q, Mass m,
                    PhaseConventions conv) {
  const VelocityLabel q1 = transformed_ket_label(x1.g, q);
  return xi_phase(x1, q, m, conv) + xi_phase(x2, q1, m, conv) - xi_phase(loop_compose(x2, x1, m), q, m, conv);
}

TrigPoly xi2_closed(const LoopElement& x2, const LoopElement& x1, const VelocityLabel& q, Mass m,
                    PhaseConventions) {
  const double b1 = x1.g.b;
  const Vec3Fn& aq = q.boost;
  const Vec3Fn& a1 = x1.g.a;
  const Mat3Fn r2 = shift(x2.g.R, b1);
  const Vec3Fn rotation_part = cross(x1.g.R * aq, a1) - cross(r2 * a1, shift(x2.g.a, b1));
  const TrigPoly term1 = dot(shift(x2.g.omega(), b1), rotation_part);
  const TrigPoly term2 = x2.phi - shift(x2.phi, b1);
  const TrigPoly w = omega(x2.g, x1.g * LineGroupElement::translation(aq), m);
  const TrigPoly term3 = shift(w, -b1) - w;
  return m.value() * (term1 + term2 + term3);
}

TrigPoly xi2_closed_derived(const LoopElement& x2, const LoopElement& x1, const VelocityLabel& q, Mass m,
                            PhaseConventions) {
  const double b1 = x1.g.b;
  const Vec3Fn& aq = q.boost;
  const Vec3Fn& a1 = x1.g.a;
  const Vec3Fn& a2 = x2.g.a;
  const Vec3Fn om2 = x2.g.omega();
  const Mat3Fn sr2 = shift(x2.g.R, b1);
  const Vec3Fn r1aq = x1.g.R * aq;
  const Vec3Fn boost_mid = shift(r1aq + a1, -b1);
  const Vec3Fn sa2 = shift(a2, b1);
  const Vec3Fn som2 = shift(om2, b1);
  const TrigPoly rotation = 0.5 * dot(om2, cross(x2.g.R * boost_mid, a2)) -
                            0.5 * dot(som2, cross(sr2 * r1aq, sa2)) +
                            dot(som2, cross(sr2 * a1, sr2 * r1aq));
  const TrigPoly w = omega(x2.g, x1.g * LineGroupElement::translation(aq), m);
  return m.value() * (x2.phi - shift(x2.phi, b1) + rotation) + (shift(w, -b1) - w);
}

}  // namespace galloop

namespace galloop {

AssociativityResidual associativity_residual(const LoopElement& x3, const LoopElement& x2,
                                             const LoopElement& x1, const WavepacketState& s,
                                             Xi2Function xi2) {
  const Mass m = s.m;
  const LoopElement x32 = loop_compose(x3, x2, m);
  const LoopElement x21 = loop_compose(x2, x1, m);
  const LoopElement left_first = loop_compose(x32, x1, m);
  const LoopElement right_first = loop_compose(x3, x21, m);

  const LoopElement assoc = associator(x3, x2, x1, m);
  AssociativityResidual worst;
  for (const KetTerm& term : s.terms) {
    const VelocityLabel& q = term.label;
    const VelocityLabel q1 = transformed_ket_label(x1.g, q);
    // (U3 U2) U1 |q> = e^{i xi2(x3, x2; q1)} e^{i xi2(x3 x2, x1; q)} U((x3 x2) x1) |q>
    const TrigPoly left_phase =
        xi2(x3, x2, q1, m, {}) + xi2(x32, x1, q, m, {}) + xi_phase(left_first, q, m);
    // U3 (U2 U1) |q> = e^{i xi2(x2, x1; q)} e^{i xi2(x3, x2 x1; q)} U(x3 (x2 x1)) |q>
    const TrigPoly right_phase =
        xi2(x2, x1, q, m, {}) + xi2(x3, x21, q, m, {}) + xi_phase(right_first, q, m);
    worst.phase = std::max(worst.phase, residual_norm(left_phase - right_phase));
    worst.label = std::max(worst.label, label_residual(transformed_ket_label(left_first.g, q),
                                                       transformed_ket_label(right_first.g, q)));
    worst.associator_phase = std::max(worst.associator_phase, m.value() * residual_norm(assoc.phi));
  }
  return worst;
}

GalileiPhaseComparison reduce_to_galilei(const LoopElement& x, const Vec3& q, Mass m, PhaseConventions conv) {
  const CentralExtElement y = reduce_to_central(x);
  const Vec3 q_prime = y.h.R0 * q + y.h.v;
  GalileiPhaseComparison out;
  out.textbook = m.value() * (y.phi + dot(q_prime, y.h.a0) - 0.5 * dot(y.h.v, y.h.a0) +
                              0.5 * dot(q_prime, q_prime) * y.h.b);
  out.induced = xi_phase(x, VelocityLabel::constant(q), m, conv);
  out.difference = out.induced - TrigPoly(out.textbook);
  out.difference_is_constant = out.difference.is_constant();
  return out;
}

}  // namespace galloop

namespace galloop {

namespace {

nlohmann::json vec_to_json(const Vec3Fn& v) {
  return nlohmann::json::array({to_string(v[0]), to_string(v[1]), to_string(v[2])});
}

Vec3Fn vec_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument(std::string(what) + " must be 3 TrigPoly strings");
  Vec3Fn v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_string()) throw std::invalid_argument(std::string(what) + " entries must be strings");
    v[i] = parse_trigpoly(j[i].get<std::string>());
  }
  return v;
}

}  // namespace

nlohmann::json wavepacket_to_json(const WavepacketState& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const KetTerm& k : s.terms) {
    out.push_back({{"label", vec_to_json(k.label.q)},
                   {"boost", vec_to_json(k.label.boost)},
                   {"re", k.amplitude.real()},
                   {"im", k.amplitude.imag()},
                   {"phase", to_string(k.phase)}});
  }
  return out;
}

WavepacketState wavepacket_from_json(const nlohmann::json& j, Mass m) {
  if (!j.is_array()) throw std::invalid_argument("wavepacket must be a JSON array");
  WavepacketState s(m);
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("label") || !e.contains("re") || !e.contains("im") || !e.contains("phase"))
      throw std::invalid_argument("wavepacket term needs label, re, im and phase");
    if (!e["re"].is_number() || !e["im"].is_number() || !e["phase"].is_string())
      throw std::invalid_argument("wavepacket term has mistyped fields");
    KetTerm k;
    k.label = VelocityLabel::from_velocity(vec_from_json(e["label"], "label"));
    if (e.contains("boost")) {
      k.label.boost = vec_from_json(e["boost"], "boost");
      Vec3Fn dq = k.label.boost;
      for (int i = 0; i < 3; ++i) dq[i] = differentiate(dq[i]);
      double r = 0.0;
      for (int i = 0; i < 3; ++i) r = std::max(r, residual_norm(dq[i] - k.label.q[i]));
      if (r > 1e-9) throw std::invalid_argument("boost is not an antiderivative of label");
    }
    k.amplitude = Complex(e["re"].get<double>(), e["im"].get<double>());
    k.phase = parse_trigpoly(e["phase"].get<std::string>());
    s.terms.push_back(std::move(k));
  }
  return s;
}

}  // namespace galloop
