#include <cmath>

#include "doctest.h"
#include "galloop/galrep.hpp"
#include "galloop/random_elements.hpp"

using namespace galloop;

namespace {

LoopElement random_loop(ElementSampler& s) {
  return {TrigPoly(s.uniform(-1, 1)) + TrigPoly::cos_term(1, s.grid_frequency(), s.uniform(-1, 1)), s.element()};
}

WavepacketState random_state(ElementSampler& s, Mass m) {
  WavepacketState st(m);
  st.terms.push_back({VelocityLabel::from_velocity(s.velocity_label()), {0.6, 0.0}, {}});
  st.terms.push_back({VelocityLabel::from_velocity(s.velocity_label()), {0.0, -0.8}, TrigPoly::t()});
  return st;
}

}  // namespace

TEST_CASE("galrep: boost_of") {
  CHECK(residual_norm(boost_of(Vec3Fn{})) == 0.0);
  CHECK(approx_equal(boost_of(Vec3Fn::constant({1, 2, 3})), Vec3Fn::linear({1, 2, 3}), 1e-15));
  CHECK(approx_equal(boost_of(Vec3Fn{{TrigPoly::cos_term(0, 1.0), {}, {}}}), Vec3Fn{{TrigPoly::sin_term(0, 1.0), {}, {}}},
                     1e-15));
  ElementSampler s(1);
  for (int i = 0; i < 20; ++i) {
    const Vec3Fn q = s.velocity_label();
    CHECK(approx_equal(differentiate(boost_of(q)), q, 1e-12));
  }
}

TEST_CASE("galrep: transform_label") {
  const VelocityLabel q = VelocityLabel::constant({0.3, -1.0, 2.0});
  CHECK(approx_equal(transform_label(LineGroupElement::identity(), q), q));
  const Mat3 r0 = ElementSampler(2).constant_rotation();
  const VelocityLabel r = transform_label(LineGroupElement::rotation(Mat3Fn::constant(r0)), q);
  CHECK(approx_equal(r.q, Vec3Fn::constant(r0 * Vec3{0.3, -1.0, 2.0}), 1e-12));
  const VelocityLabel b = transform_label(embed_galilei(GalileiElement::boost({1, 1, 0})), q);
  CHECK(approx_equal(b.q, Vec3Fn::constant({1.3, 0.0, 2.0}), 1e-14));
  // The transformed boost always differentiates to the transformed velocity.
  ElementSampler s(3);
  for (int i = 0; i < 30; ++i) {
    const VelocityLabel l = VelocityLabel::from_velocity(s.velocity_label());
    const VelocityLabel t = transformed_ket_label(s.element(), l);
    CHECK(approx_equal(differentiate(t.boost), t.q, 1e-9));
  }
}

TEST_CASE("galrep: xi_phase examples") {
  const Mass m(1.7);
  const VelocityLabel q = VelocityLabel::constant({0.5, -0.2, 1.0});
  CHECK(residual_norm(xi_phase(LoopElement::identity(), q, m)) < 1e-15);
  const LoopElement rot{{}, LineGroupElement::rotation(Mat3Fn::constant(ElementSampler(4).constant_rotation()))};
  CHECK(residual_norm(xi_phase(rot, q, m)) < 1e-12);
  const double b = 0.6, q2 = 0.25 + 0.04 + 1.0;
  const LoopElement shift_b{{}, LineGroupElement::time_shift(b)};
  const TrigPoly plus = xi_phase(shift_b, q, m);
  CHECK(plus.is_constant());
  CHECK(plus.constant_term() == doctest::Approx(-m.value() * q2 * b / 2));
  const TrigPoly minus = xi_phase(shift_b, q, m, PhaseConventions{-1});
  CHECK(minus.constant_term() == doctest::Approx(m.value() * q2 * b / 2));
}

TEST_CASE("galrep: apply preserves norm and acts as identity for e") {
  const Mass m(1.0);
  ElementSampler s(5);
  for (int i = 0; i < 20; ++i) {
    const WavepacketState st = random_state(s, m);
    const WavepacketState same = apply(LoopElement::identity(), st);
    for (std::size_t k = 0; k < st.terms.size(); ++k) {
      CHECK(approx_equal(same.terms[k].label, st.terms[k].label));
      CHECK(approx_equal(same.terms[k].phase, st.terms[k].phase, 1e-14));
    }
    const WavepacketState moved = apply(random_loop(s), st);
    CHECK(moved.norm2() == doctest::Approx(st.norm2()).epsilon(1e-14));
  }
}

TEST_CASE("galrep: apply is deterministic between serial and parallel callers") {
  const Mass m(1.0);
  ElementSampler s(6);
  WavepacketState st(m);
  for (int k = 0; k < 64; ++k) st.terms.push_back({VelocityLabel::from_velocity(s.velocity_label()), {1.0, 0.0}, {}});
  const LoopElement x = random_loop(s);
  const WavepacketState a = apply(x, st, {}, Exec::serial), b = apply(x, st, {}, Exec::parallel);
  for (std::size_t k = 0; k < st.terms.size(); ++k) {
    CHECK(a.terms[k].phase == b.terms[k].phase);
    CHECK(a.terms[k].label.q == b.terms[k].label.q);
  }
}

TEST_CASE("galrep: composition phase") {
  const Mass m(1.2);
  ElementSampler s(7);
  const VelocityLabel q0 = VelocityLabel::from_velocity(s.velocity_label());
  const LoopElement x = random_loop(s);
  CHECK(residual_norm(xi2_direct(LoopElement::identity(), x, q0, m)) < 1e-9);
  CHECK(residual_norm(xi2_direct(x, LoopElement::identity(), q0, m)) < 1e-9);
  for (int i = 0; i < 30; ++i) {
    const LoopElement x2 = random_loop(s), x1 = random_loop(s);
    const VelocityLabel q = VelocityLabel::from_velocity(s.velocity_label());
    // Independent route: sum the single phases along the two paths.
    const VelocityLabel q1 = transformed_ket_label(x1.g, q);
    const TrigPoly two_steps = xi_phase(x1, q, m) + xi_phase(x2, q1, m);
    const TrigPoly one_step = xi_phase(loop_compose(x2, x1, m), q, m);
    CHECK(residual_norm(xi2_direct(x2, x1, q, m) - (two_steps - one_step)) < 1e-9);
    CHECK(residual_norm(xi2_direct(x2, x1, q, m) - xi2_closed_derived(x2, x1, q, m)) < 1e-9);
    CHECK(label_residual(transformed_ket_label(x2.g, q1), transformed_ket_label(x2.g * x1.g, q)) < 1e-9);
  }
}

TEST_CASE("galrep: closed forms on special sectors") {
  const Mass m(1.0);
  ElementSampler s(8);
  const VelocityLabel q = VelocityLabel::constant({0.2, 0.4, -0.1});
  for (int i = 0; i < 10; ++i) {
    LoopElement x2{TrigPoly(s.uniform(-1, 1)), s.constant_rotation_element()};
    LoopElement x1{TrigPoly(s.uniform(-1, 1)), s.constant_rotation_element()};
    x1.g.b = 0.0;
    CHECK(residual_norm(xi2_closed(x2, x1, q, m)) < 1e-12);
    CHECK(residual_norm(xi2_direct(x2, x1, q, m)) < 1e-12);
  }
  const LoopElement x2{TrigPoly::cos_term(0, 1.0) + TrigPoly::t(), LineGroupElement::time_shift(0.3)};
  const LoopElement x1{TrigPoly::sin_term(0, 2.0), LineGroupElement::time_shift(-0.7)};
  const TrigPoly only = m.value() * (x2.phi - shift(x2.phi, -0.7));
  CHECK(residual_norm(xi2_direct(x2, x1, q, m) - only) < 1e-12);
  CHECK(residual_norm(xi2_closed(x2, x1, q, m) - only) < 1e-12);
  CHECK(residual_norm(xi2_closed_derived(x2, x1, q, m) - only) < 1e-12);
}

TEST_CASE("galrep: operator associativity despite a nonzero associator") {
  const Mass m(1.0);
  ElementSampler s(9);
  const LoopElement e = LoopElement::identity();
  int nonzero = 0;
  for (int i = 0; i < 20; ++i) {
    const LoopElement a = random_loop(s), b = random_loop(s), c = random_loop(s);
    const WavepacketState st = random_state(s, m);
    const AssociativityResidual r = associativity_residual(a, b, c, st);
    CHECK(r.max() < 1e-9);
    if (r.associator_phase > 1e-6) ++nonzero;
    CHECK(associativity_residual(e, b, c, st).max() < 1e-9);
    CHECK(associativity_residual(a, e, c, st).max() < 1e-9);
  }
  CHECK(nonzero >= 10);
  for (int i = 0; i < 10; ++i) {
    const LoopElement a{TrigPoly(0.3), embed_galilei(s.galilei())}, b{{}, embed_galilei(s.galilei())},
        c{TrigPoly(-1.0), embed_galilei(s.galilei())};
    const AssociativityResidual r = associativity_residual(a, b, c, random_state(s, m));
    CHECK(r.max() < 1e-9);
    CHECK(r.associator_phase < 1e-9);
  }
}

TEST_CASE("galrep: Galilei reduction") {
  const Mass m(1.0);
  const GalileiPhaseComparison id = reduce_to_galilei(LoopElement::identity(), {1, 0, 0}, m);
  CHECK(residual_norm(id.induced) == 0.0);
  CHECK(id.textbook == 0.0);
  CHECK(id.difference_is_constant);
  // Pure time shifts: the two conventions differ in sign of the q^2 b / 2 term.
  const GalileiPhaseComparison ts = reduce_to_galilei({{}, LineGroupElement::time_shift(0.5)}, {1, 0, 0}, m);
  CHECK(ts.induced.constant_term() == doctest::Approx(-0.25));
  CHECK(ts.textbook == doctest::Approx(0.25));
  CHECK_THROWS_AS(reduce_to_galilei({{}, ElementSampler(10).element_with_rotating_frame()}, {0, 0, 0}, m),
                  std::domain_error);
}

TEST_CASE("galrep: wavepacket JSON round trip") {
  const Mass m(1.0);
  ElementSampler s(11);
  const WavepacketState st = apply(random_loop(s), random_state(s, m));
  const nlohmann::json j = wavepacket_to_json(st);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == st.terms.size());
  CHECK(j[0]["label"].size() == 3);
  CHECK(j[0]["phase"].is_string());
  const WavepacketState back = wavepacket_from_json(nlohmann::json::parse(j.dump()), m);
  for (std::size_t k = 0; k < st.terms.size(); ++k) {
    CHECK(back.terms[k].label.q == st.terms[k].label.q);
    CHECK(back.terms[k].label.boost == st.terms[k].label.boost);
    CHECK(back.terms[k].phase == st.terms[k].phase);
    CHECK(back.terms[k].amplitude == st.terms[k].amplitude);
  }
  // Without a boost the label is integrated with no constant.
  const auto minimal = nlohmann::json::parse(R"([{"label": ["1", "t", "0"], "re": 1, "im": 0, "phase": "0"}])");
  const WavepacketState w = wavepacket_from_json(minimal, m);
  CHECK(approx_equal(w.terms[0].label.boost, Vec3Fn{{TrigPoly::t(), TrigPoly::monomial(2, 0.5), {}}}));
  CHECK_THROWS_AS(wavepacket_from_json(nlohmann::json::object(), m), std::invalid_argument);
  CHECK_THROWS_AS(wavepacket_from_json(nlohmann::json::parse(R"([{"label": ["1", "t"], "re": 1, "im": 0, "phase": "0"}])"), m),
                  std::invalid_argument);
  CHECK_THROWS_AS(wavepacket_from_json(nlohmann::json::parse(
                                           R"([{"label": ["1","0","0"], "boost": ["0","0","0"], "re": 1, "im": 0, "phase": "0"}])"),
                                       m),
                  std::invalid_argument);
  CHECK_THROWS(wavepacket_from_json(nlohmann::json::parse(R"([{"label": ["x","0","0"], "re": 1, "im": 0, "phase": "0"}])"), m));
}
