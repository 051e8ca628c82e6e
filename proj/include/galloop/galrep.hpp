// Induced cocycle representation of the line loop on velocity eigenkets:
//   U(x) |q> = exp(i xi(x; q)) |S_{-b} q'>,
//   xi(x; q) = m ( phi + q'.a - a.adot/2 + (S_{-b} - 1) q'.a_{q'} / 2 ),
//   q' = R q + Rdot a_q + adot = d/dt (R a_q + a),   a_{q'} = R a_q + a.
//
// A ket label carries its boost a_q alongside q = d/dt a_q. Fresh labels
// take the antiderivative with no integration constant; transformed labels
// carry R a_q + a, which makes the label map a group action.
// Phases and labels are functions of time and identities are checked as
// function identities.
#pragma once

#include <complex>
#include <vector>

#include "galloop/exec.hpp"
#include "galloop/lineloop.hpp"
#include "json.hpp"

namespace galloop {

using Complex = std::complex<double>;

struct VelocityLabel {
  Vec3Fn q;
  Vec3Fn boost;  // a_q, d/dt boost == q

  /// Boost from the antiderivative with zero integration constant.
  static VelocityLabel from_velocity(Vec3Fn q);
  static VelocityLabel constant(const Vec3& v) { return from_velocity(Vec3Fn::constant(v)); }
};

bool approx_equal(const VelocityLabel& a, const VelocityLabel& b, double atol = 1e-10);
double label_residual(const VelocityLabel& a, const VelocityLabel& b);

struct KetTerm {
  VelocityLabel label;
  Complex amplitude{1.0, 0.0};
  TrigPoly phase;
};

struct WavepacketState {
  std::vector<KetTerm> terms;
  Mass m;

  explicit WavepacketState(Mass mass) : m(mass) {}
  static WavepacketState single(Mass m, VelocityLabel label, Complex amplitude = 1.0);

  /// Sum of |amplitude|^2; distinct labels are orthonormal.
  double norm2() const;
  /// Merges terms whose labels agree within atol. Phases are folded into the
  /// amplitudes at the reference time t0 before adding.
  void merge_labels(double atol = 1e-10, double t0 = 0.0);
};

/// JSON array of {label: [3 TrigPoly strings], re, im, phase: TrigPoly string}.
/// Each entry also carries "boost" (3 strings) so transformed kets round-trip;
/// on input a missing boost means the zero-constant antiderivative of label.
nlohmann::json wavepacket_to_json(const WavepacketState& s);
/// Throws std::invalid_argument on malformed input.
WavepacketState wavepacket_from_json(const nlohmann::json& j, Mass m);

struct PhaseConventions {
  /// +1: (S_{-b} - 1) as written in xi; -1: (S_{+b} - 1), which turns the
  /// pure-time-shift phase -m q^2 b/2 into +m q^2 b/2.
  int time_shift_sign = +1;
};

/// Standard boost a_q = int q dt, zero integration constant.
Vec3Fn boost_of(const Vec3Fn& q);

/// (q', R a_q + a) before the time shift. q' is computed as
/// R q + Rdot a_q + adot and checked against d/dt(R a_q + a); throws
/// std::logic_error if the two routes disagree beyond atol.
VelocityLabel transform_label(const LineGroupElement& g, const VelocityLabel& label, double atol = 1e-9);

/// Label after U(x): both q' and its boost shifted by -b.
VelocityLabel transformed_ket_label(const LineGroupElement& g, const VelocityLabel& label);

TrigPoly xi_phase(const LoopElement& x, const VelocityLabel& label, Mass m, PhaseConventions conv = {});

/// Terms are processed independently; exec selects OpenMP or the serial loop.
WavepacketState apply(const LoopElement& x, const WavepacketState& s, PhaseConventions conv = {},
                      Exec exec = Exec::parallel);

/// xi(x1; q) + xi(x2; S_{-b1} q1') - xi(x2 x1; q).
TrigPoly xi2_direct(const LoopElement& x2, const LoopElement& x1, const VelocityLabel& q, Mass m,
                    PhaseConventions conv = {});

/// Closed form as customarily printed:
///   m (S Omega2) . (R1 a_q x a1 - (S R2) a1 x S a2)
///   + m (1 - S) phi2 + m (S_{-b1} - 1) omega(g2, g1 g_q),   S = S_{b1}, g_q = (I, a_q, 0).
TrigPoly xi2_closed(const LoopElement& x2, const LoopElement& x1, const VelocityLabel& q, Mass m,
                    PhaseConventions conv = {});

/// Closed form that agrees with xi2_direct under the label convention above:
///   m (1 - S) phi2 + (S_{-b1} - 1) omega(g2, g1 g_q)
///   + m [ Omega2 . (R2 B x a2)/2 - S Omega2 . (S R2 R1 a_q x S a2)/2
///         + S Omega2 . (S R2 a1 x S R2 R1 a_q) ],
/// with B = S_{-b1}(R1 a_q + a1) the boost of the intermediate ket.
TrigPoly xi2_closed_derived(const LoopElement& x2, const LoopElement& x1, const VelocityLabel& q, Mass m,
                            PhaseConventions conv = {});

using Xi2Function = TrigPoly (*)(const LoopElement&, const LoopElement&, const VelocityLabel&, Mass,
                                 PhaseConventions);

/// Residuals between the two fully reduced groupings of U(x3) U(x2) U(x1):
///   (U3 U2) U1 |q> = e^{i[xi2(x3,x2; q1) + xi2(x3 x2, x1; q)]} U((x3 x2) x1) |q>
///   U3 (U2 U1) |q> = e^{i[xi2(x2,x1; q) + xi2(x3, x2 x1; q)]} U(x3 (x2 x1)) |q>
/// taken over every ket of s.
struct AssociativityResidual {
  double phase = 0.0;
  double label = 0.0;
  /// Size of the associator's phase m * A_phi on the same kets; nonzero
  /// whenever the loop fails to associate on the triple.
  double associator_phase = 0.0;
  double max() const { return std::max(phase, label); }
};

AssociativityResidual associativity_residual(const LoopElement& x3, const LoopElement& x2,
                                             const LoopElement& x1, const WavepacketState& s,
                                             Xi2Function xi2 = &xi2_direct);

/// Galilei-sector comparison between the induced phase and the textbook
/// exponent m(phi + q'.a0 - v.a0/2 + q'^2 b/2) on a constant label.
struct GalileiPhaseComparison {
  TrigPoly induced;
  double textbook = 0.0;
  TrigPoly difference;  // induced - textbook
  bool difference_is_constant = false;
};

/// Throws std::domain_error outside the Galilei sector.
GalileiPhaseComparison reduce_to_galilei(const LoopElement& x, const Vec3& q, Mass m,
                                         PhaseConventions conv = {});

}  // namespace galloop
