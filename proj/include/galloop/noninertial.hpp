// Non-inertial physics on top of the representation: rotating-frame
// kinematics, the Hamiltonian as generator of time shifts, the rotating-frame
// gauge potentials on a velocity grid, and closed-loop phases.
//
// Grid operators act on wavefunctions psi(q) sampled on an n^3 grid centered
// at q = 0: P = m q (multiplication), X = (i/m) grad_q (central differences,
// zero outside the grid). Every grid kernel has a serial path and an OpenMP
// path that produce bitwise-identical results.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "galloop/galrep.hpp"

namespace galloop {

struct FrameSpec {
  /// Frame rotation. When absent the angular velocity is given directly
  /// (rates such as 1 + t have no rotation matrix with entries in the ring).
  std::optional<Mat3Fn> R;
  Vec3Fn a{};
  Vec3Fn Omega{};

  static FrameSpec from_rotation(Mat3Fn r, Vec3Fn a = {});
  static FrameSpec from_angular_velocity(Vec3Fn omega, Vec3Fn a = {});

  Vec3Fn omega() const { return Omega; }
  Vec3Fn omega_dot() const { return differentiate(Omega); }
};

/// Solves q = R q0 + Omega x a_q for the label of U(R)|q0>. The solution is
/// seeded with q = d/dt(R q0 t) and refined by q <- R q0 + Omega x int q
/// until a step changes q by less than atol (at most 32 steps). Throws
/// std::runtime_error on non-convergence or if the final relation misses by
/// atol or more.
Vec3Fn rotating_frame_velocity(const Mat3Fn& R, const Vec3& q0, double atol = 1e-8);
/// |q - R q0 - Omega x a_q| with a_q = int q.
double rotating_frame_residual(const Mat3Fn& R, const Vec3& q0, const Vec3Fn& q);

struct QdotTerms {
  Vec3Fn euler;        // Omegadot x a_q
  Vec3Fn coriolis;     // 2 Omega x q
  Vec3Fn centrifugal;  // -Omega x (Omega x a_q)
  Vec3Fn sum() const { return euler + coriolis + centrifugal; }
};

/// Terms of d/dt q for a rotating-frame label; a_q defaults to int q.
QdotTerms qdot_decomposition(const Vec3Fn& Omega, const Vec3Fn& q, const std::optional<Vec3Fn>& boost = {});

struct GridWavefunction {
  int n = 0;
  double dq = 0.0;
  Mass m;
  std::vector<Complex> values;

  /// Zero wavefunction; n must be odd and >= 3, dq > 0.
  GridWavefunction(int n, double dq, Mass m);

  static GridWavefunction gaussian(int n, double dq, Mass m, double sigma, const Vec3& center = {},
                                   const Vec3& wave_vector = {});

  std::size_t size() const { return values.size(); }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n + j) * n + k;
  }
  double coord(int i) const { return (i - n / 2) * dq; }
  Vec3 label(std::size_t idx) const;

  Complex& operator[](std::size_t idx) { return values[idx]; }
  const Complex& operator[](std::size_t idx) const { return values[idx]; }

  bool same_grid(const GridWavefunction& o) const { return n == o.n && dq == o.dq && m.value() == o.m.value(); }
  /// max |psi| on the boundary faces over max |psi|.
  double boundary_ratio() const;
  /// Throws std::domain_error if boundary_ratio() >= tol.
  void check_decay(double tol = 1e-10) const;
};

using GridVector = std::array<GridWavefunction, 3>;

struct GridOptions {
  /// Accuracy order of the central-difference stencil: 2, 4, 6 or 8.
  int stencil_order = 6;
  Exec exec = Exec::parallel;
  double decay_tol = 1e-10;
};

/// <a|b> with a thread-count-independent summation order.
Complex inner(const GridWavefunction& a, const GridWavefunction& b, Exec exec = Exec::parallel);
double norm(const GridWavefunction& a, Exec exec = Exec::parallel);
/// ||a - b|| / ||b||.
double relative_residual(const GridWavefunction& a, const GridWavefunction& b, Exec exec = Exec::parallel);

/// d psi / d q_axis by central differences, zero outside the grid.
GridWavefunction derivative(const GridWavefunction& psi, int axis, const GridOptions& opt = {});

GridVector momentum_op(const GridWavefunction& psi, const GridOptions& opt = {});
GridVector position_op(const GridWavefunction& psi, const GridOptions& opt = {});

/// H psi = (m q^2/2) psi + m qdot . (X psi) + (m/2) qdot . a_q psi, with
/// qdot from the rotating-frame decomposition at t0 and a_q = q t0 for each
/// grid label. drop_aq removes the (m/2) qdot . a_q term.
GridWavefunction hamiltonian_apply(const FrameSpec& frame, const GridWavefunction& psi, double t0,
                                   const GridOptions& opt = {}, bool drop_aq = false);

enum class A0Variant {
  printed,       // + m a_q . (Omegadot x X)
  substitution,  // - m a_q . (Omegadot x X), from inserting qdot into H
};
const char* to_string(A0Variant v);

struct GaugeFields {
  Mass m;
  double t0 = 0.0;
  Vec3 omega{};
  Vec3 omega_dot{};
  bool drop_aq = false;

  /// Multiplicative part of A at grid label q: m Omega x a_q with a_q = q t0
  /// (zero with drop_aq). The full operator adds 2m Omega x X.
  Vec3 A(const Vec3& q) const;
};

GaugeFields gauge_fields(const FrameSpec& frame, double t0, Mass m, bool drop_aq = false);

/// A psi = 2m Omega x (X psi) + A(q) psi.
GridVector vector_potential_apply(const GaugeFields& f, const GridWavefunction& psi, const GridOptions& opt = {});

/// A0 psi = -2m (Omega x X).(Omega x X psi) - m (Omega x X).(Omega x a_q psi)
///          +/- m a_q . (Omegadot x X psi).
/// In the cross term X acts after the multiplication by a_q. With drop_aq
/// the cross term is +m (Omega x a_q).(Omega x X psi) instead, which is what
/// the substitution gives without the a_q/2 pieces.
GridWavefunction scalar_potential_apply(const GaugeFields& f, A0Variant variant, const GridWavefunction& psi,
                                        const GridOptions& opt = {});

/// A0 psi + (1/2m) sum_k (P_k - A_k)(P_k - A_k) psi.
GridWavefunction gauge_hamiltonian_apply(const GaugeFields& f, A0Variant variant, const GridWavefunction& psi,
                                         const GridOptions& opt = {});

/// Action of H on a single ket |L>: H|L> = E|L> + flow . (label derivative),
/// the flow entering as m flow . X on wavefunctions.
struct KetGenerator {
  Complex scalar;
  Vec3 flow{};
};

/// From the Hamiltonian with Omega of the frame and a_q the ket's boost:
/// E = m q^2/2 + (m/2) qdot . a_q, flow = qdot (rotating-frame decomposition).
KetGenerator hamiltonian_on_ket(const FrameSpec& frame, const VelocityLabel& label, double t0, Mass m);

/// i dU(b)/db at b = 0 from the representation itself, by central differences
/// in b with one Richardson step (step h and h/2).
KetGenerator time_shift_generator(const VelocityLabel& label, double t0, Mass m, PhaseConventions conv = {},
                                  double h = 1e-2);

double generator_residual(const KetGenerator& a, const KetGenerator& b);

using VectorField = std::function<Vec3(const Vec3&)>;

/// Closed-path line integral of A by 4-node Gauss-Legendre quadrature per
/// segment. Throws std::invalid_argument unless path.front() == path.back().
double loop_phase(const VectorField& A, const std::vector<Vec3>& path);

/// Counterclockwise (about normal) rectangle centered at the origin, closed.
/// Throws std::invalid_argument for non-positive sides or a zero normal.
std::vector<Vec3> rectangle_path(const Vec3& normal, double lx, double ly);

/// The field 2m Omega x x.
VectorField rotating_frame_field(Mass m, const Vec3& omega);

/// Stokes value of the loop integral of 2m Omega x x around a flat loop of
/// area S with unit normal n: 4 m S Omega . n.
double sagnac_phase(Mass m, const Vec3& omega, const Vec3& normal, double area);

/// Rows q_x,q_y,re,im for the slice through q_z = 0.
void write_grid_slice_csv(std::ostream& out, const GridWavefunction& psi, bool header = true);

struct LoopPhaseSample {
  double omega = 0.0;
  double area = 0.0;
  double phase = 0.0;
};
void write_loop_sweep_csv(std::ostream& out, const std::vector<LoopPhaseSample>& rows);

}  // namespace galloop
