#include <cmath>
#include <sstream>

#include "doctest.h"
#include "galloop/noninertial.hpp"
#include "galloop/random_elements.hpp"

using namespace galloop;

namespace {

const Mass m1(1.0);

GridWavefunction packet(int n = 17, double dq = 0.25, double sigma = 0.28, Vec3 c = {0.05, -0.04, 0.03},
                        Vec3 k = {0.6, -0.3, 0.4}) {
  return GridWavefunction::gaussian(n, dq, m1, sigma, c, k);
}

}  // namespace

TEST_CASE("noninertial: rotating-frame velocity") {
  CHECK(approx_equal(rotating_frame_velocity(Mat3Fn::identity(), {1, 2, 3}), Vec3Fn::constant({1, 2, 3}), 1e-12));
  const Mat3Fn r = rotation_about_axis({0, 0, 1}, 0.2, 1.3);
  CHECK(residual_norm(rotating_frame_velocity(r, {0, 0, 0})) == 0.0);
  ElementSampler s(1);
  for (int i = 0; i < 10; ++i) {
    const Mat3Fn R = s.rotation();
    const Vec3 q0 = s.vector();
    const Vec3Fn q = rotating_frame_velocity(R, q0);
    CHECK(rotating_frame_residual(R, q0, q) < 1e-8);
    // The exact solution is the derivative of R q0 t.
    CHECK(approx_equal(q, differentiate(R * Vec3Fn::linear(q0)), 1e-9));
  }
}

TEST_CASE("noninertial: qdot decomposition") {
  const Vec3Fn q = Vec3Fn::constant({1, -1, 0.5});
  const QdotTerms zero = qdot_decomposition(Vec3Fn{}, q);
  CHECK(residual_norm(zero.sum()) == 0.0);
  const QdotTerms c = qdot_decomposition(Vec3Fn::constant({0, 0, 2}), q);
  CHECK(residual_norm(c.euler) == 0.0);
  ElementSampler s(2);
  for (int i = 0; i < 10; ++i) {
    const Mat3Fn R = s.rotation();
    const Vec3Fn q2 = rotating_frame_velocity(R, s.vector());
    const QdotTerms t = qdot_decomposition(angular_velocity(R), q2);
    CHECK(approx_equal(t.sum(), differentiate(q2), 1e-8));
  }
}

TEST_CASE("noninertial: grid construction and decay") {
  CHECK_THROWS_AS(GridWavefunction(4, 0.1, m1), std::invalid_argument);
  CHECK_THROWS_AS(GridWavefunction(5, 0.0, m1), std::invalid_argument);
  CHECK_THROWS_AS(GridWavefunction::gaussian(5, 0.1, m1, 0.0), std::invalid_argument);
  const GridWavefunction wide = GridWavefunction::gaussian(9, 0.1, m1, 5.0);
  CHECK_THROWS_AS(momentum_op(wide), std::domain_error);
  CHECK_THROWS_AS(hamiltonian_apply(FrameSpec::from_angular_velocity({}), wide, 0.0), std::domain_error);
  const GridWavefunction ok = packet();
  CHECK(ok.boundary_ratio() < 1e-10);
  CHECK(ok.coord(ok.n / 2) == 0.0);
}

TEST_CASE("noninertial: momentum and position operators") {
  // P on a point-concentrated wavefunction (zero at the boundary).
  GridWavefunction d(9, 0.5, Mass(2.0));
  const std::size_t idx = d.index(6, 3, 4);
  d[idx] = 1.0;
  const GridVector p = momentum_op(d);
  const Vec3 q = d.label(idx);
  for (int k = 0; k < 3; ++k) CHECK(p[k][idx] == Complex(2.0 * q[k], 0.0));
  // X on a Gaussian: (i/m)(-q/sigma^2) psi.
  const double sigma = 0.5;
  const GridWavefunction g = GridWavefunction::gaussian(137, 0.05, m1, sigma);
  const GridVector x = position_op(g);
  GridWavefunction exact(g.n, g.dq, m1);
  for (std::size_t i = 0; i < g.size(); ++i) exact[i] = Complex(0.0, -g.label(i)[0] / (sigma * sigma)) * g[i];
  CHECK(relative_residual(x[0], exact) < 1e-4);
  CHECK_THROWS_AS(derivative(g, 3), std::invalid_argument);
  GridOptions bad;
  bad.stencil_order = 3;
  CHECK_THROWS_AS(derivative(g, 0, bad), std::invalid_argument);
}

TEST_CASE("noninertial: stencil order improves accuracy") {
  const GridWavefunction g = GridWavefunction::gaussian(41, 0.2, m1, 0.6);
  GridWavefunction exact(g.n, g.dq, m1);
  for (std::size_t i = 0; i < g.size(); ++i) exact[i] = -g.label(i)[1] / 0.36 * g[i];
  double prev = 1.0;
  for (int order : {2, 4, 6, 8}) {
    GridOptions o;
    o.stencil_order = order;
    const double r = relative_residual(derivative(g, 1, o), exact);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("noninertial: serial and parallel kernels agree bitwise") {
  const GridWavefunction g = packet(21, 0.2);
  const FrameSpec f = FrameSpec::from_rotation(rotation_about_axis({0, 0, 1}, 0, 1) * rotation_about_axis({1, 0, 0}, 0, 0.5));
  GridOptions ser, par;
  ser.exec = Exec::serial;
  par.exec = Exec::parallel;
  CHECK(derivative(g, 2, ser).values == derivative(g, 2, par).values);
  CHECK(hamiltonian_apply(f, g, 0.4, ser).values == hamiltonian_apply(f, g, 0.4, par).values);
  const GaugeFields fields = gauge_fields(f, 0.4, m1);
  CHECK(gauge_hamiltonian_apply(fields, A0Variant::substitution, g, ser).values ==
        gauge_hamiltonian_apply(fields, A0Variant::substitution, g, par).values);
  CHECK(inner(g, g, Exec::serial) == inner(g, g, Exec::parallel));
}

TEST_CASE("noninertial: inertial Hamiltonian is the kinetic energy") {
  const GridWavefunction g = packet();
  const GridWavefunction h = hamiltonian_apply(FrameSpec::from_angular_velocity({}), g, 0.7);
  GridWavefunction expect(g.n, g.dq, m1);
  for (std::size_t i = 0; i < g.size(); ++i) expect[i] = 0.5 * dot(g.label(i), g.label(i)) * g[i];
  CHECK(relative_residual(h, expect) < 1e-15);
  const GaugeFields f0 = gauge_fields(FrameSpec::from_angular_velocity({}), 0.7, m1);
  CHECK(relative_residual(gauge_hamiltonian_apply(f0, A0Variant::printed, g), expect) < 1e-14);
  const GridVector a = vector_potential_apply(f0, g);
  for (int k = 0; k < 3; ++k) CHECK(norm(a[k]) == 0.0);
  CHECK(norm(scalar_potential_apply(f0, A0Variant::printed, g)) == 0.0);
}

TEST_CASE("noninertial: Coriolis coupling at t0 = 0") {
  // Constant Omega, a_q = 0: H - kinetic = 2m (Omega x q).X psi.
  const Vec3 w{0.0, 0.0, 1.0};
  const GridWavefunction g = packet();
  const GridWavefunction h = hamiltonian_apply(FrameSpec::from_angular_velocity(Vec3Fn::constant(w)), g, 0.0);
  const GridVector x = position_op(g);
  GridWavefunction expect(g.n, g.dq, m1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 q = g.label(i);
    const Vec3 c = 2.0 * cross(w, q);
    expect[i] = 0.5 * dot(q, q) * g[i] + c[0] * x[0][i] + c[1] * x[1][i] + c[2] * x[2][i];
  }
  CHECK(relative_residual(h, expect) < 1e-14);
}

TEST_CASE("noninertial: gauge form equals the Hamiltonian") {
  ElementSampler s(3);
  const GridWavefunction g = packet();
  for (double t0 : {0.0, 0.5, -0.8}) {
    const FrameSpec f = FrameSpec::from_angular_velocity(Vec3Fn::constant(s.vector()));
    const GridWavefunction h = hamiltonian_apply(f, g, t0);
    const GaugeFields fields = gauge_fields(f, t0, m1);
    CHECK(relative_residual(gauge_hamiltonian_apply(fields, A0Variant::printed, g), h) < 1e-5);
    CHECK(relative_residual(gauge_hamiltonian_apply(fields, A0Variant::substitution, g), h) < 1e-5);
  }
  // Omega = (0, 0, 1 + t): only the substitution-derived sign matches.
  const FrameSpec f = FrameSpec::from_angular_velocity(Vec3Fn{{TrigPoly{}, TrigPoly{}, 1.0 + TrigPoly::t()}});
  const GridWavefunction h = hamiltonian_apply(f, g, 0.8);
  const GaugeFields fields = gauge_fields(f, 0.8, m1);
  CHECK(relative_residual(gauge_hamiltonian_apply(fields, A0Variant::substitution, g), h) < 1e-5);
  CHECK(relative_residual(gauge_hamiltonian_apply(fields, A0Variant::printed, g), h) > 1e-3);
  // Dropping the a_q pieces on both sides keeps the identity.
  const GaugeFields dropped = gauge_fields(f, 0.8, m1, true);
  CHECK(relative_residual(gauge_hamiltonian_apply(dropped, A0Variant::substitution, g),
                          hamiltonian_apply(f, g, 0.8, {}, true)) < 1e-5);
  CHECK(dropped.A({1, 2, 3}) == Vec3{0, 0, 0});
}

TEST_CASE("noninertial: Hermiticity for constant Omega at t0 = 0") {
  const FrameSpec f = FrameSpec::from_angular_velocity(Vec3Fn::constant({0.3, -0.5, 1.0}));
  const GridWavefunction a = packet(), b = packet(17, 0.25, 0.27, {-0.05, 0.02, 0.0}, {0.1, 0.4, -0.2});
  const Complex lhs = inner(a, hamiltonian_apply(f, b, 0.0));
  const Complex rhs = inner(hamiltonian_apply(f, a, 0.0), b);
  CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-5);
}

TEST_CASE("noninertial: Hamiltonian generates time shifts") {
  ElementSampler s(4);
  for (int i = 0; i < 5; ++i) {
    const Mat3Fn R = s.rotation();
    const Vec3 q0 = s.vector();
    const VelocityLabel l{rotating_frame_velocity(R, q0), R * Vec3Fn::linear(q0)};
    const double t0 = s.uniform(-1, 1);
    const KetGenerator fd = time_shift_generator(l, t0, m1);
    const KetGenerator h = hamiltonian_on_ket(FrameSpec::from_rotation(R), l, t0, m1);
    CHECK(generator_residual(fd, h) < 1e-6);
  }
  // Inertial frame: energy m q^2/2 on a constant ket, no flow.
  const VelocityLabel c = VelocityLabel::constant({1, 0, 2});
  const KetGenerator h0 = hamiltonian_on_ket(FrameSpec::from_angular_velocity({}), c, 0.3, m1);
  CHECK(h0.scalar.real() == doctest::Approx(2.5));
  CHECK(norm(h0.flow) == 0.0);
}

TEST_CASE("noninertial: loop phase") {
  const auto square = rectangle_path({0, 0, 1}, 1.0, 1.0);
  CHECK(loop_phase([](const Vec3&) { return Vec3{1, 2, 3}; }, square) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(loop_phase(rotating_frame_field(m1, {0, 0, 1}), square) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(sagnac_phase(m1, {0, 0, 1}, {0, 0, 1}, 1.0) == 4.0);
  // Normal perpendicular to Omega.
  CHECK(std::abs(loop_phase(rotating_frame_field(m1, {0, 0, 1}), rectangle_path({1, 0, 0}, 2.0, 1.0))) < 1e-12);
  const double base = loop_phase(rotating_frame_field(Mass(0.7), {0.2, 0.3, 0.9}), rectangle_path({0.1, 0.2, 1}, 1.3, 0.4));
  CHECK(loop_phase(rotating_frame_field(Mass(1.4), {0.2, 0.3, 0.9}), rectangle_path({0.1, 0.2, 1}, 1.3, 0.4)) ==
        doctest::Approx(2 * base).epsilon(1e-12));
  CHECK(loop_phase(rotating_frame_field(Mass(0.7), {0.4, 0.6, 1.8}), rectangle_path({0.1, 0.2, 1}, 1.3, 0.4)) ==
        doctest::Approx(2 * base).epsilon(1e-12));
  CHECK(loop_phase(rotating_frame_field(Mass(0.7), {0.2, 0.3, 0.9}), rectangle_path({0.1, 0.2, 1}, 2.6, 0.4)) ==
        doctest::Approx(2 * base).epsilon(1e-12));
  CHECK_THROWS_AS(loop_phase(rotating_frame_field(m1, {0, 0, 1}), {{0, 0, 0}, {1, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(rectangle_path({0, 0, 1}, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rectangle_path({0, 0, 0}, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("noninertial: CSV output") {
  std::ostringstream slice;
  write_grid_slice_csv(slice, packet(5, 0.25, 0.3, {}, {}));
  std::string line;
  std::istringstream in(slice.str());
  std::getline(in, line);
  CHECK(line == "q_x,q_y,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);
  std::ostringstream sweep;
  write_loop_sweep_csv(sweep, {{1.0, 2.0, 8.0}});
  CHECK(sweep.str().rfind("omega,area,phase", 0) == 0);
}
