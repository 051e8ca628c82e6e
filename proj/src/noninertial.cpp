#include "galloop/noninertial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace galloop {

namespace {

Vec3 scale(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

template <typename F>
void for_each_point(Exec exec, std::size_t count, F&& f) {
  const auto n = static_cast<std::ptrdiff_t>(count);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) f(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) f(static_cast<std::size_t>(i));
  }
}

const std::vector<double>& stencil(int order) {
  // Central-difference weights c_s for s = 1..order/2:
  // f'(x) ~ sum_s c_s (f(x + s h) - f(x - s h)) / h.
  static const std::vector<double> o2{0.5};
  static const std::vector<double> o4{2.0 / 3.0, -1.0 / 12.0};
  static const std::vector<double> o6{3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  static const std::vector<double> o8{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  switch (order) {
    case 2: return o2;
    case 4: return o4;
    case 6: return o6;
    case 8: return o8;
    default: throw std::invalid_argument("stencil order must be 2, 4, 6 or 8, got " + std::to_string(order));
  }
}

void require_same_grid(const GridWavefunction& a, const GridWavefunction& b) {
  if (!a.same_grid(b)) throw std::invalid_argument("grid wavefunctions live on different grids");
}

GridVector zero_vector(const GridWavefunction& like) { return {like, like, like}; }

/// (Omega x X f)_k = (i/m) sum eps_kij Omega_i d_j f.
GridVector omega_cross_x(const Vec3& w, const GridWavefunction& f, const GridOptions& opt) {
  const GridVector x = position_op(f, opt);
  GridVector out = zero_vector(f);
  for_each_point(opt.exec, f.size(), [&](std::size_t p) {
    const Complex x0 = x[0][p], x1 = x[1][p], x2 = x[2][p];
    out[0][p] = w[1] * x2 - w[2] * x1;
    out[1][p] = w[2] * x0 - w[0] * x2;
    out[2][p] = w[0] * x1 - w[1] * x0;
  });
  return out;
}

/// sum_k (Omega x X)_k v_k = sum_k eps_kij Omega_i X_j v_k.
GridWavefunction omega_cross_x_dot(const Vec3& w, const GridVector& v, const GridOptions& opt) {
  const GridWavefunction& like = v[0];
  const double inv_m = 1.0 / like.m.value();
  // Only j != k derivatives enter.
  const GridWavefunction d1v0 = derivative(v[0], 1, opt), d2v0 = derivative(v[0], 2, opt);
  const GridWavefunction d0v1 = derivative(v[1], 0, opt), d2v1 = derivative(v[1], 2, opt);
  const GridWavefunction d0v2 = derivative(v[2], 0, opt), d1v2 = derivative(v[2], 1, opt);
  GridWavefunction out(like.n, like.dq, like.m);
  const Complex i_over_m(0.0, inv_m);
  for_each_point(opt.exec, like.size(), [&](std::size_t p) {
    const Complex s = (w[1] * d2v0[p] - w[2] * d1v0[p]) + (w[2] * d0v1[p] - w[0] * d2v1[p]) +
                      (w[0] * d1v2[p] - w[1] * d0v2[p]);
    out[p] = i_over_m * s;
  });
  return out;
}

}  // namespace

FrameSpec FrameSpec::from_rotation(Mat3Fn r, Vec3Fn a) {
  if (!is_rotation(r)) throw std::invalid_argument("frame R is not a rotation");
  FrameSpec f;
  f.Omega = angular_velocity(r);
  f.R = std::move(r);
  f.a = std::move(a);
  return f;
}

FrameSpec FrameSpec::from_angular_velocity(Vec3Fn omega, Vec3Fn a) {
  FrameSpec f;
  f.Omega = std::move(omega);
  f.a = std::move(a);
  return f;
}

double rotating_frame_residual(const Mat3Fn& R, const Vec3& q0, const Vec3Fn& q) {
  const Vec3Fn rhs = R * Vec3Fn::constant(q0) + cross(angular_velocity(R), antiderivative(q));
  return residual_norm(q - rhs);
}

Vec3Fn rotating_frame_velocity(const Mat3Fn& R, const Vec3& q0, double atol) {
  if (!is_rotation(R)) throw std::invalid_argument("rotating_frame_velocity: R is not a rotation");
  const Vec3Fn omega = angular_velocity(R);
  const Vec3Fn rq0 = R * Vec3Fn::constant(q0);
  // U(R)|q0> carries the boost R q0 t, so q = d/dt(R q0 t) solves the relation.
  Vec3Fn q = differentiate(R * Vec3Fn::linear(q0));
  bool converged = false;
  for (int step = 0; step < 32; ++step) {
    Vec3Fn next = rq0 + cross(omega, antiderivative(q));
    const double change = residual_norm(next - q);
    q = std::move(next);
    if (change < atol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw std::runtime_error("rotating_frame_velocity: no fixed point within 32 steps");
  const double res = rotating_frame_residual(R, q0, q);
  if (res >= atol) throw std::runtime_error("rotating_frame_velocity: residual " + std::to_string(res));
  return q;
}

QdotTerms qdot_decomposition(const Vec3Fn& Omega, const Vec3Fn& q, const std::optional<Vec3Fn>& boost) {
  const Vec3Fn aq = boost ? *boost : antiderivative(q);
  QdotTerms out;
  out.euler = cross(differentiate(Omega), aq);
  out.coriolis = 2.0 * cross(Omega, q);
  out.centrifugal = -cross(Omega, cross(Omega, aq));
  return out;
}

GridWavefunction::GridWavefunction(int n_, double dq_, Mass m_) : n(n_), dq(dq_), m(m_) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("grid size must be odd and >= 3");
  if (!(dq > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  values.assign(static_cast<std::size_t>(n) * n * n, Complex{});
}

GridWavefunction GridWavefunction::gaussian(int n, double dq, Mass m, double sigma, const Vec3& center,
                                            const Vec3& wave_vector) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  GridWavefunction g(n, dq, m);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const Vec3 q = g.label(p);
    const Vec3 d = q - center;
    g.values[p] = std::polar(std::exp(-dot(d, d) / (2.0 * sigma * sigma)), dot(wave_vector, q));
  }
  return g;
}

Vec3 GridWavefunction::label(std::size_t idx) const {
  const int k = static_cast<int>(idx % n);
  const int j = static_cast<int>((idx / n) % n);
  const int i = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
  return {coord(i), coord(j), coord(k)};
}

double GridWavefunction::boundary_ratio() const {
  double peak = 0.0, edge = 0.0;
  for (std::size_t p = 0; p < size(); ++p) {
    const double a = std::abs(values[p]);
    peak = std::max(peak, a);
    const int k = static_cast<int>(p % n);
    const int j = static_cast<int>((p / n) % n);
    const int i = static_cast<int>(p / (static_cast<std::size_t>(n) * n));
    if (i == 0 || j == 0 || k == 0 || i == n - 1 || j == n - 1 || k == n - 1) edge = std::max(edge, a);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

void GridWavefunction::check_decay(double tol) const {
  const double r = boundary_ratio();
  if (r >= tol) {
    throw std::domain_error("wavefunction does not decay at the grid boundary: ratio " + std::to_string(r));
  }
}

Complex inner(const GridWavefunction& a, const GridWavefunction& b, Exec exec) {
  require_same_grid(a, b);
  const std::size_t slab = static_cast<std::size_t>(a.n) * a.n;
  std::vector<Complex> partial(a.n);
  // One partial sum per first-axis slab, then a fixed-order total.
  for_each_point(exec, static_cast<std::size_t>(a.n), [&](std::size_t i) {
    Complex s{};
    for (std::size_t p = i * slab; p < (i + 1) * slab; ++p) s += std::conj(a[p]) * b[p];
    partial[i] = s;
  });
  Complex total{};
  for (const Complex& s : partial) total += s;
  const double cell = a.dq * a.dq * a.dq;
  return total * cell;
}

double norm(const GridWavefunction& a, Exec exec) { return std::sqrt(std::abs(inner(a, a, exec))); }

double relative_residual(const GridWavefunction& a, const GridWavefunction& b, Exec exec) {
  require_same_grid(a, b);
  GridWavefunction d = a;
  for (std::size_t p = 0; p < d.size(); ++p) d[p] -= b[p];
  const double nb = norm(b, exec);
  const double nd = norm(d, exec);
  return nb > 0.0 ? nd / nb : nd;
}

GridWavefunction derivative(const GridWavefunction& psi, int axis, const GridOptions& opt) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("axis must be 0, 1 or 2");
  const std::vector<double>& c = stencil(opt.stencil_order);
  const int n = psi.n;
  const std::size_t stride = axis == 0 ? static_cast<std::size_t>(n) * n : axis == 1 ? n : 1;
  const double inv_h = 1.0 / psi.dq;
  GridWavefunction out(n, psi.dq, psi.m);
  for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
    const int pos = static_cast<int>((p / stride) % n);
    Complex s{};
    for (std::size_t r = 0; r < c.size(); ++r) {
      const int off = static_cast<int>(r) + 1;
      const Complex fwd = pos + off < n ? psi[p + off * stride] : Complex{};
      const Complex bwd = pos - off >= 0 ? psi[p - off * stride] : Complex{};
      s += c[r] * (fwd - bwd);
    }
    out[p] = s * inv_h;
  });
  return out;
}

GridVector momentum_op(const GridWavefunction& psi, const GridOptions& opt) {
  psi.check_decay(opt.decay_tol);
  GridVector out = zero_vector(psi);
  const double m = psi.m.value();
  for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
    const Vec3 q = psi.label(p);
    for (int k = 0; k < 3; ++k) out[k][p] = m * q[k] * psi[p];
  });
  return out;
}

GridVector position_op(const GridWavefunction& psi, const GridOptions& opt) {
  psi.check_decay(opt.decay_tol);
  const Complex i_over_m(0.0, 1.0 / psi.m.value());
  GridVector out{derivative(psi, 0, opt), derivative(psi, 1, opt), derivative(psi, 2, opt)};
  for (auto& comp : out) {
    for_each_point(opt.exec, comp.size(), [&](std::size_t p) { comp[p] *= i_over_m; });
  }
  return out;
}

GridWavefunction hamiltonian_apply(const FrameSpec& frame, const GridWavefunction& psi, double t0,
                                   const GridOptions& opt, bool drop_aq) {
  const GridVector x = position_op(psi, opt);
  const Vec3 w = frame.omega().at(t0);
  const Vec3 wdot = frame.omega_dot().at(t0);
  const double m = psi.m.value();
  GridWavefunction out(psi.n, psi.dq, psi.m);
  for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
    const Vec3 q = psi.label(p);
    const Vec3 aq = scale(t0, q);
    const Vec3 qdot = cross(wdot, aq) + scale(2.0, cross(w, q)) - cross(w, cross(w, aq));
    Complex h = 0.5 * m * dot(q, q) * psi[p];
    h += m * (qdot[0] * x[0][p] + qdot[1] * x[1][p] + qdot[2] * x[2][p]);
    if (!drop_aq) h += 0.5 * m * dot(qdot, aq) * psi[p];
    out[p] = h;
  });
  return out;
}

const char* to_string(A0Variant v) { return v == A0Variant::printed ? "printed" : "substitution"; }

Vec3 GaugeFields::A(const Vec3& q) const {
  if (drop_aq) return {};
  return scale(m.value() * t0, cross(omega, q));
}

GaugeFields gauge_fields(const FrameSpec& frame, double t0, Mass m, bool drop_aq) {
  return {m, t0, frame.omega().at(t0), frame.omega_dot().at(t0), drop_aq};
}

GridVector vector_potential_apply(const GaugeFields& f, const GridWavefunction& psi, const GridOptions& opt) {
  if (psi.m.value() != f.m.value()) throw std::invalid_argument("gauge fields and wavefunction differ in mass");
  GridVector out = omega_cross_x(f.omega, psi, opt);
  const double two_m = 2.0 * f.m.value();
  for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
    const Vec3 a = f.A(psi.label(p));
    for (int k = 0; k < 3; ++k) out[k][p] = two_m * out[k][p] + a[k] * psi[p];
  });
  return out;
}

GridWavefunction scalar_potential_apply(const GaugeFields& f, A0Variant variant, const GridWavefunction& psi,
                                        const GridOptions& opt) {
  const double m = f.m.value();
  const Vec3& w = f.omega;
  // -2m (Omega x X).(Omega x X psi)
  GridWavefunction out = omega_cross_x_dot(w, omega_cross_x(w, psi, opt), opt);
  for_each_point(opt.exec, psi.size(), [&](std::size_t p) { out[p] *= -2.0 * m; });
  if (!f.drop_aq) {
    // -m (Omega x X).(Omega x a_q psi)
    GridVector wa = zero_vector(psi);
    for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
      const Vec3 c = cross(w, scale(f.t0, psi.label(p)));
      for (int k = 0; k < 3; ++k) wa[k][p] = c[k] * psi[p];
    });
    const GridWavefunction cross_term = omega_cross_x_dot(w, wa, opt);
    for_each_point(opt.exec, psi.size(), [&](std::size_t p) { out[p] -= m * cross_term[p]; });
  } else {
    // Without the a_q/2 pieces the centrifugal coupling survives as
    // +m (Omega x a_q).(Omega x X psi), coefficient after X.
    const GridVector wx = omega_cross_x(w, psi, opt);
    for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
      const Vec3 c = cross(w, scale(f.t0, psi.label(p)));
      out[p] += m * (c[0] * wx[0][p] + c[1] * wx[1][p] + c[2] * wx[2][p]);
    });
  }
  // +/- m a_q . (Omegadot x X psi)
  const GridVector wdx = omega_cross_x(f.omega_dot, psi, opt);
  const double sign = variant == A0Variant::printed ? 1.0 : -1.0;
  for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
    const Vec3 aq = scale(f.t0, psi.label(p));
    out[p] += sign * m * (aq[0] * wdx[0][p] + aq[1] * wdx[1][p] + aq[2] * wdx[2][p]);
  });
  return out;
}

GridWavefunction gauge_hamiltonian_apply(const GaugeFields& f, A0Variant variant, const GridWavefunction& psi,
                                         const GridOptions& opt) {
  const double m = f.m.value();
  // v_k = (P_k - A_k) psi
  const GridVector p_psi = momentum_op(psi, opt);
  const GridVector a_psi = vector_potential_apply(f, psi, opt);
  GridVector v = zero_vector(psi);
  for (int k = 0; k < 3; ++k) {
    for_each_point(opt.exec, psi.size(), [&](std::size_t p) { v[k][p] = p_psi[k][p] - a_psi[k][p]; });
  }
  // sum_k (P_k - A_k) v_k = sum_k [m q_k v_k - A(q)_k v_k] - 2m sum_k (Omega x X)_k v_k
  const GridWavefunction curl = omega_cross_x_dot(f.omega, v, opt);
  GridWavefunction out = scalar_potential_apply(f, variant, psi, opt);
  const double inv_2m = 0.5 / m;
  for_each_point(opt.exec, psi.size(), [&](std::size_t p) {
    const Vec3 q = psi.label(p);
    const Vec3 a = f.A(q);
    Complex s = -2.0 * m * curl[p];
    for (int k = 0; k < 3; ++k) s += (m * q[k] - a[k]) * v[k][p];
    out[p] += inv_2m * s;
  });
  return out;
}

KetGenerator hamiltonian_on_ket(const FrameSpec& frame, const VelocityLabel& label, double t0, Mass m) {
  const QdotTerms terms = qdot_decomposition(frame.omega(), label.q, label.boost);
  const Vec3 q = label.q.at(t0);
  const Vec3 aq = label.boost.at(t0);
  const Vec3 qdot = terms.sum().at(t0);
  const double mv = m.value();
  return {Complex(0.5 * mv * dot(q, q) + 0.5 * mv * dot(qdot, aq), 0.0), qdot};
}

KetGenerator time_shift_generator(const VelocityLabel& label, double t0, Mass m, PhaseConventions conv,
                                  double h) {
  const auto apply_shift = [&](double b) {
    const WavepacketState s = apply(LoopElement{TrigPoly{}, LineGroupElement::time_shift(b)},
                                    WavepacketState::single(m, label), conv);
    const KetTerm& k = s.terms.front();
    return std::pair{k.amplitude * std::polar(1.0, k.phase(t0)), k.label.q.at(t0)};
  };
  // i dU/db on |L>: scalar from the phase factor, flow = -(d/db) of the label.
  const auto central = [&](double step) {
    const auto [up, q_up] = apply_shift(step);
    const auto [dn, q_dn] = apply_shift(-step);
    KetGenerator g;
    g.scalar = Complex(0.0, 1.0) * (up - dn) / (2.0 * step);
    g.flow = scale(-1.0 / (2.0 * step), q_up - q_dn);
    return g;
  };
  const KetGenerator coarse = central(h);
  const KetGenerator fine = central(0.5 * h);
  KetGenerator out;
  out.scalar = (4.0 * fine.scalar - coarse.scalar) / 3.0;
  out.flow = scale(1.0 / 3.0, scale(4.0, fine.flow) - coarse.flow);
  return out;
}

double generator_residual(const KetGenerator& a, const KetGenerator& b) {
  return std::max(std::abs(a.scalar - b.scalar), norm(a.flow - b.flow));
}

double loop_phase(const VectorField& A, const std::vector<Vec3>& path) {
  if (path.size() < 2 || path.front() != path.back()) {
    throw std::invalid_argument("loop_phase: path must be closed (first vertex == last vertex)");
  }
  static constexpr std::array<double, 4> nodes{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                               0.8611363115940526};
  static constexpr std::array<double, 4> weights{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                 0.3478548451374538};
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const Vec3& p0 = path[s];
    const Vec3& p1 = path[s + 1];
    const Vec3 mid = scale(0.5, p0 + p1);
    const Vec3 half = scale(0.5, p1 - p0);
    double seg = 0.0;
    for (int k = 0; k < 4; ++k) seg += weights[k] * dot(A(mid + scale(nodes[k], half)), half);
    total += seg;
  }
  return total;
}

std::vector<Vec3> rectangle_path(const Vec3& normal, double lx, double ly) {
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("rectangle sides must be positive");
  const double len = norm(normal);
  if (!(len > 0.0)) throw std::invalid_argument("rectangle normal must be nonzero");
  const Vec3 n = scale(1.0 / len, normal);
  // e1 perpendicular to n, e2 = n x e1 so that (e1, e2, n) is right-handed.
  const Vec3 trial = std::abs(n[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 e1 = cross(trial, n);
  e1 = scale(1.0 / norm(e1), e1);
  const Vec3 e2 = cross(n, e1);
  const Vec3 u = scale(0.5 * lx, e1);
  const Vec3 v = scale(0.5 * ly, e2);
  const Vec3 c0 = Vec3{} - u - v;
  return {c0, u - v, u + v, v - u, c0};
}

VectorField rotating_frame_field(Mass m, const Vec3& omega) {
  const double two_m = 2.0 * m.value();
  return [two_m, omega](const Vec3& x) { return scale(two_m, cross(omega, x)); };
}

double sagnac_phase(Mass m, const Vec3& omega, const Vec3& normal, double area) {
  const double len = norm(normal);
  if (!(len > 0.0)) throw std::invalid_argument("normal must be nonzero");
  return 4.0 * m.value() * area * dot(omega, normal) / len;
}

void write_grid_slice_csv(std::ostream& out, const GridWavefunction& psi, bool header) {
  if (header) out << "q_x,q_y,re,im\n";
  const int k = psi.n / 2;
  char buf[160];
  for (int i = 0; i < psi.n; ++i) {
    for (int j = 0; j < psi.n; ++j) {
      const Complex z = psi[psi.index(i, j, k)];
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", psi.coord(i), psi.coord(j), z.real(), z.imag());
      out << buf;
    }
  }
}

void write_loop_sweep_csv(std::ostream& out, const std::vector<LoopPhaseSample>& rows) {
  out << "omega,area,phase\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.omega, r.area, r.phase);
    out << buf;
  }
}

}  // namespace galloop
