#include "qcorr/redfield.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace qcorr {

namespace {

struct Occupations {
  double n1A, n2A;  // reservoir 1 at (omega1p, omega2p)
  double n1B, n2B;  // reservoir 2
};

Occupations occupations(const ReservoirSpec& r1, const ReservoirSpec& r2,
                        const EigenData& eig) {
  return {occupation(r1, eig.omega1p), occupation(r1, eig.omega2p),
          occupation(r2, eig.omega1p), occupation(r2, eig.omega2p)};
}

void check_kinds(const ReservoirSpec& r1, const ReservoirSpec& r2) {
  if (r1.kind != r2.kind)
    throw std::invalid_argument("mixed reservoir statistics are not defined here");
}

void check_symmetric(const SystemParams& p, const char* who) {
  if (p.gamma1 != p.gamma2 || p.omega1 != p.omega2)
    throw std::invalid_argument(std::string(who) +
                                ": requires gamma1 = gamma2 and omega1 = omega2");
}

}  // namespace

Generator build_generator(const SystemParams& p, const ReservoirSpec& r1,
                          const ReservoirSpec& r2, const EigenData& eig,
                          GeneratorVariant variant) {
  validate(p);
  validate(r1);
  validate(r2);
  check_kinds(r1, r2);
  const auto [n1A, n2A, n1B, n2B] = occupations(r1, r2, eig);
  const double G1 = p.gamma1, G2 = p.gamma2;
  const double c = eig.c, s = eig.s;
  const double A1 = s * s * n1A + c * c * n1B;
  const double A2 = c * c * n2A + s * s * n2B;

  double M1111, M1122, M1133, M1123, M2211, M2222, M2244, M2223;
  double M3311, M3333, M3344, M3323, M4422, M4433, M4444, M4423;
  double M2311, M2322, M2333, M2344;
  cplx M2323;

  if (r1.kind == ReservoirKind::Bosonic) {
    M1111 = -2.0 * (G1 * A1 + G2 * A2);
    M1122 = 2.0 * G1 * A1 + 2.0 * G1;
    M1133 = 2.0 * G2 * A2 + 2.0 * G2;
    M1123 = s * c * (G1 * (n1A - n1B) + G2 * (n2A - n2B));
    M2223 = (variant == GeneratorVariant::Corrected)
                ? -M1123 + 2.0 * s * c * G1 * (n1A - n1B)
                : -M1123 + 2.0 * G1 * (n1A - n1B);
    M2211 = M1122 - 2.0 * G1;
    M2222 = M1111 - 2.0 * G1;
    M2244 = M1133;
    M3311 = 2.0 * G2 * A2;
    M3333 = M1111 - 2.0 * G2;
    M3344 = M1122;
    M3323 = -M2223;
    M4422 = M3311;
    M4433 = M2211;
    M4444 = -M1122 - M1133;
    M4423 = -M1123;
    M2311 = M1123;
    M2322 = -M2223;
    M2333 = M2223;
    M2344 = -M1123;
    M2323 = cplx(M1111 - G1 - G2, eig.omega2p - eig.omega1p);
  } else {
    M1111 = -2.0 * (G1 * A1 + G2 * A2);
    M1122 = -2.0 * G1 * A1 + 2.0 * G1;
    M1133 = -2.0 * G2 * A2 + 2.0 * G2;
    M1123 = -s * c * (G1 * (n1A - n1B) + G2 * (n2A - n2B));
    M2211 = -M1122 + 2.0 * G1;
    M2222 = -M1122 + M1133 - 2.0 * G2;
    M2244 = M1133;
    M2223 = -M1123;
    M3311 = 2.0 * G2 * A2;
    M3333 = M1122 - 2.0 * G1 - M1133;
    M3344 = M1122;
    M3323 = -M1123;
    M4422 = M3311;
    M4433 = M2211;
    M4444 = -M1122 - M1133;
    M4423 = M1123;
    M2311 = M2322 = M2333 = M2344 = -M1123;
    M2323 = cplx(-G1 - G2, eig.omega2p - eig.omega1p);
  }

  Generator g;
  g.kind = r1.kind;
  g.variant = variant;
  Matrix6& M = g.m;
  M.setZero();
  M(0, 0) = M1111; M(0, 1) = M1122; M(0, 2) = M1133; M(0, 4) = M1123; M(0, 5) = M1123;
  M(1, 0) = M2211; M(1, 1) = M2222; M(1, 3) = M2244; M(1, 4) = M2223; M(1, 5) = M2223;
  M(2, 0) = M3311; M(2, 2) = M3333; M(2, 3) = M3344; M(2, 4) = M3323; M(2, 5) = M3323;
  M(3, 1) = M4422; M(3, 2) = M4433; M(3, 3) = M4444; M(3, 4) = M4423; M(3, 5) = M4423;
  M(4, 0) = M2311; M(4, 1) = M2322; M(4, 2) = M2333; M(4, 3) = M2344; M(4, 4) = M2323;
  M(5, 0) = M2311; M(5, 1) = M2322; M(5, 2) = M2333; M(5, 3) = M2344;
  M(5, 5) = std::conj(M2323);
  return g;
}

XState state_from_components(const Vector6& v, Basis basis) {
  XState st;
  st.basis = basis;
  st.p11 = v(0).real();
  st.p22 = v(1).real();
  st.p33 = v(2).real();
  st.p44 = v(3).real();
  st.rho23 = v(4);
  return st;
}

SteadyStateResult steady_state_nullspace(const Generator& g) {
  // Real 6-dim system on y = (p11..p44, Re rho23, Im rho23); rho32 eliminated
  // by conjugation. Row k of M contributes M(k,4) rho23 + M(k,5) conj(rho23).
  Eigen::Matrix<double, 6, 6> A;
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 4; ++j) A(k, j) = g.m(k, j).real();
    const cplx a = g.m(k, 4), b = g.m(k, 5);
    A(k, 4) = (a + b).real();
    A(k, 5) = -(a - b).imag();
  }
  // rho23 row, split into real and imaginary parts
  for (int j = 0; j < 4; ++j) {
    A(4, j) = g.m(4, j).real();
    A(5, j) = g.m(4, j).imag();
  }
  {
    const cplx a = g.m(4, 4), b = g.m(4, 5);
    A(4, 4) = (a + b).real();
    A(4, 5) = -(a - b).imag();
    A(5, 4) = (a + b).imag();
    A(5, 5) = (a - b).real();
  }

  // null-space dimension check on the unconstrained system
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd0(A);
  const auto& sv = svd0.singularValues();
  const double tol = 1e-12 * sv(0);
  int deficiency = 0;
  for (int i = 0; i < 6; ++i)
    if (sv(i) <= tol) ++deficiency;
  if (deficiency > 1)
    throw std::runtime_error(
        "steady_state_nullspace: generator null space is degenerate");

  Eigen::Matrix<double, 6, 6> B = A;
  B.row(0) << 1, 1, 1, 1, 0, 0;
  Eigen::Matrix<double, 6, 1> rhs = Eigen::Matrix<double, 6, 1>::Zero();
  rhs(0) = 1.0;
  Eigen::Matrix<double, 6, 1> y = B.partialPivLu().solve(rhs);

  Vector6 x;
  x << y(0), y(1), y(2), y(3), cplx(y(4), y(5)), cplx(y(4), -y(5));
  const double residual = (g.m * x).cwiseAbs().maxCoeff();

  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(B);
  const double cond = svd.singularValues()(0) / svd.singularValues()(5);

  SteadyStateResult out;
  out.state = state_from_components(x, Basis::Energy);
  out.residual = residual;
  out.condition = cond;
  return out;
}

XState steady_state_closed_form(const SystemParams& p, const ReservoirSpec& r1,
                                const ReservoirSpec& r2) {
  validate(p);
  validate(r1);
  validate(r2);
  check_kinds(r1, r2);
  check_symmetric(p, "steady_state_closed_form");
  const EigenData eig = diagonalize(p);
  const auto [n1A, n2A, n1B, n2B] = occupations(r1, r2, eig);
  const double n1p = n1A + n1B, n2p = n2A + n2B;
  const double n1m = n1A - n1B, n2m = n2A - n2B;
  const double G = p.gamma1;
  const double w12 = eig.omega1p - eig.omega2p;
  const double G2 = G * G, W2 = w12 * w12;

  XState st;
  st.basis = Basis::Energy;
  if (r1.kind == ReservoirKind::Fermionic) {
    const double S = n1m + n2m;
    const double M = 4.0 * (4.0 * G2 + W2);
    st.p11 = (G2 * (4.0 * (2 - n1p) * (2 - n2p) - S * S) + (2 - n1p) * (2 - n2p) * W2) / M;
    st.p22 = (G2 * (S * S + 4.0 * n1p * (2 - n2p)) + n1p * (2 - n2p) * W2) / M;
    st.p33 = (G2 * (S * S + 4.0 * (2 - n1p) * n2p) + (2 - n1p) * n2p * W2) / M;
    st.p44 = (G2 * (4.0 * n1p * n2p - S * S) + n1p * n2p * W2) / M;
    st.rho23 = cplx(4.0 * G2 * S, -2.0 * G * S * w12) / M;
    return st;
  }
  // Bosonic. Same structure as the printed expressions up to the corrections
  // required for Tr = 1 and agreement with the generator's null space: the
  // normalization carries +4(1+n1p)(1+n2p) w12^2, and in rho33 the main term
  // enters with + and the n1m^2 / n1m n2m terms with -.
  const double q = n1m * (1 + n2p) + n2m * (1 + n1p);
  const double sum2 = 2 + n1p + n2p;
  const double N = 4.0 * G2 * sum2 * sum2 * (1 + n1p + n2p + n1p * n2p - n1m * n2m)
                   + 4.0 * (1 + n1p) * (1 + n2p) * W2;
  st.p11 = (G2 * (16 + 3 * n2m * n2m + 24 * n2p + n1p * n1p * n1p * (2 + n2p)
                  + 2 * n1p * n1p * (2 + n2p) * (3 + n2p)
                  + n1m * n1m * (3 + n1p + n2p)
                  - n1m * n2m * (10 + n1p * n1p + 2 * n1p * (3 + n2p) + n2p * (6 + n2p))
                  + n2p * (n2m * n2m + 2 * n2p * (6 + n2p))
                  + n1p * (n2m * n2m + (2 + n2p) * (2 + n2p) * (6 + n2p)))
           + (2 + n1p) * (2 + n2p) * W2) / N;
  st.p22 = (G2 * (n1p * n1p * n1p * (2 + n2p) + 2 * n1p * n1p * (2 + n2p) * (2 + n2p)
                  - n2m * n2m * (3 + n2p) + n1m * n1m * (1 + n1p + n2p)
                  + n1p * (-n2m * n2m + (2 + n2p) * (2 + n2p) * (2 + n2p))
                  - n1m * n2m * (2 + n1p * n1p + 2 * n1p * (2 + n2p) + n2p * (4 + n2p)))
           + n1p * (2 + n2p) * W2) / N;
  st.p33 = (G2 * (n2m * n2m * (1 + n1p + n2p) + (2 + n1p) * n2p * sum2 * sum2
                  - n1m * n1m * (3 + n1p + n2p)
                  - n1m * n2m * (2 + n1p * n1p + 2 * n1p * (2 + n2p) + n2p * (4 + n2p)))
           + (2 + n1p) * n2p * W2) / N;
  st.p44 = (G2 * (n1p * n2p * sum2 * sum2 - n1m * n1m * (1 + n1p + n2p)
                  - n2m * n2m * (1 + n1p + n2p)
                  - n1m * n2m * (2 + n1p * n1p + 2 * n1p * (1 + n2p) + n2p * (2 + n2p)))
           + n1p * n2p * W2) / N;
  st.rho23 = cplx(2.0 * G2 * sum2 * q, -2.0 * G * q * w12) / N;
  return st;
}

LeadingOrderResult steady_state_leading_order(const SystemParams& p,
                                              const ReservoirSpec& r1,
                                              const ReservoirSpec& r2) {
  validate(p);
  validate(r1);
  validate(r2);
  check_kinds(r1, r2);
  check_symmetric(p, "steady_state_leading_order");
  const EigenData eig = diagonalize(p);
  const auto [n1A, n2A, n1B, n2B] = occupations(r1, r2, eig);
  const double n1p = n1A + n1B, n2p = n2A + n2B;
  const double n1m = n1A - n1B, n2m = n2A - n2B;
  const double g = p.gamma1 / (eig.omega1p - eig.omega2p);

  LeadingOrderResult out;
  out.g = g;
  out.g_warning = std::abs(g) > 0.25;
  XState& st = out.state;
  st.basis = Basis::Energy;
  if (r1.kind == ReservoirKind::Fermionic) {
    st.p11 = (1 - n1p / 2) * (1 - n2p / 2);
    st.p22 = (n1p / 2) * (1 - n2p / 2);
    st.p33 = (n2p / 2) * (1 - n1p / 2);
    st.p44 = n1p * n2p / 4;
    st.rho23 = cplx(0.0, -(n1m + n2m) * g / 2);
  } else {
    const double den = 4.0 * (1 + n1p) * (1 + n2p);
    st.p11 = (2 + n1p) * (2 + n2p) / den;
    st.p22 = n1p * (2 + n2p) / den;
    st.p33 = (2 + n1p) * n2p / den;
    st.p44 = n1p * n2p / den;
    st.rho23 = cplx(0.0, -2.0 * g * (n1m * (1 + n2p) + n2m * (1 + n1p)) / den);
  }
  return out;
}

Trajectory time_evolve(const Generator& g, const XState& initial, double dt,
                       double t_end, std::size_t max_points) {
  if (initial.basis != Basis::Energy)
    throw std::invalid_argument("time_evolve: initial state must be in the energy basis");
  const double norm_inf = g.m.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(dt > 0.0) || dt * norm_inf >= 0.1)
    throw std::invalid_argument("time_evolve: dt too large for stability (dt*||M|| >= 0.1)");
  const std::size_t nsteps = static_cast<std::size_t>(std::ceil(t_end / dt));
  const std::size_t stride = std::max<std::size_t>(1, nsteps / std::max<std::size_t>(1, max_points));

  Vector6 x = components(initial);
  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(initial);

  double t = 0.0;
  for (std::size_t step = 1; step <= nsteps; ++step) {
    const Vector6 k1 = g.m * x;
    const Vector6 k2 = g.m * (x + 0.5 * dt * k1);
    const Vector6 k3 = g.m * (x + 0.5 * dt * k2);
    const Vector6 k4 = g.m * (x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
    if (!x.allFinite())
      throw std::runtime_error("time_evolve: non-finite state (unstable dt = " +
                               std::to_string(dt) + ")");
    const bool last = (step == nsteps);
    const double drift = (g.m * x).cwiseAbs().maxCoeff();
    if (step % stride == 0 || last || drift < 1e-12) {
      traj.times.push_back(t);
      traj.states.push_back(state_from_components(x, Basis::Energy));
    }
    if (drift < 1e-12) {
      traj.converged = true;
      break;
    }
  }
  return traj;
}

double default_dt(const SystemParams& p, const EigenData& eig) {
  return 0.01 / std::max({p.gamma1, p.gamma2, std::abs(eig.omega1p - eig.omega2p)});
}

double default_t_end(const SystemParams& p) {
  const double gmin = (p.gamma1 == 0.0) ? p.gamma2
                     : (p.gamma2 == 0.0) ? p.gamma1
                                         : std::min(p.gamma1, p.gamma2);
  return 50.0 / gmin;
}

}  // namespace qcorr
