#include <doctest.h>

#include <cmath>

#include "qcorr/redfield.hpp"
#include "test_util.hpp"

using namespace qcorr;

namespace {

SystemParams symm(double delta = 0.3, double gamma = 0.05) {
  SystemParams p;
  p.omega1 = p.omega2 = 1.0;
  p.delta = delta;
  p.gamma1 = p.gamma2 = gamma;
  return p;
}

ReservoirSpec res(ReservoirKind kind, double T, double mu = 0.0) {
  ReservoirSpec r;
  r.kind = kind;
  r.temperature = T;
  r.mu = mu;
  return r;
}

}  // namespace

TEST_CASE("generator: population columns conserve trace") {
  testutil::Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    SystemParams p;
    p.omega1 = rng.uniform(0.6, 1.4);
    p.omega2 = rng.uniform(0.6, 1.4);
    p.delta = rng.uniform(0.05, 0.5);
    p.gamma1 = rng.uniform(0.01, 0.1);
    p.gamma2 = rng.uniform(0.01, 0.1);
    for (auto kind : {ReservoirKind::Bosonic, ReservoirKind::Fermionic}) {
      const double mu1 = kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0;
      const double mu2 = kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0;
      const auto r1 = res(kind, rng.uniform(0.05, 1.0), mu1);
      const auto r2 = res(kind, rng.uniform(0.05, 1.0), mu2);
      for (auto variant : {GeneratorVariant::Corrected, GeneratorVariant::Verbatim}) {
        const Generator g = build_generator(p, r1, r2, diagonalize(p), variant);
        for (int col = 0; col < 6; ++col) {
          cplx sum = 0.0;
          for (int row = 0; row < 4; ++row) sum += g.m(row, col);
          CHECK(std::abs(sum) < 1e-14);
        }
        // rho32 row is the conjugate of the rho23 row (with coherences swapped)
        for (int col = 0; col < 4; ++col)
          CHECK(std::abs(g.m(5, col) - std::conj(g.m(4, col))) < 1e-15);
        CHECK(std::abs(g.m(5, 5) - std::conj(g.m(4, 4))) < 1e-15);
      }
    }
  }
}

TEST_CASE("generator: equilibrium bosonic decouples coherence from populations") {
  const auto p = symm();
  const auto r = res(ReservoirKind::Bosonic, 0.3);
  const Generator g = build_generator(p, r, r, diagonalize(p));
  CHECK(std::abs(g.m(0, 4)) < 1e-16);  // M11_23 = 0 when n^T1 = n^T2
  CHECK(std::abs(g.m(4, 0)) < 1e-16);
  CHECK(std::abs(g.m(4, 1)) < 1e-16);
}

TEST_CASE("generator: printed matrix elements, fermionic") {
  const auto p = symm(0.3, 0.05);
  SystemParams pa = p;
  pa.gamma2 = 0.08;
  const auto r1 = res(ReservoirKind::Fermionic, 0.2, 0.5);
  const auto r2 = res(ReservoirKind::Fermionic, 0.35, 1.1);
  const EigenData eig = diagonalize(pa);
  const Generator g = build_generator(pa, r1, r2, eig);
  const double c = eig.c, s = eig.s;
  const double n1A = occupation(r1, eig.omega1p), n2A = occupation(r1, eig.omega2p);
  const double n1B = occupation(r2, eig.omega1p), n2B = occupation(r2, eig.omega2p);
  const double A1 = s * s * n1A + c * c * n1B;
  const double A2 = c * c * n2A + s * s * n2B;
  const double G1 = pa.gamma1, G2 = pa.gamma2;
  CHECK(g.m(0, 0).real() == doctest::Approx(-2 * (G1 * A1 + G2 * A2)).epsilon(1e-14));
  CHECK(g.m(0, 1).real() == doctest::Approx(2 * G1 * (1 - A1)).epsilon(1e-14));
  CHECK(g.m(0, 4).real()
        == doctest::Approx(-s * c * (G1 * (n1A - n1B) + G2 * (n2A - n2B))).epsilon(1e-13));
  CHECK(g.m(1, 0).real() == doctest::Approx(2 * G1 * A1).epsilon(1e-14));
  CHECK(g.m(4, 4).real() == doctest::Approx(-G1 - G2).epsilon(1e-14));
  CHECK(g.m(4, 4).imag() == doctest::Approx(eig.omega2p - eig.omega1p).epsilon(1e-14));
  // all four population couplings into the coherence are equal for fermions
  CHECK(g.m(4, 0) == g.m(4, 1));
  CHECK(g.m(4, 1) == g.m(4, 2));
  CHECK(g.m(4, 2) == g.m(4, 3));
}

TEST_CASE("generator: mixed reservoir kinds rejected") {
  const auto p = symm();
  CHECK_THROWS_AS(build_generator(p, res(ReservoirKind::Bosonic, 0.2),
                                  res(ReservoirKind::Fermionic, 0.2), diagonalize(p)),
                  std::invalid_argument);
}

TEST_CASE("nullspace: equilibrium bosonic reproduces the Gibbs state") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  for (double T : {0.1, 0.3, 1.0}) {
    const auto r = res(ReservoirKind::Bosonic, T);
    const auto ss = steady_state_nullspace(build_generator(p, r, r, eig));
    const double b = 1.0 / T;
    const double w[4] = {1.0, std::exp(-b * eig.omega1p), std::exp(-b * eig.omega2p),
                         std::exp(-b * (eig.omega1p + eig.omega2p))};
    const double Z = w[0] + w[1] + w[2] + w[3];
    CHECK(std::abs(ss.state.p11 - w[0] / Z) < 1e-10);
    CHECK(std::abs(ss.state.p22 - w[1] / Z) < 1e-10);
    CHECK(std::abs(ss.state.p33 - w[2] / Z) < 1e-10);
    CHECK(std::abs(ss.state.p44 - w[3] / Z) < 1e-10);
    CHECK(std::abs(ss.state.rho23) < 1e-12);
    CHECK(ss.residual < 1e-12);
  }
}

TEST_CASE("nullspace: equilibrium fermionic reproduces the grand-canonical product") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  for (double T : {0.1, 0.3}) {
    for (double mu : {0.0, 0.5, 1.2}) {
      const auto r = res(ReservoirKind::Fermionic, T, mu);
      const auto ss = steady_state_nullspace(build_generator(p, r, r, eig));
      const double n1 = occupation(r, eig.omega1p);
      const double n2 = occupation(r, eig.omega2p);
      CHECK(std::abs(ss.state.p11 - (1 - n1) * (1 - n2)) < 1e-10);
      CHECK(std::abs(ss.state.p22 - n1 * (1 - n2)) < 1e-10);
      CHECK(std::abs(ss.state.p33 - (1 - n1) * n2) < 1e-10);
      CHECK(std::abs(ss.state.p44 - n1 * n2) < 1e-10);
      CHECK(std::abs(ss.state.rho23) < 1e-12);
    }
  }
}

TEST_CASE("closed form: equal fermionic baths give the product form with no coherence") {
  const auto p = symm();
  const auto r = res(ReservoirKind::Fermionic, 0.25, 0.8);
  const XState st = steady_state_closed_form(p, r, r);
  const EigenData eig = diagonalize(p);
  const double n1 = occupation(r, eig.omega1p), n2 = occupation(r, eig.omega2p);
  CHECK(std::abs(st.rho23) < 1e-15);
  CHECK(st.p22 == doctest::Approx(n1 * (1 - n2)).epsilon(1e-12));
}

TEST_CASE("closed form matches the null space (cross-route oracle)") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  SUBCASE("fermionic, the paper's reference point") {
    const auto r1 = res(ReservoirKind::Fermionic, 0.2, 0.5);
    const auto r2 = res(ReservoirKind::Fermionic, 0.2, 1.0);
    const auto ss = steady_state_nullspace(build_generator(p, r1, r2, eig));
    const XState cf = steady_state_closed_form(p, r1, r2);
    CHECK(testutil::max_component_diff(ss.state, cf) < 1e-10);
  }
  SUBCASE("bosonic, unequal temperatures") {
    const auto r1 = res(ReservoirKind::Bosonic, 0.2);
    const auto r2 = res(ReservoirKind::Bosonic, 0.6);
    const auto ss = steady_state_nullspace(build_generator(p, r1, r2, eig));
    const XState cf = steady_state_closed_form(p, r1, r2);
    CHECK(testutil::max_component_diff(ss.state, cf) < 1e-10);
  }
  SUBCASE("randomized sweep, both kinds") {
    testutil::Rng rng(57);
    for (int i = 0; i < 60; ++i) {
      const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
      const auto pt = testutil::random_symmetric_point(rng, kind);
      const EigenData e = diagonalize(pt.params);
      const auto ss = steady_state_nullspace(build_generator(pt.params, pt.r1, pt.r2, e));
      const XState cf = steady_state_closed_form(pt.params, pt.r1, pt.r2);
      CHECK(testutil::max_component_diff(ss.state, cf) < 1e-10);
    }
  }
}

TEST_CASE("generator variant arbitration: only the corrected bosonic element matches") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  const auto r1 = res(ReservoirKind::Bosonic, 0.2);
  const auto r2 = res(ReservoirKind::Bosonic, 0.6);
  const XState cf = steady_state_closed_form(p, r1, r2);
  const auto corrected =
      steady_state_nullspace(build_generator(p, r1, r2, eig, GeneratorVariant::Corrected));
  const auto verbatim =
      steady_state_nullspace(build_generator(p, r1, r2, eig, GeneratorVariant::Verbatim));
  CHECK(testutil::max_component_diff(corrected.state, cf) < 1e-10);
  CHECK(testutil::max_component_diff(verbatim.state, cf) > 1e-5);
  // fermionic: the variants coincide
  const auto f1 = res(ReservoirKind::Fermionic, 0.2, 0.5);
  const auto f2 = res(ReservoirKind::Fermionic, 0.4, 1.0);
  const Generator ga = build_generator(p, f1, f2, eig, GeneratorVariant::Corrected);
  const Generator gb = build_generator(p, f1, f2, eig, GeneratorVariant::Verbatim);
  CHECK((ga.m - gb.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("closed form / leading order preconditions") {
  SystemParams p = symm();
  p.gamma2 = 0.07;
  const auto r = res(ReservoirKind::Fermionic, 0.2, 0.5);
  CHECK_THROWS_AS(steady_state_closed_form(p, r, r), std::invalid_argument);
  CHECK_THROWS_AS(steady_state_leading_order(p, r, r), std::invalid_argument);
  SystemParams q = symm();
  q.omega2 = 1.2;
  CHECK_THROWS_AS(steady_state_closed_form(q, r, r), std::invalid_argument);
}

TEST_CASE("leading order: equal baths have no coherence; hot limit is maximally mixed") {
  const auto p = symm();
  const auto r = res(ReservoirKind::Fermionic, 0.2, 0.5);
  const auto lo = steady_state_leading_order(p, r, r);
  CHECK(std::abs(lo.state.rho23) == 0.0);
  const auto hot = res(ReservoirKind::Fermionic, 1e6, 0.5);
  const auto lo2 = steady_state_leading_order(p, hot, hot);
  for (double v : {lo2.state.p11, lo2.state.p22, lo2.state.p33, lo2.state.p44})
    CHECK(v == doctest::Approx(0.25).epsilon(1e-5));
}

TEST_CASE("leading order: error scales as g^2") {
  // halving g quarters the max component error (+-20%)
  for (auto kind : {ReservoirKind::Bosonic, ReservoirKind::Fermionic}) {
    const auto r1 = res(kind, 0.3, kind == ReservoirKind::Fermionic ? 0.5 : 0.0);
    const auto r2 = res(kind, 0.7, kind == ReservoirKind::Fermionic ? 1.0 : 0.0);
    double err[2];
    int k = 0;
    for (double gamma : {0.02, 0.01}) {
      const auto p = symm(0.3, gamma);
      const auto ss = steady_state_nullspace(build_generator(p, r1, r2, diagonalize(p)));
      const auto lo = steady_state_leading_order(p, r1, r2);
      err[k++] = testutil::max_component_diff(ss.state, lo.state);
    }
    const double ratio = err[0] / err[1];
    CHECK(ratio > 4.0 * 0.8);
    CHECK(ratio < 4.0 * 1.2);
  }
}

TEST_CASE("leading order: warning above |g| = 1/4") {
  const auto p = symm(0.08, 0.05);  // |g| = 0.05/0.16 > 1/4
  const auto r = res(ReservoirKind::Fermionic, 0.2, 0.5);
  CHECK(steady_state_leading_order(p, r, r).g_warning);
  const auto p2 = symm(0.3, 0.05);
  CHECK_FALSE(steady_state_leading_order(p2, r, r).g_warning);
}

TEST_CASE("time evolution: fixed point stays fixed") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  const auto r1 = res(ReservoirKind::Fermionic, 0.2, 0.5);
  const auto r2 = res(ReservoirKind::Fermionic, 0.3, 1.0);
  const Generator g = build_generator(p, r1, r2, eig);
  const auto ss = steady_state_nullspace(g);
  const auto traj = time_evolve(g, ss.state, default_dt(p, eig), 50.0);
  for (const XState& st : traj.states)
    CHECK(testutil::max_component_diff(st, ss.state) < 1e-12);
}

TEST_CASE("time evolution: ground state relaxes to the Gibbs state") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  const auto r = res(ReservoirKind::Bosonic, 0.2);
  const Generator g = build_generator(p, r, r, eig);
  XState ground;
  ground.basis = Basis::Energy;
  const auto traj = time_evolve(g, ground, default_dt(p, eig), default_t_end(p));
  CHECK(traj.converged);
  const auto gibbs = steady_state_nullspace(g).state;
  CHECK(testutil::max_component_diff(traj.states.back(), gibbs) < 1e-9);
  // trace preserved along the way
  for (const XState& st : traj.states) CHECK(std::abs(st.trace() - 1.0) < 1e-12);
}

TEST_CASE("time evolution: route equivalence from an arbitrary start") {
  testutil::Rng rng(77);
  for (int i = 0; i < 6; ++i) {
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    const auto pt = testutil::random_symmetric_point(rng, kind);
    const EigenData eig = diagonalize(pt.params);
    const Generator g = build_generator(pt.params, pt.r1, pt.r2, eig);
    XState init = testutil::random_energy_xstate(rng);
    const auto traj = time_evolve(g, init, default_dt(pt.params, eig),
                                  4.0 * default_t_end(pt.params));
    const auto ss = steady_state_nullspace(g);
    CHECK(testutil::max_component_diff(traj.states.back(), ss.state) < 1e-9);
  }
}

TEST_CASE("time evolution: hermiticity along the trajectory") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  const auto r1 = res(ReservoirKind::Bosonic, 0.2);
  const auto r2 = res(ReservoirKind::Bosonic, 0.7);
  const Generator g = build_generator(p, r1, r2, eig);
  Vector6 x;
  x << 0.4, 0.3, 0.2, 0.1, cplx(0.05, -0.12), cplx(0.05, 0.12);
  const double dt = default_dt(p, eig);
  for (int step = 0; step < 20000; ++step) {
    const Vector6 k1 = g.m * x;
    const Vector6 k2 = g.m * (x + 0.5 * dt * k1);
    const Vector6 k3 = g.m * (x + 0.5 * dt * k2);
    const Vector6 k4 = g.m * (x + dt * k3);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  CHECK(std::abs(x(5) - std::conj(x(4))) < 1e-13);
}

TEST_CASE("time evolution: unstable step size is rejected") {
  const auto p = symm();
  const EigenData eig = diagonalize(p);
  const auto r = res(ReservoirKind::Fermionic, 0.2, 0.5);
  const Generator g = build_generator(p, r, r, eig);
  XState init;
  init.basis = Basis::Energy;
  CHECK_THROWS_AS(time_evolve(g, init, 1e3, 1e4), std::invalid_argument);
}

TEST_CASE("nullspace: degenerate generator is reported") {
  Generator g;  // all-zero matrix: 6-dimensional null space
  CHECK_THROWS_AS(steady_state_nullspace(g), std::runtime_error);
}

TEST_CASE("steady states stay positive over the sweep box") {
  testutil::Rng rng(91);
  for (int i = 0; i < 120; ++i) {
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    const auto pt = testutil::random_symmetric_point(rng, kind);
    const auto ss = steady_state_nullspace(
        build_generator(pt.params, pt.r1, pt.r2, diagonalize(pt.params)));
    CHECK(min_eigenvalue(ss.state) >= -1e-8);
    CHECK_NOTHROW(validate(ss.state));
  }
}
