#include <doctest.h>

#include <cmath>

#include "qcorr/observables.hpp"
#include "qcorr/redfield.hpp"
#include "test_util.hpp"

using namespace qcorr;

namespace {

struct Setup {
  SystemParams p;
  ReservoirSpec r1, r2;
  EigenData eig;
  XState steady;
};

Setup make(ReservoirKind kind, double delta, double gamma, double t1, double mu1,
           double t2, double mu2) {
  Setup s;
  s.p.omega1 = s.p.omega2 = 1.0;
  s.p.delta = delta;
  s.p.gamma1 = s.p.gamma2 = gamma;
  s.r1 = {kind, t1, mu1};
  s.r2 = {kind, t2, mu2};
  s.eig = diagonalize(s.p);
  s.steady = steady_state_nullspace(build_generator(s.p, s.r1, s.r2, s.eig)).state;
  return s;
}

}  // namespace

TEST_CASE("currents vanish at equilibrium") {
  for (auto kind : {ReservoirKind::Bosonic, ReservoirKind::Fermionic}) {
    const double mu = kind == ReservoirKind::Fermionic ? 0.6 : 0.0;
    const auto s = make(kind, 0.3, 0.05, 0.25, mu, 0.25, mu);
    const auto rep = currents(s.p, s.r1, s.r2, s.eig, s.steady);
    CHECK(std::abs(rep.j1) < 1e-12);
    CHECK(std::abs(rep.j2) < 1e-12);
  }
}

TEST_CASE("bosonic current flows in from the hot reservoir and grows with the bias") {
  double prev = 0.0;
  for (double dT : {0.1, 0.2, 0.4, 0.8}) {
    const auto s = make(ReservoirKind::Bosonic, 0.3, 0.05, 0.2 + dT, 0.0, 0.2, 0.0);
    const double j1 = energy_current(s.p, s.r1, s.r2, s.eig, s.steady, 1);
    CHECK(j1 > 0.0);
    CHECK(j1 > prev);
    prev = j1;
  }
}

TEST_CASE("smaller tunneling saturates at a smaller asymptotic current") {
  auto asymptotic = [](double delta) {
    const auto s = make(ReservoirKind::Fermionic, delta, 0.05, 0.2, 0.5, 0.2, 40.0);
    return energy_current(s.p, s.r1, s.r2, s.eig, s.steady, 2);
  };
  const double j_small = asymptotic(0.05);
  const double j_large = asymptotic(0.3);
  CHECK(j_small > 0.0);
  CHECK(j_large > j_small);
}

TEST_CASE("steady-state balance over a randomized sweep") {
  testutil::Rng rng(41);
  for (int i = 0; i < 80; ++i) {
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    const auto pt = testutil::random_symmetric_point(rng, kind);
    const EigenData eig = diagonalize(pt.params);
    const auto ss = steady_state_nullspace(build_generator(pt.params, pt.r1, pt.r2, eig));
    const auto rep = currents(pt.params, pt.r1, pt.r2, eig, ss.state);
    CHECK(std::abs(rep.balance) < 1e-10);
  }
}

TEST_CASE("currents also balance with asymmetric site energies and rates") {
  testutil::Rng rng(43);
  for (int i = 0; i < 40; ++i) {
    SystemParams p;
    p.omega1 = rng.uniform(0.7, 1.3);
    p.omega2 = rng.uniform(0.7, 1.3);
    p.delta = rng.uniform(0.05, 0.4);
    p.gamma1 = rng.uniform(0.01, 0.1);
    p.gamma2 = rng.uniform(0.01, 0.1);
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    ReservoirSpec r1{kind, rng.uniform(0.05, 1.0),
                     kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0};
    ReservoirSpec r2{kind, rng.uniform(0.05, 1.0),
                     kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0};
    const EigenData eig = diagonalize(p);
    const auto ss = steady_state_nullspace(build_generator(p, r1, r2, eig));
    const auto rep = currents(p, r1, r2, eig, ss.state);
    CHECK(std::abs(rep.balance) < 1e-10);
  }
}

TEST_CASE("currents are continuous in temperature away from T = 0") {
  const double h = 1e-6;
  const auto s0 = make(ReservoirKind::Fermionic, 0.3, 0.05, 0.3, 0.5, 0.2, 1.0);
  const auto s1 = make(ReservoirKind::Fermionic, 0.3, 0.05, 0.3 + h, 0.5, 0.2, 1.0);
  const double j0 = energy_current(s0.p, s0.r1, s0.r2, s0.eig, s0.steady, 1);
  const double j1 = energy_current(s1.p, s1.r1, s1.r2, s1.eig, s1.steady, 1);
  CHECK(std::abs(j1 - j0) < 1e-4);
}

TEST_CASE("energy_current input checking") {
  const auto s = make(ReservoirKind::Fermionic, 0.3, 0.05, 0.2, 0.5, 0.2, 1.0);
  XState local = to_local(s.steady, s.eig);
  CHECK_THROWS_AS(energy_current(s.p, s.r1, s.r2, s.eig, local, 1), std::invalid_argument);
  CHECK_THROWS_AS(energy_current(s.p, s.r1, s.r2, s.eig, s.steady, 3), std::invalid_argument);
}

TEST_CASE("site populations: reference states") {
  XState st;
  st.basis = Basis::Local;
  st.p11 = st.p22 = st.p33 = 0.0;
  st.p44 = 1.0;
  auto [n1, n2] = site_populations(st);
  CHECK(n1 == doctest::Approx(1.0));
  CHECK(n2 == doctest::Approx(1.0));

  st.p11 = st.p22 = st.p33 = st.p44 = 0.25;
  std::tie(n1, n2) = site_populations(st);
  CHECK(n1 == doctest::Approx(0.5));
  CHECK(n2 == doctest::Approx(0.5));

  st.basis = Basis::Energy;
  CHECK_THROWS_AS(site_populations(st), std::invalid_argument);
}

TEST_CASE("hot first reservoir piles fermions on the first site") {
  const auto s = make(ReservoirKind::Bosonic, 0.3, 0.05, 0.6, 0.0, 0.2, 0.0);
  const XState local = to_local(s.steady, s.eig);
  const auto [n1, n2] = site_populations(local);
  CHECK(n1 > n2);
  CHECK(local.p22 > local.p33);
  // and below the occupation it would have in equilibrium at T1 (net outflow)
  const auto eq = make(ReservoirKind::Bosonic, 0.3, 0.05, 0.6, 0.0, 0.6, 0.0);
  const auto [n1eq, n2eq] = site_populations(to_local(eq.steady, eq.eig));
  CHECK(n1 < n1eq);
}
