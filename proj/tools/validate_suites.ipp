// Randomized invariant suites behind `qcorr_cli validate`. Included from
// qcorr_cli.cpp inside the anonymous namespace. Deterministic for a fixed
// seed: mt19937_64 with an explicit uniform mapping, fixed output formatting.

class SuiteRng {
 public:
  explicit SuiteRng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = (eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 eng_;
};

struct SuiteResult {
  std::string name;
  bool pass;
  std::string detail;
};

struct RandomDraw {
  SystemParams p;
  ReservoirSpec r1, r2;
};

RandomDraw draw_symmetric(SuiteRng& rng, ReservoirKind kind) {
  RandomDraw d;
  d.p.omega1 = d.p.omega2 = 1.0;
  d.p.delta = rng.uniform(0.05, 0.5);
  d.p.gamma1 = d.p.gamma2 = rng.uniform(0.01, 0.1);
  d.r1.kind = d.r2.kind = kind;
  d.r1.temperature = rng.uniform(0.05, 1.0);
  d.r2.temperature = rng.uniform(0.05, 1.0);
  d.r1.mu = kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0;
  d.r2.mu = kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0;
  return d;
}

XState draw_local_state(SuiteRng& rng) {
  double w[4], tot = 0.0;
  for (double& v : w) {
    v = -std::log(rng.uniform(1e-12, 1.0));
    tot += v;
  }
  XState st;
  st.basis = Basis::Local;
  st.p11 = w[0] / tot;
  st.p22 = w[1] / tot;
  st.p33 = w[2] / tot;
  st.p44 = w[3] / tot;
  st.rho23 = std::polar(rng.uniform(0.0, 1.0) * std::sqrt(st.p22 * st.p33),
                        rng.uniform(0.0, 6.283185307179586));
  return st;
}

double component_diff(const XState& a, const XState& b) {
  double d = std::abs(a.p11 - b.p11);
  d = std::max(d, std::abs(a.p22 - b.p22));
  d = std::max(d, std::abs(a.p33 - b.p33));
  d = std::max(d, std::abs(a.p44 - b.p44));
  d = std::max(d, std::abs(a.rho23 - b.rho23));
  return d;
}

SuiteResult suite_three_route(std::uint64_t seed, int samples) {
  SuiteRng rng(seed);
  double worst_cf = 0.0, worst_rk = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    const auto d = draw_symmetric(rng, kind);
    const EigenData eig = diagonalize(d.p);
    const Generator g = build_generator(d.p, d.r1, d.r2, eig);
    const XState ns = steady_state_nullspace(g).state;
    worst_cf = std::max(worst_cf,
                        component_diff(ns, steady_state_closed_form(d.p, d.r1, d.r2)));
    XState ground;
    ground.basis = Basis::Energy;
    const auto traj =
        time_evolve(g, ground, default_dt(d.p, eig), 4.0 * default_t_end(d.p));
    worst_rk = std::max(worst_rk, component_diff(ns, traj.states.back()));
  }
  SuiteResult r;
  r.name = "three-route-agreement";
  r.pass = worst_cf < 1e-9 && worst_rk < 1e-9;
  r.detail = "max |nullspace-closed| = " + fmt(worst_cf) +
             ", max |nullspace-rk4| = " + fmt(worst_rk) + " (tol 1e-9)";
  return r;
}

SuiteResult suite_conservation(std::uint64_t seed, int samples) {
  SuiteRng rng(seed);
  double worst_col = 0.0, worst_herm = 0.0, worst_eig = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    SystemParams p;
    p.omega1 = rng.uniform(0.6, 1.4);
    p.omega2 = rng.uniform(0.6, 1.4);
    p.delta = rng.uniform(0.05, 0.5);
    p.gamma1 = rng.uniform(0.01, 0.1);
    p.gamma2 = rng.uniform(0.01, 0.1);
    ReservoirSpec r1{kind, rng.uniform(0.05, 1.0),
                     kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0};
    ReservoirSpec r2{kind, rng.uniform(0.05, 1.0),
                     kind == ReservoirKind::Fermionic ? rng.uniform(0.0, 1.5) : 0.0};
    const EigenData eig = diagonalize(p);
    const Generator g = build_generator(p, r1, r2, eig);
    for (int col = 0; col < 6; ++col) {
      cplx sum = 0.0;
      for (int row = 0; row < 4; ++row) sum += g.m(row, col);
      worst_col = std::max(worst_col, std::abs(sum));
    }
    // hermiticity along a short trajectory from a random Hermitian start
    Vector6 x;
    {
      XState st = draw_local_state(rng);
      st.basis = Basis::Energy;
      x = components(st);
    }
    const double dt = default_dt(p, eig);
    for (int step = 0; step < 2000; ++step) {
      const Vector6 k1 = g.m * x;
      const Vector6 k2 = g.m * (x + 0.5 * dt * k1);
      const Vector6 k3 = g.m * (x + 0.5 * dt * k2);
      const Vector6 k4 = g.m * (x + dt * k3);
      x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    worst_herm = std::max(worst_herm, std::abs(x(5) - std::conj(x(4))));
    const XState ss = steady_state_nullspace(g).state;
    worst_eig = std::min(worst_eig, min_eigenvalue(ss));
  }
  SuiteResult r;
  r.name = "trace-hermiticity-positivity";
  r.pass = worst_col < 1e-14 && worst_herm < 1e-12 && worst_eig >= -1e-8;
  r.detail = "max column sum = " + fmt(worst_col) + " (tol 1e-14), max |rho32-conj(rho23)| = "
             + fmt(worst_herm) + " (tol 1e-12), min eigenvalue = " + fmt(worst_eig)
             + " (floor -1e-8)";
  return r;
}

SuiteResult suite_balance(std::uint64_t seed, int samples) {
  SuiteRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    const auto d = draw_symmetric(rng, kind);
    const EigenData eig = diagonalize(d.p);
    const XState ss = steady_state_nullspace(build_generator(d.p, d.r1, d.r2, eig)).state;
    worst = std::max(worst, std::abs(currents(d.p, d.r1, d.r2, eig, ss).balance));
  }
  SuiteResult r;
  r.name = "current-balance";
  r.pass = worst < 1e-10;
  r.detail = "max |J1+J2| = " + fmt(worst) + " (tol 1e-10)";
  return r;
}

SuiteResult suite_cc_oracle(std::uint64_t seed, int samples) {
  SuiteRng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const XState st = canonicalize_phase(draw_local_state(rng));
    const auto rep = discord(st, true, 65);
    worst = std::max(worst, *rep.oracle_gap);
  }
  SuiteResult r;
  r.name = "cc-analytic-vs-oracle";
  r.pass = worst < 1e-3;
  r.detail = "max |cc - cc_bruteforce| = " + fmt(worst) + " (tol 1e-3)";
  return r;
}

SuiteResult suite_leading_order(std::uint64_t seed, int samples) {
  SuiteRng rng(seed);
  // fitted log-log slope over a Gamma-halving ladder, averaged across draws
  const int ladders = std::max(1, std::min(samples, 8));
  double worst_dev = 0.0;
  for (int i = 0; i < ladders; ++i) {
    const auto kind = (i % 2 == 0) ? ReservoirKind::Bosonic : ReservoirKind::Fermionic;
    auto d = draw_symmetric(rng, kind);
    d.p.delta = rng.uniform(0.25, 0.5);
    double lx = 0, ly = 0, lxx = 0, lxy = 0;
    int n = 0;
    for (double gamma : {0.02, 0.01, 0.005, 0.0025}) {
      d.p.gamma1 = d.p.gamma2 = gamma;
      const XState ns =
          steady_state_nullspace(build_generator(d.p, d.r1, d.r2, diagonalize(d.p))).state;
      const auto lo = steady_state_leading_order(d.p, d.r1, d.r2);
      const double err = component_diff(ns, lo.state);
      const double X = std::log(gamma), Y = std::log(err);
      lx += X; ly += Y; lxx += X * X; lxy += X * Y; ++n;
    }
    const double slope = (n * lxy - lx * ly) / (n * lxx - lx * lx);
    worst_dev = std::max(worst_dev, std::abs(slope - 2.0));
  }
  SuiteResult r;
  r.name = "leading-order-g2-scaling";
  r.pass = worst_dev < 0.2;
  r.detail = "max |fitted exponent - 2| = " + fmt(worst_dev) + " (tol 0.2)";
  return r;
}

SuiteResult suite_variant_arbitration(std::uint64_t seed, int samples) {
  SuiteRng rng(seed);
  double worst_corrected = 0.0, best_verbatim = 1e300;
  const int n = std::max(1, std::min(samples, 20));
  for (int i = 0; i < n; ++i) {
    auto d = draw_symmetric(rng, ReservoirKind::Bosonic);
    // make sure the baths actually differ so the suspect element matters
    d.r2.temperature = d.r1.temperature + rng.uniform(0.2, 0.5);
    const EigenData eig = diagonalize(d.p);
    const XState cf = steady_state_closed_form(d.p, d.r1, d.r2);
    const XState corr = steady_state_nullspace(
        build_generator(d.p, d.r1, d.r2, eig, GeneratorVariant::Corrected)).state;
    const XState verb = steady_state_nullspace(
        build_generator(d.p, d.r1, d.r2, eig, GeneratorVariant::Verbatim)).state;
    worst_corrected = std::max(worst_corrected, component_diff(corr, cf));
    best_verbatim = std::min(best_verbatim, component_diff(verb, cf));
  }
  SuiteResult r;
  r.name = "generator-variant-arbitration";
  r.pass = worst_corrected < 1e-10 && best_verbatim > 1e-8;
  r.detail = "corrected variant max gap vs closed form = " + fmt(worst_corrected) +
             " (tol 1e-10); verbatim min gap = " + fmt(best_verbatim) +
             " -> default stays Corrected";
  return r;
}

int cmd_validate(std::uint64_t seed, int samples) {
  if (samples < 1) {
    std::cerr << "usage error: --samples must be >= 1\n";
    return 1;
  }
  std::vector<SuiteResult> results;
  results.push_back(suite_three_route(seed + 1, samples));
  results.push_back(suite_conservation(seed + 2, samples));
  results.push_back(suite_balance(seed + 3, samples));
  results.push_back(suite_cc_oracle(seed + 4, std::max(samples, 1)));
  results.push_back(suite_leading_order(seed + 5, samples));
  results.push_back(suite_variant_arbitration(seed + 6, samples));

  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all suites passed" : "suites failed") << " (seed "
            << seed << ", samples " << samples << ")\n";
  return failures == 0 ? 0 : 1;
}
