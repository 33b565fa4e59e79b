#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

constexpr double kPi = 3.14159265358979323846;

double xlog2x(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

void require_canonical_local(const XState& st, const char* who) {
  if (st.basis != Basis::Local)
    throw std::invalid_argument(std::string(who) + ": state must be in the local basis");
  if (st.rho23.imag() != 0.0 || st.rho23.real() < 0.0)
    throw std::invalid_argument(std::string(who) + ": state must be canonicalized first");
}

// Von Neumann entropy of an unnormalized 2x2 block given (a, d, |offdiag|),
// returned together with its trace weight: p*S(block/p).
double cond_term(double a, double d, double off_abs) {
  const double p = a + d;
  if (p <= 0.0) return 0.0;
  const double dev = std::hypot(0.5 * (a - d), off_abs);
  const double lp = 0.5 * p + dev, lm = 0.5 * p - dev;
  // p * S = -lp log2(lp/p) - lm log2(lm/p)
  double s = 0.0;
  if (lp > 0.0) s -= lp * std::log2(lp / p);
  if (lm > 0.0) s -= lm * std::log2(std::max(lm, 0.0) / p);
  return s;
}

// Conditional entropy sum_k p_k S(rho_k) for a projective measurement on
// subsystem B along the Bloch direction (alpha, phi). Outcome 0 projects on
// |n> = (cos(a/2), e^{i phi} sin(a/2)), outcome 1 on its complement; the
// post-measurement A block is diag(|b0|^2 p11 + |b1|^2 p22,
// |b0|^2 p33 + |b1|^2 p44) with off-diagonal conj(b1) b0 rho23. For a single
// rho23 coherence the azimuth enters only through |e^{-i phi} rho23|, so the
// objective is phi-flat; the full two-angle sweep is kept anyway.
double conditional_entropy(const XState& st, double alpha, double phi) {
  const double ca = std::cos(0.5 * alpha), sa = std::sin(0.5 * alpha);
  const double w0 = ca * ca, w1 = sa * sa;
  const double off = std::abs(st.rho23 * std::polar(1.0, -phi)) * sa * ca;
  double total = cond_term(w0 * st.p11 + w1 * st.p22, w0 * st.p33 + w1 * st.p44, off);
  total += cond_term(w1 * st.p11 + w0 * st.p22, w1 * st.p33 + w0 * st.p44, off);
  return total;
}

double golden_min_alpha(const XState& st, double lo, double hi, double phi) {
  constexpr double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), d1 = a + gr * (b - a);
  double fc = conditional_entropy(st, c1, phi), fd = conditional_entropy(st, d1, phi);
  while (b - a > 1e-8) {
    if (fc < fd) {
      b = d1; d1 = c1; fd = fc;
      c1 = b - gr * (b - a);
      fc = conditional_entropy(st, c1, phi);
    } else {
      a = c1; c1 = d1; fc = fd;
      d1 = a + gr * (b - a);
      fd = conditional_entropy(st, d1, phi);
    }
  }
  return 0.5 * (a + b);
}

double golden_min_phi(const XState& st, double alpha, double lo, double hi) {
  constexpr double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double c1 = b - gr * (b - a), d1 = a + gr * (b - a);
  double fc = conditional_entropy(st, alpha, c1), fd = conditional_entropy(st, alpha, d1);
  while (b - a > 1e-8) {
    if (fc < fd) {
      b = d1; d1 = c1; fd = fc;
      c1 = b - gr * (b - a);
      fc = conditional_entropy(st, alpha, c1);
    } else {
      a = c1; c1 = d1; fc = fd;
      d1 = a + gr * (b - a);
      fd = conditional_entropy(st, alpha, d1);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double binary_entropy_f(double t) {
  if (std::abs(t) > 1.0 + 1e-12)
    throw std::domain_error("binary_entropy_f: |t| > 1");
  t = std::clamp(t, -1.0, 1.0);
  // 1 + f(t) = S(diag((1-t)/2, (1+t)/2))
  return -xlog2x(0.5 * (1.0 - t)) - xlog2x(0.5 * (1.0 + t)) - 1.0;
}

double concurrence(const XState& local) {
  if (local.basis != Basis::Local)
    throw std::invalid_argument("concurrence: state must be in the local basis");
  const double prod = std::max(local.p11, 0.0) * std::max(local.p44, 0.0);
  return 2.0 * std::max(0.0, std::abs(local.rho23) - std::sqrt(prod));
}

double qmi(const XState& local) {
  require_canonical_local(local, "qmi");
  const BlochCoefficients bc = bloch_decompose(local);
  const auto lam = eigenvalues(bc);
  double sum = 0.0;
  for (double v : lam) sum += xlog2x(std::max(v, 0.0));
  const double val = (1.0 + binary_entropy_f(bc.r)) + (1.0 + binary_entropy_f(bc.s)) + sum;
  return val;
}

CCAnalytic classical_correlation_analytic(const XState& local) {
  require_canonical_local(local, "classical_correlation_analytic");
  const BlochCoefficients bc = bloch_decompose(local);
  const double s = bc.s;
  // S1: z-measurement conditional entropy, written in the populations
  double s1 = 0.0;
  const double d0 = 1.0 + s, d1 = 1.0 - s;
  for (auto [pi, den] : {std::pair{local.p11, d0}, std::pair{local.p33, d0},
                         std::pair{local.p22, d1}, std::pair{local.p44, d1}}) {
    if (pi > 0.0 && den > 0.0) s1 -= pi * std::log2(2.0 * pi / den);
  }
  const double s2 = 1.0 + binary_entropy_f(std::hypot(bc.r, bc.c1));
  CCAnalytic out;
  out.s1 = s1;
  out.s2 = s2;
  out.branch = (s1 <= s2) ? CCBranch::S1 : CCBranch::S2;
  out.cc = (1.0 + binary_entropy_f(bc.r)) - std::min(s1, s2);
  return out;
}

double classical_correlation_bruteforce(const XState& local, int grid) {
  if (local.basis != Basis::Local)
    throw std::invalid_argument("classical_correlation_bruteforce: local basis required");
  if (grid < 64)
    throw std::invalid_argument("classical_correlation_bruteforce: grid too coarse (< 64)");
  const int n_alpha = grid, n_phi = 2 * grid - 1;

  double best = 1e300, best_a = 0.0, best_p = 0.0;
  for (int ia = 0; ia < n_alpha; ++ia) {
    const double alpha = kPi * ia / (n_alpha - 1);
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * kPi * ip / n_phi;
      const double v = conditional_entropy(local, alpha, phi);
      if (v < best) {
        best = v;
        best_a = alpha;
        best_p = phi;
      }
    }
  }
  // alternating 1-d refinement around the grid minimum
  double da = kPi / (n_alpha - 1), dp = 2.0 * kPi / n_phi;
  double alpha = best_a, phi = best_p;
  for (int it = 0; it < 40; ++it) {
    alpha = golden_min_alpha(local, alpha - da, alpha + da, phi);
    phi = golden_min_phi(local, alpha, phi - dp, phi + dp);
    da *= 0.5;
    dp *= 0.5;
    if (da < 1e-9 && dp < 1e-9) break;
  }
  best = std::min(best, conditional_entropy(local, alpha, phi));

  const double r = (local.p11 + local.p22) - (local.p33 + local.p44);
  return (1.0 + binary_entropy_f(r)) - best;
}

CorrelationReport discord(const XState& local, bool attach_oracle, int oracle_grid) {
  const CCAnalytic cca = classical_correlation_analytic(local);
  CorrelationReport rep;
  rep.concurrence = concurrence(local);
  rep.qmi = qmi(local);
  rep.cc = cca.cc;
  rep.qd = rep.qmi - rep.cc;
  rep.s1 = cca.s1;
  rep.s2 = cca.s2;
  rep.branch = cca.branch;
  if (attach_oracle) {
    rep.cc_oracle = classical_correlation_bruteforce(local, oracle_grid);
    rep.oracle_gap = std::abs(rep.cc - *rep.cc_oracle);
  }
  return rep;
}

}  // namespace qcorr
