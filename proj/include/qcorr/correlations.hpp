#pragma once

// Correlation measures on local-basis X states. All entropies are base-2.
//
// Subsystem convention: the X matrix is read as a two-qubit state with
// S(rho^A) = 1 + f(r), S(rho^B) = 1 + f(s), where r = (p11+p22)-(p33+p44)
// and s = (p11-p22)+(p33-p44). The projective measurement in the classical
// correlation acts on subsystem B, the one whose z-measurement splits the
// populations into {p11,p33 | outcome 0} and {p22,p44 | outcome 1}; the
// analytic candidates S1 (z axis) and S2 (equatorial axis) are evaluated for
// exactly that subsystem, and the brute-force oracle sweeps the same one.

#include <optional>

#include "qcorr/states.hpp"

namespace qcorr {

enum class CCBranch { S1, S2 };

struct CorrelationReport {
  double concurrence;
  double qmi;
  double cc;
  double qd;
  double s1;
  double s2;
  CCBranch branch;
  std::optional<double> cc_oracle;
  std::optional<double> oracle_gap;
};

// f(t) = -(1-t)/2 log2(1-t) - (1+t)/2 log2(1+t); f(0) = 0, f(+-1) = -1.
// Single-qubit entropy with Bloch length |t| is 1 + f(t). |t| > 1 throws.
double binary_entropy_f(double t);

// 2 max(0, |rho23| - sqrt(p11 p44)) for this X family (the rho14 branch is
// identically zero here).
double concurrence(const XState& local);

// Requires a canonicalized local state.
double qmi(const XState& local);

struct CCAnalytic {
  double cc, s1, s2;
  CCBranch branch;  // ties resolve to S1
};

CCAnalytic classical_correlation_analytic(const XState& local);

// Exhaustive projective-measurement sweep on subsystem B: grid x (2*grid)
// points over the Bloch sphere followed by alternating golden-section
// refinement to 1e-8 in each angle. Deterministic. grid >= 64 required.
double classical_correlation_bruteforce(const XState& local, int grid = 129);

// Full report; qd = qmi - cc with the analytic cc. With attach_oracle the
// brute-force value and |cc - cc_oracle| are included.
CorrelationReport discord(const XState& local, bool attach_oracle = false,
                          int oracle_grid = 129);

}  // namespace qcorr
