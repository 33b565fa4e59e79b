#pragma once

// Closed-form critical values and sweep-based entanglement death/resurrection
// detection.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcorr/model.hpp"

namespace qcorr {

struct CriticalValues {
  double t_critical;              // Delta / ln(1 + sqrt(2))
  std::optional<double> mu_star;  // defined only below t_critical
  double mu_star_min;             // omega - Delta
  double delta_star;              // 2 Gamma
};

// Temperature at which equilibrium concurrence dies: Delta / ln(1 + sqrt 2).
double critical_temperature(double delta);

// Chemical potential above which the asymptotic (mu2 -> infinity) concurrence
// stays positive:
//   mu* = omega + Delta - T1 ln(sqrt(2 e^{4 b Delta} - 4 e^{2 b Delta} + 2)
//                               - e^{2 b Delta} - 1),  b = 1/T1.
// Real only for 0 < T1 < critical_temperature(delta); throws otherwise.
double critical_mu(double t1, double omega, double delta);

// Tunneling rate separating resonance-dominated from coherence-dominated
// correlation generation: Delta* = 2 Gamma.
double critical_tunneling(double gamma);

// All four in one shot; mu_star is absent when t1 is not inside
// (0, critical_temperature).
CriticalValues critical_values(const SystemParams& p, double t1);

// Bosonic effective temperature solving
// n(w, T_eff) = (n(w, T_avg + dT) + n(w, T_avg - dT)) / 2. Requires
// t_avg > delta_t >= 0; equals t_avg at delta_t = 0.
double effective_temperature(double omega_mode, double t_avg, double delta_t);

enum class ScanClassification { NoDeath, SingleDeath, DeathAndResurrection };

const char* to_string(ScanClassification c);

struct ZeroCrossingScan {
  std::string parameter;
  std::vector<double> grid;
  // Parameter intervals bracketing entry into / exit from concurrence > 0,
  // bisected to 1e-6, sorted and disjoint.
  std::vector<std::pair<double, double>> crossings;
  ScanClassification classification;
};

// Evaluates `measure` (a concurrence) along the monotone grid (>= 100 points
// required), treating values <= 1e-9 as dead. A leading dead region does not
// count as a death; NoDeath is also reported when nothing is ever alive.
ZeroCrossingScan zero_crossing_scan(const std::string& parameter,
                                    const std::vector<double>& grid,
                                    const std::function<double(double)>& measure);

// Equilibrium concurrence in closed form (single reservoir at (T, mu);
// symmetric omega1 = omega2 required). Bosonic:
//   max(0, e^{-b w1p} - e^{-b w2p} - 2 e^{-b w}) / ((1+e^{-b w1p})(1+e^{-b w2p}))
// fermionic: max(0, |n1 - n2| - 2 sqrt(n1 n2 (1-n1)(1-n2))).
double equilibrium_concurrence_closed_form(ReservoirKind kind, const SystemParams& p,
                                           double temperature, double mu);

}  // namespace qcorr
