#include "qcorr/analysis.hpp"

#include <cmath>

namespace qcorr {

namespace {
const double kLn1pSqrt2 = std::log(1.0 + std::sqrt(2.0));
}

double critical_temperature(double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("critical_temperature: delta must be positive");
  return delta / kLn1pSqrt2;
}

double critical_mu(double t1, double omega, double delta) {
  if (!(delta > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("critical_mu: omega and delta must be positive");
  if (!(t1 > 0.0))
    throw std::invalid_argument("critical_mu: temperature must be positive");
  if (t1 >= critical_temperature(delta))
    throw std::domain_error(
        "critical_mu: no real solution at or above the critical temperature");
  // mu* = omega + Delta - T ln(sqrt(2) (q-1) - q - 1), q = e^{2 Delta / T}.
  // Rewritten with q factored out so large 2 Delta / T cannot overflow:
  //   mu* = omega - Delta + T ln(1+sqrt(2)) - T log1p(-(1+sqrt 2)^2 / q).
  const double s2 = std::sqrt(2.0);
  const double z = (1.0 + s2) * (1.0 + s2) * std::exp(-2.0 * delta / t1);
  return omega - delta + t1 * kLn1pSqrt2 - t1 * std::log1p(-z);
}

double critical_tunneling(double gamma) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("critical_tunneling: gamma must be positive");
  return 2.0 * gamma;
}

CriticalValues critical_values(const SystemParams& p, double t1) {
  validate(p);
  CriticalValues cv;
  cv.t_critical = critical_temperature(p.delta);
  cv.mu_star_min = p.omega1 - p.delta;
  cv.delta_star = critical_tunneling(p.gamma1);
  if (t1 > 0.0 && t1 < cv.t_critical)
    cv.mu_star = critical_mu(t1, p.omega1, p.delta);
  return cv;
}

double effective_temperature(double omega_mode, double t_avg, double delta_t) {
  if (!(omega_mode > 0.0))
    throw std::invalid_argument("effective_temperature: mode energy must be positive");
  if (!(t_avg > delta_t) || delta_t < 0.0)
    throw std::invalid_argument("effective_temperature: requires t_avg > delta_t >= 0");
  const double nsum = occupation(ReservoirKind::Bosonic, omega_mode, t_avg + delta_t, 0.0)
                      + occupation(ReservoirKind::Bosonic, omega_mode, t_avg - delta_t, 0.0);
  return omega_mode / std::log1p(2.0 / nsum);
}

const char* to_string(ScanClassification c) {
  switch (c) {
    case ScanClassification::NoDeath: return "no-death";
    case ScanClassification::SingleDeath: return "single-death";
    case ScanClassification::DeathAndResurrection: return "death-and-resurrection";
  }
  return "?";
}

ZeroCrossingScan zero_crossing_scan(const std::string& parameter,
                                    const std::vector<double>& grid,
                                    const std::function<double(double)>& measure) {
  if (grid.size() < 2)
    throw std::invalid_argument("zero_crossing_scan: need at least 2 grid points");
  if (grid.size() < 100)
    throw std::invalid_argument("zero_crossing_scan: grid too coarse (< 100 points)");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("zero_crossing_scan: grid must be strictly increasing");

  constexpr double kAlive = 1e-9;
  ZeroCrossingScan scan;
  scan.parameter = parameter;
  scan.grid = grid;

  std::vector<bool> alive(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) alive[i] = measure(grid[i]) > kAlive;

  auto bisect = [&](double lo, double hi, bool lo_alive) {
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      if ((measure(mid) > kAlive) == lo_alive)
        lo = mid;
      else
        hi = mid;
    }
    return std::pair<double, double>{lo, hi};
  };

  int deaths = 0, resurrections = 0;
  bool was_alive = alive[0];
  bool seen_alive = alive[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (alive[i] != was_alive) {
      scan.crossings.push_back(bisect(grid[i - 1], grid[i], was_alive));
      if (was_alive) {
        ++deaths;
      } else if (seen_alive) {
        ++resurrections;
      }
      was_alive = alive[i];
      seen_alive = seen_alive || alive[i];
    }
  }

  if (deaths == 0)
    scan.classification = ScanClassification::NoDeath;
  else if (resurrections == 0)
    scan.classification = ScanClassification::SingleDeath;
  else
    scan.classification = ScanClassification::DeathAndResurrection;
  return scan;
}

double equilibrium_concurrence_closed_form(ReservoirKind kind, const SystemParams& p,
                                           double temperature, double mu) {
  validate(p);
  if (p.omega1 != p.omega2)
    throw std::invalid_argument(
        "equilibrium_concurrence_closed_form: requires omega1 = omega2");
  if (!(temperature >= 0.0))
    throw std::invalid_argument("equilibrium_concurrence_closed_form: T < 0");
  const EigenData eig = diagonalize(p);
  if (kind == ReservoirKind::Bosonic) {
    if (mu != 0.0)
      throw std::invalid_argument(
          "equilibrium_concurrence_closed_form: bosonic requires mu = 0");
    if (temperature == 0.0) return 0.0;  // localized ground state
    const double b = 1.0 / temperature;
    const double e1 = std::exp(-b * eig.omega1p);
    const double e2 = std::exp(-b * eig.omega2p);
    const double em = std::exp(-b * p.omega1);
    return std::max(0.0, e1 - e2 - 2.0 * em) / ((1.0 + e1) * (1.0 + e2));
  }
  const double n1 = occupation(ReservoirKind::Fermionic, eig.omega1p, temperature, mu);
  const double n2 = occupation(ReservoirKind::Fermionic, eig.omega2p, temperature, mu);
  return std::max(0.0, std::abs(n1 - n2)
                           - 2.0 * std::sqrt(n1 * n2 * (1.0 - n1) * (1.0 - n2)));
}

}  // namespace qcorr
