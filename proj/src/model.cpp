#include "qcorr/model.hpp"

#include <cmath>

namespace qcorr {

void validate(const SystemParams& p) {
  if (!(p.omega1 > 0.0) || !(p.omega2 > 0.0))
    throw std::invalid_argument("SystemParams: site energies must be positive");
  if (p.delta == 0.0)
    throw std::invalid_argument("SystemParams: delta = 0 is degenerate (sites decouple)");
  if (p.gamma1 < 0.0 || p.gamma2 < 0.0)
    throw std::invalid_argument("SystemParams: decay rates must be nonnegative");
  if (p.gamma1 == 0.0 && p.gamma2 == 0.0)
    throw std::invalid_argument("SystemParams: at least one decay rate must be positive");
}

void validate(const ReservoirSpec& r) {
  if (r.temperature < 0.0)
    throw std::invalid_argument("ReservoirSpec: temperature must be nonnegative");
  if (r.kind == ReservoirKind::Bosonic && r.mu != 0.0)
    throw std::invalid_argument("ReservoirSpec: bosonic reservoir requires mu = 0");
}

double occupation(ReservoirKind kind, double omega, double temperature, double mu) {
  if (!(omega > 0.0))
    throw std::invalid_argument("occupation: mode energy must be positive");
  if (temperature < 0.0)
    throw std::invalid_argument("occupation: temperature must be nonnegative");
  if (kind == ReservoirKind::Bosonic) {
    if (mu != 0.0)
      throw std::invalid_argument("occupation: bosonic reservoir requires mu = 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);  // overflow gives 1/inf = 0
  }
  if (temperature == 0.0) {
    if (omega < mu) return 1.0;
    if (omega > mu) return 0.0;
    return 0.5;
  }
  const double x = (omega - mu) / temperature;
  if (x >= 0.0) {
    const double t = std::exp(-x);
    return t / (1.0 + t);
  }
  return 1.0 / (std::exp(x) + 1.0);
}

EigenData diagonalize(const SystemParams& p) {
  validate(p);
  const double gap = std::hypot(p.omega1 - p.omega2, 2.0 * p.delta);
  const double cos_theta = (p.omega2 - p.omega1) / gap;
  // half-angle, sign of s fixed by sign(sin theta) = sign(Delta)
  double c = std::sqrt(0.5 * (1.0 + cos_theta));
  double s = std::sqrt(0.5 * (1.0 - cos_theta));
  if (p.delta < 0.0) s = -s;
  EigenData e;
  e.omega1p = 0.5 * (p.omega1 + p.omega2 - gap);
  e.omega2p = 0.5 * (p.omega1 + p.omega2 + gap);
  e.c = c;
  e.s = s;
  return e;
}

}  // namespace qcorr
