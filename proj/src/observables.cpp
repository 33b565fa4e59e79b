#include "qcorr/observables.hpp"

#include <cmath>

namespace qcorr {

double energy_current(const SystemParams& p, const ReservoirSpec& r1,
                      const ReservoirSpec& r2, const EigenData& eig,
                      const XState& st, int which) {
  if (st.basis != Basis::Energy)
    throw std::invalid_argument("energy_current: state must be in the energy basis");
  if (which != 1 && which != 2)
    throw std::invalid_argument("energy_current: reservoir index must be 1 or 2");
  if (r1.kind != r2.kind)
    throw std::invalid_argument("energy_current: mixed reservoir statistics");
  const ReservoirSpec& res = (which == 1) ? r1 : r2;
  const double n1 = occupation(res, eig.omega1p);
  const double n2 = occupation(res, eig.omega2p);
  const double w1 = eig.omega1p, w2 = eig.omega2p;
  const double G1 = p.gamma1, G2 = p.gamma2;
  const double c = eig.c, s = eig.s;
  // reservoir 1 couples the eigenmodes with weights (s, c), reservoir 2 with
  // (c, -s); squares and the cross product follow.
  const double a2 = (which == 1) ? s * s : c * c;
  const double b2 = (which == 1) ? c * c : s * s;
  const double cross = (which == 1) ? s * c : -s * c;
  const double sgn = (res.kind == ReservoirKind::Bosonic) ? +1.0 : -1.0;

  double j = -2.0 * w1 * G1 * a2 *
             ((1.0 + sgn * n1) * (st.p22 + st.p44) - n1 * (st.p11 + st.p33));
  j += -2.0 * w2 * G2 * b2 *
       ((1.0 + sgn * n2) * (st.p33 + st.p44) - n2 * (st.p11 + st.p22));
  // population<->coherence part; the occupation factors cancel for fermions
  // and add up to (1 + 2n) for bosons.
  const double K1 = (res.kind == ReservoirKind::Bosonic) ? 1.0 + 2.0 * n1 : 1.0;
  const double K2 = (res.kind == ReservoirKind::Bosonic) ? 1.0 + 2.0 * n2 : 1.0;
  j += -cross * 2.0 * st.rho23.real() * (w2 * G1 * K1 + w1 * G2 * K2);
  return j;
}

CurrentReport currents(const SystemParams& p, const ReservoirSpec& r1,
                       const ReservoirSpec& r2, const EigenData& eig,
                       const XState& st) {
  CurrentReport rep;
  rep.j1 = energy_current(p, r1, r2, eig, st, 1);
  rep.j2 = energy_current(p, r1, r2, eig, st, 2);
  rep.balance = rep.j1 + rep.j2;
  return rep;
}

std::pair<double, double> site_populations(const XState& local) {
  if (local.basis != Basis::Local)
    throw std::invalid_argument("site_populations: state must be in the local basis");
  return {local.p22 + local.p44, local.p33 + local.p44};
}

}  // namespace qcorr
