#pragma once

// Energy currents between reservoirs and the system, and site occupations.

#include "qcorr/model.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct CurrentReport {
  double j1;       // energy current from reservoir 1 into the system
  double j2;       // from reservoir 2
  double balance;  // j1 + j2; |balance| <= 1e-10 for a steady state
};

// J_i = Tr{ D_i[rho] H_S } for the reservoir-i dissipator, evaluated in
// closed form on the energy-basis components. which is 1 or 2; reservoir 2
// uses the mixing weights (c, -s) in place of (s, c) and its own (T, mu).
double energy_current(const SystemParams& p, const ReservoirSpec& r1,
                      const ReservoirSpec& r2, const EigenData& eig,
                      const XState& energy_state, int which);

CurrentReport currents(const SystemParams& p, const ReservoirSpec& r1,
                       const ReservoirSpec& r2, const EigenData& eig,
                       const XState& energy_state);

// Occupation probability of each site: (l22 + l44, l33 + l44).
std::pair<double, double> site_populations(const XState& local);

}  // namespace qcorr
