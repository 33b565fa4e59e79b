#pragma once

// X-form 4x4 density matrices. The only coherence this model ever populates
// is rho23; rho14 stays identically zero and is not represented.
//
// Basis conventions (fixed once, asserted by tests):
//   Energy: |1> = vacuum, |2> = lower eigenmode occupied (omega1p),
//           |3> = upper eigenmode occupied (omega2p), |4> = both occupied.
//   Local:  |1> = |00>, |2> = site 1 occupied, |3> = site 2 occupied,
//           |4> = |11>.
// The energy->local change of basis uses the site modes written in the
// eigenmode gauge of the generator: site1 = s e2 + c e3, site2 = c e2 - s e3.
// In the symmetric case (c = s = 1/sqrt(2)) this gives
//   l22 = (rho22+rho33)/2 + Re rho23,  l33 = (rho22+rho33)/2 - Re rho23,
//   l23 = (rho22-rho33)/2 - i Im rho23.

#include <array>
#include <complex>

#include "qcorr/model.hpp"

namespace qcorr {

using cplx = std::complex<double>;

enum class Basis { Energy, Local };

struct XState {
  double p11 = 1.0, p22 = 0.0, p33 = 0.0, p44 = 0.0;
  cplx rho23{0.0, 0.0};
  Basis basis = Basis::Energy;

  double trace() const { return p11 + p22 + p33 + p44; }
};

// r multiplies sigma_z on the subsystem whose marginal entropy is S(rho^A);
// s the measured subsystem B. c1 = c2 = 2|rho23| after canonicalization.
struct BlochCoefficients {
  double r, s, c1, c2, c3;
};

// Trace within 1e-10 of 1, populations >= -1e-10, |rho23|^2 <= p22 p33 + 1e-10.
void validate(const XState& st);

// Exact eigenvalues of the X matrix (p11, p44 and the 2x2 block pair), ascending.
std::array<double, 4> spectrum(const XState& st);

inline double min_eigenvalue(const XState& st) { return spectrum(st)[0]; }

// Unitary change of basis energy -> local (general mixing angles).
XState to_local(const XState& st, const EigenData& eig);

// Rotates the coherence to |rho23| (real, nonnegative); populations unchanged.
// rho23 = 0 is returned as-is.
XState canonicalize_phase(const XState& st);

// Requires a canonicalized local state (rho23 real >= 0).
BlochCoefficients bloch_decompose(const XState& st);

// lambda_{1,2} = (1 - c3 +/- sqrt((r-s)^2 + (c1+c2)^2))/4,
// lambda_{3,4} = (1 + c3 +/- sqrt((r+s)^2 + (c1-c2)^2))/4.
std::array<double, 4> eigenvalues(const BlochCoefficients& bc);

}  // namespace qcorr
