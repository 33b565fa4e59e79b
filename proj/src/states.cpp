#include "qcorr/states.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

void validate(const XState& st) {
  if (std::abs(st.trace() - 1.0) > 1e-10)
    throw std::invalid_argument("XState: trace deviates from 1 beyond 1e-10");
  const double floor = -1e-10;
  if (st.p11 < floor || st.p22 < floor || st.p33 < floor || st.p44 < floor)
    throw std::invalid_argument("XState: negative population beyond tolerance");
  if (std::norm(st.rho23) > st.p22 * st.p33 + 1e-10)
    throw std::invalid_argument("XState: |rho23|^2 exceeds p22*p33 (block positivity)");
}

std::array<double, 4> spectrum(const XState& st) {
  const double mean = 0.5 * (st.p22 + st.p33);
  const double dev = std::hypot(0.5 * (st.p22 - st.p33), std::abs(st.rho23));
  std::array<double, 4> ev{st.p11, st.p44, mean - dev, mean + dev};
  std::sort(ev.begin(), ev.end());
  return ev;
}

XState to_local(const XState& st, const EigenData& eig) {
  if (st.basis != Basis::Energy)
    throw std::invalid_argument("to_local: state must be in the energy basis");
  const double c = eig.c, s = eig.s;
  const double re2 = 2.0 * st.rho23.real();
  XState out;
  out.basis = Basis::Local;
  out.p11 = st.p11;
  out.p44 = st.p44;
  out.p22 = s * s * st.p22 + s * c * re2 + c * c * st.p33;
  out.p33 = c * c * st.p22 - s * c * re2 + s * s * st.p33;
  // row (s, c) . rho . col (c, -s)
  out.rho23 = s * c * (st.p22 - st.p33) - (s * s - c * c) * cplx(st.rho23.real(), 0.0)
              - cplx(0.0, st.rho23.imag());
  return out;
}

XState canonicalize_phase(const XState& st) {
  if (st.basis != Basis::Local)
    throw std::invalid_argument("canonicalize_phase: state must be in the local basis");
  XState out = st;
  out.rho23 = std::abs(st.rho23);
  return out;
}

BlochCoefficients bloch_decompose(const XState& st) {
  if (st.basis != Basis::Local)
    throw std::invalid_argument("bloch_decompose: state must be in the local basis");
  if (st.rho23.imag() != 0.0 || st.rho23.real() < 0.0)
    throw std::invalid_argument("bloch_decompose: state must be canonicalized first");
  BlochCoefficients bc;
  bc.s = (st.p11 - st.p22) + (st.p33 - st.p44);
  bc.r = (st.p11 + st.p22) - (st.p33 + st.p44);
  bc.c1 = bc.c2 = 2.0 * st.rho23.real();
  bc.c3 = (st.p11 - st.p22) - (st.p33 - st.p44);
  return bc;
}

std::array<double, 4> eigenvalues(const BlochCoefficients& bc) {
  const double dm = std::hypot(bc.r - bc.s, bc.c1 + bc.c2);
  const double dp = std::hypot(bc.r + bc.s, bc.c1 - bc.c2);
  return {0.25 * (1.0 - bc.c3 + dm), 0.25 * (1.0 - bc.c3 - dm),
          0.25 * (1.0 + bc.c3 + dp), 0.25 * (1.0 + bc.c3 - dp)};
}

}  // namespace qcorr
