#pragma once

// Two coupled fermion sites, each attached to its own reservoir.
// H_S = omega1 n1 + omega2 n2 + Delta (eta1^dag eta2 + eta2^dag eta1),
// reservoirs either bosonic (mu = 0) or fermionic. Units: hbar = k_B = 1.

#include <stdexcept>
#include <string>

namespace qcorr {

enum class ReservoirKind { Bosonic, Fermionic };

inline const char* to_string(ReservoirKind k) {
  return k == ReservoirKind::Bosonic ? "bosonic" : "fermionic";
}

struct SystemParams {
  double omega1 = 1.0;  // site-1 energy
  double omega2 = 1.0;  // site-2 energy
  double delta = 0.3;   // inter-site tunneling rate
  double gamma1 = 0.05; // decay rate at the lower eigenmode energy
  double gamma2 = 0.05; // decay rate at the upper eigenmode energy
};

struct ReservoirSpec {
  ReservoirKind kind = ReservoirKind::Fermionic;
  double temperature = 0.2;
  double mu = 0.0;  // chemical potential; must be 0 for bosonic
};

// Result of the Bogoliubov rotation diagonalizing H_S.
// omega1p <= omega2p always (lower/upper eigenmode). The mixing angle theta
// satisfies cos(theta) = (omega2 - omega1) / gap, sin(theta) = 2 Delta / gap,
// and c = cos(theta/2), s = sin(theta/2). Symmetric case: c = s = 1/sqrt(2),
// omega1p = omega - |Delta|, omega2p = omega + |Delta|.
struct EigenData {
  double omega1p;  // lower eigenmode energy
  double omega2p;  // upper eigenmode energy
  double c;        // cos(theta/2)
  double s;        // sin(theta/2)
};

void validate(const SystemParams& p);
void validate(const ReservoirSpec& r);

// Mean reservoir occupation at mode energy omega. Bosonic: 1/(e^{w/T}-1)
// with mu forced to 0; fermionic: 1/(e^{(w-mu)/T}+1). T = 0 returns the
// exact limit (0 bosonic; step function for fermionic, 1/2 at w = mu).
double occupation(ReservoirKind kind, double omega, double temperature, double mu);

inline double occupation(const ReservoirSpec& r, double omega) {
  return occupation(r.kind, omega, r.temperature, r.mu);
}

EigenData diagonalize(const SystemParams& p);

}  // namespace qcorr
