#pragma once

// Redfield generator for the X block and its steady states.
//
// The master equation couples (rho11, rho22, rho33, rho44, rho23, rho32) and
// nothing else; the generator is the 6x6 matrix M with d/dt x = M x on that
// component vector. Matrix elements follow the closed-form list for bosonic
// and fermionic reservoirs, with occupations evaluated at the eigenmode
// energies: n_k^{Tj} = n(omega_k', T_j, mu_j).
//
// GeneratorVariant: the printed bosonic element M22_23 = -M11_23
// + 2 Gamma1 (n1^T1 - n1^T2) is missing the s*c mixing factor every other
// population<->coherence coupling carries. Both forms are implemented;
// Corrected is the default because only its null space reproduces the
// independent closed-form steady state (see steady_state_closed_form and the
// `validate` CLI suite). The variants coincide for fermionic reservoirs.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/model.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

enum class GeneratorVariant { Corrected, Verbatim };

using Matrix6 = Eigen::Matrix<cplx, 6, 6>;
using Vector6 = Eigen::Matrix<cplx, 6, 1>;

struct Generator {
  Matrix6 m = Matrix6::Zero();
  ReservoirKind kind = ReservoirKind::Fermionic;
  GeneratorVariant variant = GeneratorVariant::Corrected;
};

Generator build_generator(const SystemParams& p, const ReservoirSpec& r1,
                          const ReservoirSpec& r2, const EigenData& eig,
                          GeneratorVariant variant = GeneratorVariant::Corrected);

inline Vector6 components(const XState& st) {
  Vector6 v;
  v << st.p11, st.p22, st.p33, st.p44, st.rho23, std::conj(st.rho23);
  return v;
}

XState state_from_components(const Vector6& v, Basis basis = Basis::Energy);

struct SteadyStateResult {
  XState state;          // energy basis
  double residual;       // ||M x||_inf of the returned solution
  double condition;      // condition number of the constrained linear system
};

// Solves M x = 0 with unit trace and rho32 = conj(rho23). Throws if the
// generator has more than a one-dimensional null space.
SteadyStateResult steady_state_nullspace(const Generator& g);

// Exact closed-form steady state for the symmetric case gamma1 = gamma2 and
// omega1 = omega2; the printed forms do not extend beyond it.
XState steady_state_closed_form(const SystemParams& p, const ReservoirSpec& r1,
                                const ReservoirSpec& r2);

struct LeadingOrderResult {
  XState state;
  double g;          // Gamma / (omega1p - omega2p), negative for Delta > 0
  bool g_warning;    // |g| > 1/4: expansion unreliable
};

// Steady state to leading order in g = Gamma/(omega1p - omega2p). Error is
// O(g^2); the coherence itself is O(g). Same symmetric-case precondition as
// the closed form.
LeadingOrderResult steady_state_leading_order(const SystemParams& p,
                                              const ReservoirSpec& r1,
                                              const ReservoirSpec& r2);

struct Trajectory {
  std::vector<double> times;
  std::vector<XState> states;   // sampled, always includes the final state
  bool converged = false;       // ||M x||_inf < 1e-12 reached
};

// Classical RK4 on the 6-component vector. Requires dt * ||M||_inf < 0.1.
// Stops early once ||M x||_inf < 1e-12. max_points limits stored samples
// (the final state is always kept).
Trajectory time_evolve(const Generator& g, const XState& initial, double dt,
                       double t_end, std::size_t max_points = 2048);

double default_dt(const SystemParams& p, const EigenData& eig);
double default_t_end(const SystemParams& p);

}  // namespace qcorr
