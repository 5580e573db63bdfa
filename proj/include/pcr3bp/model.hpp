#pragma once

#include "pcr3bp/types.hpp"

namespace pcr3bp::model {

/// Checks both primary distances against cfg.singularity_threshold and
/// throws SingularityError for whichever massive primary is hit.
void require_off_primaries(const Vec2& q, const SystemConfig& cfg);

/// Rotating-frame Hamiltonian
///   H(q,p) = |p|^2/2 - (1-mu)/|q-E| - mu/|q-M| + p1 q2 - p2 q1.
/// -2H is the classical Jacobi integral.
double hamiltonian(const PhasePoint& x, const SystemConfig& cfg);

/// Same value written with the kinetic squares completed:
///   H = ((p1+q2)^2 + (p2-q1)^2)/2 + U(q).
double hamiltonian_completed(const PhasePoint& x, const SystemConfig& cfg);

/// Effective potential U(q) = -(1-mu)/|q-E| - mu/|q-M| - |q|^2/2.
double effective_potential(const Vec2& q, const SystemConfig& cfg);

/// U in the moon-centered polar chart,
///   U(rho,theta) = -mu/rho - (1-mu)/sqrt(rho^2 - 2 rho cos(theta) + 1)
///                  - rho^2/2 + rho cos(theta) (1-mu) - (1-mu)^2/2.
double effective_potential_lunar(const LunarPolar& pt, const SystemConfig& cfg);

/// Closed-form partial derivatives of U in the lunar polar chart.
struct PotentialPartials {
  double dU_drho;
  double dU_dtheta;
  double d2U_drho2;
  double d2U_drhodtheta;
  double d3U_drho3;
};
PotentialPartials potential_partials(const LunarPolar& pt, const SystemConfig& cfg);

/// Gradient of U in Cartesian coordinates.
Vec2 effective_potential_gradient(const Vec2& q, const SystemConfig& cfg);

/// Gradient of H with respect to (q1, q2, p1, p2).
Vec4 hamiltonian_gradient(const PhasePoint& x, const SystemConfig& cfg);

/// Hamiltonian vector field (dH/dp, -dH/dq) with analytic gradients.
Vec4 hamiltonian_vector_field(const PhasePoint& x, const SystemConfig& cfg);

namespace detail {
// Non-throwing evaluation used by grid sweeps: returns -infinity inside
// the singularity threshold instead of raising.
double effective_potential_raw(const Vec2& q, const SystemConfig& cfg);
}  // namespace detail

}  // namespace pcr3bp::model
