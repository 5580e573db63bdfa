#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcr3bp/moser.hpp"
#include "pcr3bp/types.hpp"

namespace pcr3bp::dynamics {

/// Raised when an unregularized trajectory dips below the close-approach
/// threshold; the regularized integrator handles those arcs.
class CloseApproachError : public std::runtime_error {
 public:
  CloseApproachError(Primary which, double t, const PhasePoint& state)
      : std::runtime_error(std::string("close approach to the ") + primary_name(which) +
                           " at t = " + std::to_string(t) +
                           "; switch to the regularized integrator"),
        which_(which),
        t_(t),
        state_(state) {}
  Primary which() const { return which_; }
  double time() const { return t_; }
  const PhasePoint& state() const { return state_; }

 private:
  Primary which_;
  double t_;
  PhasePoint state_;
};

enum class Frame { rotating, regularized };

struct TrajectorySample {
  double t = 0.0;                 // t (rotating) or s (regularized)
  std::vector<double> state;      // (q1,q2,p1,p2) or (xi0..2, eta0..2)
  double conserved = 0.0;         // H or Q
};

struct Trajectory {
  Frame frame = Frame::rotating;
  std::vector<TrajectorySample> samples;

  double conserved_drift() const;  // max |c(t) - c(0)| / max(1, |c(0)|)
  double max_constraint_defect() const;  // regularized frame only
};

struct IntegratorOptions {
  double tolerance = 1e-12;         // per-step error control (abs and rel)
  double close_approach = 0.01;     // unregularized close-approach threshold
  double initial_dt = 1e-3;
  double max_dt = 0.0;              // 0: uncapped; set for dense sampling
  int max_steps = 20'000'000;
};

/// Adaptive integration of the rotating-frame flow over [0, T].
Trajectory integrate_rotating(const PhasePoint& x0, const SystemConfig& cfg, double T,
                              const IntegratorOptions& opts = {});

/// Adaptive integration of the constrained flow of the regularized
/// Kepler Hamiltonian on T*S^2 over [0, S]; pt0 must sit on {Q = 1/2}
/// within 1e-10. With rotating_frame off and k = -1/2 this is the round
/// geodesic flow.
Trajectory integrate_regularized_kepler(const moser::CotangentSpherePoint& pt0, double k,
                                        double S, const IntegratorOptions& opts = {},
                                        bool rotating_frame = true);

/// Same for the regularized three-body Hamiltonian at the chosen
/// primary; pt0 must sit on {Q = (center mass)^2/2} within 1e-10.
Trajectory integrate_regularized_3bp(const moser::CotangentSpherePoint& pt0, double k,
                                     const SystemConfig& cfg, moser::PrimaryChoice choice,
                                     double S, const IntegratorOptions& opts = {});

/// Integrates the same arc through both charts: the rotating flow from
/// x0 (energy k = H(x0)) and the regularized flow from the lifted point,
/// matched through the arc-parameter change ds = dt/|q - center| and the
/// level-set speed factor. Returns the max pointwise deviation in the
/// ambient T*S^2 coordinates at `n_compare` matched parameters.
double correspondence_check(const PhasePoint& x0, const SystemConfig& cfg, double T,
                            moser::PrimaryChoice choice = moser::PrimaryChoice::moon,
                            int n_compare = 64, const IntegratorOptions& opts = {});

struct CollisionPassage {
  Trajectory trajectory;        // regularized
  double max_pullback_p = 0.0;  // max |p| of the rotating-frame image
  double q_drift = 0.0;         // Q drift over the run
  double max_xi0 = 0.0;         // how close the run got to the collision locus
  double energy_defect = 0.0;   // |H - k| at the last sample away from collision
};

/// Launches a zero-angular-momentum orbit toward the moon and follows it
/// through the collision locus in regularized coordinates.
CollisionPassage collision_passage_demo(const SystemConfig& cfg, double k,
                                        double start_distance = 0.005,
                                        const IntegratorOptions& opts = {});

struct PeriodicOrbitHint {
  double q1_lo;         // shooting bracket on the axis, relative positions
  double q1_hi;
  bool retrograde = true;  // momentum branch at the perpendicular start
  double max_half_time = 10.0;
};

struct PeriodicOrbit {
  double q1_start = 0.0;
  double p2_start = 0.0;
  double period = 0.0;
  double closure_defect = 0.0;
  Trajectory trajectory;
};

/// Shooting search for an axis-symmetric closed orbit at energy c:
/// perpendicular launches from the axis, root-finding on the
/// perpendicularity defect at the next axis crossing.
std::optional<PeriodicOrbit> find_symmetric_periodic_orbit(const SystemConfig& cfg, double c,
                                                           const PeriodicOrbitHint& hint,
                                                           const IntegratorOptions& opts = {});

}  // namespace pcr3bp::dynamics
