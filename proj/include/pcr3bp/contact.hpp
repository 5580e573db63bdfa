#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcr3bp/moser.hpp"
#include "pcr3bp/types.hpp"

namespace pcr3bp::contact {

enum class Verdict { certified, violated, inconclusive };

const char* verdict_name(Verdict v);

/// Result of a grid certification sweep. `certified` requires the
/// minimum margin to clear `margin_tolerance`; any negative sample means
/// `violated`; anything in between is inconclusive-near-boundary.
struct CertificationReport {
  std::string quantity;
  std::map<std::string, double> grid;      // ranges and resolutions
  double min_margin = 0.0;
  std::vector<double> argmin;              // location of the minimum
  std::size_t samples = 0;
  double margin_tolerance = 1e-10;
  Verdict verdict = Verdict::inconclusive;
  double wall_seconds = 0.0;

  static Verdict classify(double min_margin, double tol) {
    if (min_margin < 0.0) return Verdict::violated;
    return min_margin > tol ? Verdict::certified : Verdict::inconclusive;
  }
};

/// dH(X) for the Liouville field X = (q - M) d/dq.
double liouville_X_of_H(const PhasePoint& x, const SystemConfig& cfg);

/// Momentum-free transversality margin on the moon component:
///   dU/drho - sqrt(2(c - U))
/// at a lunar polar position with U <= c. Positive values certify
/// dH(X) > 0 on the whole momentum fiber (Cauchy-Schwarz).
double moon_sufficient_margin(const LunarPolar& pt, double c, const SystemConfig& cfg);

/// Appendix-style Cartesian margin in a chart with a primary of mass
/// m_origin at the origin and the other primary at (1,0):
///   r dU/dr + s dU/ds - sqrt(r^2+s^2) sqrt(2(k - U)).
double chart_margin(double r, double s, double k, double m_origin);

/// Earth-component margin at earth-centered coordinates (r toward the
/// moon, s perpendicular): the chart margin with origin mass 1 - mu.
double earth_cartesian_margin(double r, double s, double k, const SystemConfig& cfg);

struct CertifyOptions {
  int n_radial = 1000;
  int n_angular = 1000;
  int boundary_rings = 10;      // geometric refinement toward the Hill boundary
  double boundary_gap = 0.02;   // fraction of the lobe radius covered by the rings
  double rho_min = 1e-3;
  int fiber_positions = 1000;   // 4D spot check: positions
  int fiber_momenta = 32;       // 4D spot check: momenta per position
  unsigned fiber_seed = 7;
  int workers = 0;              // 0: default_worker_count()
  bool strict = false;          // first-order Lipschitz gate + subdivision
};

/// Sweeps the moon Hill component at energy c < H(L1) and certifies
/// moon_sufficient_margin > 0, with an independent 4D spot check of
/// dH(X) on sampled momentum fibers. The report's argmin is (rho, theta);
/// grid extras carry the 4D spot-check minimum.
CertificationReport certify_moon_component(double c, const SystemConfig& cfg,
                                           const CertifyOptions& opts = {});

/// Earth-side analogue through the mu <-> 1-mu relabeling.
CertificationReport certify_earth_component(double c, const SystemConfig& cfg,
                                            const CertifyOptions& opts = {});

/// Radial derivative f'(1) of the fiber scaling through a point of the
/// regularized Kepler level { Q = 1/2 } on the xi1 = 0 slice:
///   f'(1) = [1+(1-xi0)(a+2 eta1 xi2)] / [1+(1-xi0)(a+eta1 xi2)],
/// a = -1/2 - k. Nonvanishing (positive) f'(1) certifies transversality
/// of eta d/deta.
double kepler_starshaped_fprime(const moser::CotangentSpherePoint& pt, double k);

/// Dense scan of the slice; returns the minimal f'(1).
CertificationReport starshaped_slice_scan(double k, int n_theta = 400, int n_dir = 64,
                                          int workers = 0);

/// g_a(theta) = (1+(1-cos t)a)^2 / (4 sin t (1-cos t)) on (0, pi).
double g_a(double theta, double a);
/// h(t) = (2-t)^4 / (16 (1-t^2)(1-t)^2) on (-1, 1), with closed-form h'.
double h_of(double t);
double h_prime(double t);

struct FiberMargin {
  double XQ;        // dQ(eta d/deta), analytic
  double eta_norm;  // should stay <= 2 on the level in the zone
  double f_abs;     // should stay >= mu/2 in the zone
};

/// Fiberwise Liouville margin X(Q), X = eta d/deta, at a point of the
/// level { Q = (center mass)^2/2 } inside the near-collision zone
/// |eta|(1 - xi0) < eps.
FiberMargin regularized_fiber_margin(const moser::CotangentSpherePoint& pt, double k,
                                     const SystemConfig& cfg, double eps,
                                     moser::PrimaryChoice choice = moser::PrimaryChoice::moon);

struct FiberZoneScan {
  double min_XQ;
  double max_eta_norm;
  double min_f_abs;
  std::size_t samples;
};

/// Samples the zone deterministically and reports the extremes of the
/// margin chain components.
FiberZoneScan fiber_zone_scan(const SystemConfig& cfg, double k, double eps, int samples,
                              unsigned seed = 99,
                              moser::PrimaryChoice choice = moser::PrimaryChoice::moon);

}  // namespace pcr3bp::contact
