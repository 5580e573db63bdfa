#pragma once

#include <vector>

#include "pcr3bp/types.hpp"

namespace pcr3bp::moser {

/// Point of T*S^2 stored in ambient coordinates: |xi| = 1, <xi,eta> = 0.
struct CotangentSpherePoint {
  Vec3 xi = Vec3(0.0, 1.0, 0.0);
  Vec3 eta = Vec3::Zero();

  CotangentSpherePoint() = default;
  CotangentSpherePoint(const Vec3& xi_, const Vec3& eta_) : xi(xi_), eta(eta_) {}

  double sphere_defect() const { return std::abs(xi.norm() - 1.0); }
  double orthogonality_defect() const { return std::abs(xi.dot(eta)); }
  /// Re-imposes |xi| = 1 and <xi,eta> = 0.
  void project_constraints() {
    xi.normalize();
    eta -= xi.dot(eta) * xi;
  }
};

/// Image of a phase point under the switch p = -x, q - center = y.
struct StereoPoint {
  Vec2 x = Vec2::Zero();  // former momentum, negated
  Vec2 y = Vec2::Zero();  // former position, shifted to the chosen primary

  StereoPoint() = default;
  StereoPoint(const Vec2& x_, const Vec2& y_) : x(x_), y(y_) {}
};

/// Canonical switch (q,p) -> (x,y) = (-p, q - center), and its inverse.
StereoPoint switch_coordinates(const PhasePoint& x, const Vec2& center);
PhasePoint switch_coordinates_inverse(const StereoPoint& s, const Vec2& center);

/// Inverse stereographic lift T*R^2 -> T*S^2:
///   xi0 = (|x|^2-1)/(|x|^2+1), xi_k = x_k (1-xi0),
///   eta0 = <x,y>,  eta_k = y_k (|x|^2+1)/2 - <x,y> x_k.
CotangentSpherePoint stereo_lift(const StereoPoint& s);

/// Chart map x_k = xi_k/(1-xi0), y_k = eta_k (1-xi0) + xi_k eta0.
/// Requires xi0 != 1 (the collision locus maps to infinity).
StereoPoint stereo_project(const CotangentSpherePoint& pt);

/// Norm relation |eta| = (|x|^2+1)|y|/2 = |y|/(1-xi0); returns the worst
/// of the two defects for a lifted point.
double norm_relation_defect(const StereoPoint& s, const CotangentSpherePoint& pt);

/// Finite-difference check that the lift pulls the canonical two-form on
/// T*S^2 (in a tangent chart) back to dx ^ dy. Returns the max defect
/// over `samples` pseudo-random points.
double symplecticity_check(int samples, unsigned seed = 12345);

/// Regularized rotating-Kepler Hamiltonian on T*S^2,
///   Q = |eta|^2 [1 + (1-xi0)(-k - 1/2 + eta1 xi2 - eta2 xi1)]^2 / 2.
/// The dynamically relevant level is Q = 1/2. With rotating_frame off
/// the angular-momentum term is dropped; at k = -1/2 that variant is the
/// round geodesic Hamiltonian |eta|^2/2.
double kepler_regularized_Q(const CotangentSpherePoint& pt, double k,
                            bool rotating_frame = true);

enum class PrimaryChoice { moon, earth };

/// Mass sitting at the chosen regularization center.
double center_mass(const SystemConfig& cfg, PrimaryChoice choice);

/// Level value of Q corresponding to { H = k }: (center mass)^2 / 2.
double regularized_level(const SystemConfig& cfg, PrimaryChoice choice);

struct RegularizedQ {
  double Q;       // |eta|^2 f^2 / 2
  double factor;  // f(xi, eta)
};

/// Regularized three-body Hamiltonian at the chosen primary.
/// factor = 1 + (1-xi0)(xi2 eta1 - xi1 eta2) + (xi2 c1 - xi1 c2)
///          - (k+1/2)(1-xi0) - m_other (1-xi0)/|y + c - o|
/// with c the center, o the other primary, and y reconstructed from
/// (xi,eta). Errors if the other primary is hit.
RegularizedQ r3bp_regularized_Q(const CotangentSpherePoint& pt, double k,
                                const SystemConfig& cfg, PrimaryChoice choice);

/// One-step composition: rotating phase point -> switch at the chosen
/// primary -> stereographic lift.
CotangentSpherePoint lift_from_rotating(const PhasePoint& x, const SystemConfig& cfg,
                                        PrimaryChoice choice);
PhasePoint project_to_rotating(const CotangentSpherePoint& pt, const SystemConfig& cfg,
                               PrimaryChoice choice);

struct CurvatureSample {
  Vec3 xi;
  double curvature;
};

/// Gaussian curvature of the conformal metric
///   g_k = g_st / [1 + (1-xi0)(-k-1/2)]^2
/// estimated by finite differences of the log conformal factor in the
/// stereographic chart, at `samples` pseudo-random chart points.
std::vector<CurvatureSample> conformal_metric_curvature(double k, int samples,
                                                        unsigned seed = 2024);

}  // namespace pcr3bp::moser
