#pragma once

#include <optional>
#include <vector>

#include "pcr3bp/contact.hpp"
#include "pcr3bp/types.hpp"

namespace pcr3bp::neck {

/// Local frame at the collinear point between the primaries.
///
/// Chart: (q', P') = (q - qL, -(p + J qL)) with J = [[0,1],[-1,0]]. The
/// momentum reversal makes the local Hamiltonian expand as the quadratic
/// form Qform (cross terms +q1 P2 - q2 P1) plus a position-only rest
/// term; every neck-side formula below is written in these coordinates.
struct ConleyFrame {
  SystemConfig cfg;
  Vec2 qL = Vec2::Zero();       // position of the collinear point
  double critical_value = 0.0;  // H at its lift
  double rho_h = 0.0;           // Hessian parameter at qL
  Mat2 Qtilde = Mat2::Zero();   // (1/2) diag(-2 rho_h, rho_h)
  Mat4 Qform = Mat4::Zero();    // quadratic Hamiltonian, as (1/2) x^T M x with M stored
  double delta_earth = 0.0;     // qL_1 - earth_1  (< 0)
  double delta_moon = 0.0;      // qL_1 - moon_1   (= d > 0)

  /// Chart maps between global rotating coordinates and local (q', P').
  Vec4 to_local(const PhasePoint& x) const;
  PhasePoint to_global(const Vec4& local) const;

  /// H written in the local chart.
  double local_hamiltonian(const Vec4& local) const;
  /// Gradient of the local Hamiltonian (analytic, through the chart).
  Vec4 local_gradient(const Vec4& local) const;

  /// Quadratic part (1/2) x^T M x.
  double quadratic(const Vec4& local) const;
  /// Rest term R(q') = U(qL + q') - U(qL) - Qtilde(q'): position-only,
  /// higher than second order at the origin.
  double rest(const Vec2& q_local) const;
};

/// Builds the frame and verifies the second-order expansion against a
/// finite-difference Hessian of the chart Hamiltonian (tolerance 1e-6).
ConleyFrame conley_frame(const SystemConfig& cfg);

/// Even C^2 cutoff profile in w: identically 1 on [0, eps1], identically
/// 0 on [eps2, inf), quintic smoothstep in between, f' <= 0 on [0, inf).
struct CutoffProfile {
  double eps1 = 0.01;
  double eps2 = 0.05;

  double value(double w) const;
  double derivative(double w) const;
};

/// Linear Liouville field Y_{a,b} = (a q1, b q2, (1-a) P1, (1-b) P2).
Vec4 weinstein_Y(const Vec4& local, double a, double b);

/// Eigenvalues of the symmetrized quadratic form x -> dQ(Y_{a,b})(x),
/// ascending. All positive certifies transversality of Y through the
/// quadratic model.
Vec4 YQ_definiteness(double a, double b, double rho_h);

/// Primitive of the difference of the two Liouville one-forms,
///   G = (1-a) q1 P1 + (qL_1 - base_1) P1 + (1-b) P2 q2.
enum class BasePrimary { earth, moon };
double primitive_G(const Vec4& local, double a, double b, const ConleyFrame& frame,
                   BasePrimary base = BasePrimary::earth);

/// One-forms alpha0 = i_{X0} omega and alpha1 = i_Y omega in the chart
/// (components ordered dq1, dq2, dP1, dP2); dG = alpha1 - alpha0.
Vec4 alpha0(const Vec4& local, const ConleyFrame& frame, BasePrimary base = BasePrimary::earth);
Vec4 alpha1(const Vec4& local, double a, double b);

/// Radial Liouville field of the chosen primary, in chart coordinates.
Vec4 base_field_X0(const Vec4& local, const ConleyFrame& frame,
                   BasePrimary base = BasePrimary::earth);

struct InterpolatedField {
  Vec4 X;        // the field at the point, chart coordinates
  double dHX;    // dH(X)
  double w;      // q1 - P2 / rho_h
  double f;      // cutoff value
  BasePrimary base;
};

/// The interpolated Liouville field X = (1-f) X0 + f Y + G X_f with
/// f = f(w), w = q1 - P2/rho_h, X_f = f'(d/dP1 + (1/rho_h) d/dq2).
/// The base primary is picked by the sign of w unless forced.
InterpolatedField interpolated_field(const Vec4& local, const CutoffProfile& cutoff,
                                     const ConleyFrame& frame, double a = -1.0, double b = 0.5,
                                     std::optional<BasePrimary> force_base = std::nullopt);

/// Same dH(X) assembled through the Hamiltonian field of the product
/// f*G (analytic product rule); used as an identity cross-check.
double dHX_via_product_rule(const Vec4& local, const CutoffProfile& cutoff,
                            const ConleyFrame& frame, double a = -1.0, double b = 0.5,
                            std::optional<BasePrimary> force_base = std::nullopt);

/// Closed form of dH(X_f)/f':
///   (1 - 1/rho_h) P1 + (q2/rho_h)(mu/|q-M|^3 + (1-mu)/|q-E|^3 - rho_h).
double dH_Xf_closed_form(const Vec4& local, const CutoffProfile& cutoff,
                         const ConleyFrame& frame);

/// Residual of the sphere equation satisfied by {w = delta} on the zero
/// set of the quadratic form:
///   (P1 - q2)^2 + (rho q1 - (rho+1) delta)^2 + (rho-1) q2^2 = (2 rho + 1) delta^2.
/// Points are generated from two sphere angles.
double neck_sphere_residual(double delta, double rho_h, double phi, double psi);

struct AboveCriticalOptions {
  std::vector<double> eps_candidates = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  int n_radial = 300;
  int n_angular = 256;
  int neck_grid = 80;       // neck ball position grid (per axis)
  int n_momentum = 32;      // fiber samples
  double neck_radius = 0.0; // 0: min(0.15, d/2, |qL-E|/2)
  double rho_min = 1e-3;
  double a = -1.0, b = 0.5;
  CutoffProfile cutoff;
  int workers = 0;
};

struct AboveCriticalResult {
  std::vector<contact::CertificationReport> per_candidate;
  double largest_certified = 0.0;  // 0 when nothing certified
  bool any_certified = false;
};

/// For each E = H(L1) + eps, samples the bounded component of {H = E}
/// (moon side, earth side, and the neck ball around L1 with the full
/// momentum fibers), evaluates dH(X) for the glued interpolated field,
/// and reports the largest certified eps. Negative eps values certify
/// below the critical level with the same machinery.
AboveCriticalResult certify_above_critical(const SystemConfig& cfg,
                                           const AboveCriticalOptions& opts = {});

}  // namespace pcr3bp::neck
