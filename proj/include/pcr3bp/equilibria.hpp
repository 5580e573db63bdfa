#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcr3bp/types.hpp"

namespace pcr3bp::equilibria {

/// On-axis potential between the primaries, u(rho) = U(rho, 0) in the
/// lunar polar chart, together with its first two derivatives.
struct AxisPotential {
  double value;
  double derivative;
  double second_derivative;
};
AxisPotential axis_potential_u(double rho, const SystemConfig& cfg);

/// Distance from the moon to the collinear point between the primaries:
/// the unique root of u'(rho) = 0 on (0,1), bisected to 1e-13 and
/// polished by Newton steps.
double find_L1_distance(const SystemConfig& cfg);

/// Mass ratio recovered from the L1 distance,
///   mu = -(d^5 - 3 d^4 + 3 d^3) / (d^4 - 2 d^3 - d^2 + 2 d - 1).
double mu_from_d(double d);

struct LagrangePoint {
  int index = 0;          // 1..5
  Vec2 position = Vec2::Zero();
  Vec4 lift = Vec4::Zero();  // (l1, l2, -l2, l1)
  double value = 0.0;        // H at the lift (= U at the position)
};

struct LagrangeSet {
  std::array<LagrangePoint, 5> points;
  double d = 0.0;  // |l1 - M|, radius of the ball B about the moon

  const LagrangePoint& operator[](int index) const { return points.at(index - 1); }
};

/// All five critical points of U with their phase-space lifts and values.
LagrangeSet find_lagrange_points(const SystemConfig& cfg);

/// Hill-region membership: U(q) <= c.
bool hill_membership(const Vec2& q, double c, const SystemConfig& cfg);

enum class HillLabel : std::uint8_t { forbidden, earth, moon, merged, unbounded };

const char* hill_label_name(HillLabel l);

/// Flood-filled classification of {U <= c} on a uniform grid.
struct HillRegion {
  double energy = 0.0;
  double box_radius = 3.0;
  int resolution = 800;
  std::vector<HillLabel> labels;  // row-major, labels[iy*resolution+ix]
  int bounded_components = 0;
  bool merged = false;

  double cell_size() const { return 2.0 * box_radius / resolution; }
  Vec2 cell_center(int ix, int iy) const {
    return Vec2(-box_radius + (ix + 0.5) * cell_size(), -box_radius + (iy + 0.5) * cell_size());
  }
  HillLabel label_at(const Vec2& q) const;
};

struct HillGridSpec {
  double box_radius = 3.0;
  int resolution = 800;
};

/// Classifies the allowed region at energy c into earth / moon / merged
/// bounded components and the unbounded component (8-connected flood
/// fill). c within 1e-9 of the first critical value is rejected: the
/// pinch point makes connectivity grid-dependent there.
HillRegion hill_components(double c, const SystemConfig& cfg, const HillGridSpec& grid = {});

/// Smallest positive root of r^3 + 2 k r + 2 = 0; exists for k <= -3/2
/// and bounds the compact Hill region of the rotating Kepler problem.
double kepler_hill_radius(double k);

/// Hessian parameter mu/|q - M|^3 + (1-mu)/|q - E|^3.
double rho_hessian(const Vec2& q, const SystemConfig& cfg);

}  // namespace pcr3bp::equilibria
