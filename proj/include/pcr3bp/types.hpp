#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pcr3bp {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

enum class Primary { earth, moon };

inline const char* primary_name(Primary p) {
  return p == Primary::earth ? "earth" : "moon";
}

/// Thrown when an unregularized evaluation gets too close to a primary.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(Primary which, double distance)
      : std::runtime_error(std::string("evaluation within singularity threshold of the ") +
                           primary_name(which) + " (distance " + std::to_string(distance) + ")"),
        which_(which),
        distance_(distance) {}
  Primary which() const { return which_; }
  double distance() const { return distance_; }

 private:
  Primary which_;
  double distance_;
};

/// Thrown when a bracketed root search cannot locate a sign change.
class BracketingError : public std::runtime_error {
 public:
  BracketingError(const std::string& what, double lo, double hi)
      : std::runtime_error(what + " (searched [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "])"),
        lo_(lo),
        hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_;
};

/// Mass ratio and primary geometry. Distances are normalized so the
/// primaries are separated by 1 and the total mass is 1; the frame
/// rotates with unit angular velocity.
struct SystemConfig {
  double mu = 0.0;                       // mass fraction of the moon, in [0,1]
  double singularity_threshold = 1e-9;   // unregularized evaluations error below this

  SystemConfig() = default;
  explicit SystemConfig(double mass_ratio) : mu(mass_ratio) {
    if (!(mu >= 0.0 && mu <= 1.0) || !std::isfinite(mu))
      throw std::invalid_argument("mass ratio must lie in [0,1], got " + std::to_string(mass_ratio));
  }

  Vec2 earth_pos() const { return Vec2(mu, 0.0); }
  Vec2 moon_pos() const { return Vec2(-(1.0 - mu), 0.0); }
};

/// Rotating-frame phase point (q, p).
struct PhasePoint {
  Vec2 q = Vec2::Zero();
  Vec2 p = Vec2::Zero();

  PhasePoint() = default;
  PhasePoint(const Vec2& q_, const Vec2& p_) : q(q_), p(p_) {}
  PhasePoint(double q1, double q2, double p1, double p2) : q(q1, q2), p(p1, p2) {}

  Vec4 as_vec4() const { return Vec4(q.x(), q.y(), p.x(), p.y()); }
  static PhasePoint from_vec4(const Vec4& v) { return PhasePoint(v[0], v[1], v[2], v[3]); }
};

/// Polar position chart centered at the moon. theta = 0 points from the
/// moon toward the earth.
struct LunarPolar {
  double rho = 0.0;
  double theta = 0.0;

  LunarPolar() = default;
  LunarPolar(double rho_, double theta_) : rho(rho_), theta(theta_) {}

  Vec2 to_cartesian(const SystemConfig& cfg) const {
    return cfg.moon_pos() + rho * Vec2(std::cos(theta), std::sin(theta));
  }
  static LunarPolar from_cartesian(const Vec2& q, const SystemConfig& cfg) {
    const Vec2 rel = q - cfg.moon_pos();
    double th = std::atan2(rel.y(), rel.x());
    if (th < 0) th += 2.0 * M_PI;
    return LunarPolar(rel.norm(), th);
  }
};

}  // namespace pcr3bp
