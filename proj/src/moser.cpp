#include "pcr3bp/moser.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pcr3bp::moser {

StereoPoint switch_coordinates(const PhasePoint& x, const Vec2& center) {
  return StereoPoint(-x.p, x.q - center);
}

PhasePoint switch_coordinates_inverse(const StereoPoint& s, const Vec2& center) {
  return PhasePoint(s.y + center, -s.x);
}

CotangentSpherePoint stereo_lift(const StereoPoint& s) {
  const double x2 = s.x.squaredNorm();
  const double xi0 = (x2 - 1.0) / (x2 + 1.0);
  const double xy = s.x.dot(s.y);
  CotangentSpherePoint pt;
  pt.xi = Vec3(xi0, s.x.x() * (1.0 - xi0), s.x.y() * (1.0 - xi0));
  pt.eta = Vec3(xy, s.y.x() * (1.0 + x2) / 2.0 - xy * s.x.x(),
                s.y.y() * (1.0 + x2) / 2.0 - xy * s.x.y());
  return pt;
}

StereoPoint stereo_project(const CotangentSpherePoint& pt) {
  const double om = 1.0 - pt.xi.x();
  if (om <= 0.0 || !std::isfinite(1.0 / om))
    throw std::domain_error("stereo_project undefined at xi0 = 1 (collision locus)");
  StereoPoint s;
  s.x = Vec2(pt.xi.y(), pt.xi.z()) / om;
  s.y = Vec2(pt.eta.y() * om + pt.xi.y() * pt.eta.x(),
             pt.eta.z() * om + pt.xi.z() * pt.eta.x());
  return s;
}

double norm_relation_defect(const StereoPoint& s, const CotangentSpherePoint& pt) {
  const double n = pt.eta.norm();
  const double d1 = std::abs(n - (s.x.squaredNorm() + 1.0) * s.y.norm() / 2.0);
  const double d2 = std::abs(n - s.y.norm() / (1.0 - pt.xi.x()));
  return std::max(d1, d2);
}

double symplecticity_check(int samples, unsigned seed) {
  // Pull the ambient two-form sum_k dxi_k ^ deta_k back along the lift
  // and compare with dx ^ dy. Central differences, step 1e-5.
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  const double h = 1e-5;

  auto lift_at = [](const Vec4& z) {
    return stereo_lift(StereoPoint(Vec2(z[0], z[1]), Vec2(z[2], z[3])));
  };

  Mat4 Om = Mat4::Zero();
  Om(0, 2) = 1;
  Om(1, 3) = 1;
  Om(2, 0) = -1;
  Om(3, 1) = -1;

  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec4 z;
    for (int i = 0; i < 4; ++i) z[i] = box(rng);
    Eigen::Matrix<double, 3, 4> dxi, deta;
    for (int i = 0; i < 4; ++i) {
      Vec4 zp = z, zm = z;
      zp[i] += h;
      zm[i] -= h;
      const CotangentSpherePoint pp = lift_at(zp), pm = lift_at(zm);
      dxi.col(i) = (pp.xi - pm.xi) / (2.0 * h);
      deta.col(i) = (pp.eta - pm.eta) / (2.0 * h);
    }
    const Mat4 pull = dxi.transpose() * deta - deta.transpose() * dxi;
    worst = std::max(worst, (pull - Om).cwiseAbs().maxCoeff());
  }
  return worst;
}

double kepler_regularized_Q(const CotangentSpherePoint& pt, double k, bool rotating_frame) {
  const double om = 1.0 - pt.xi.x();
  const double rot =
      rotating_frame ? pt.eta.y() * pt.xi.z() - pt.eta.z() * pt.xi.y() : 0.0;
  const double bracket = 1.0 + om * (-k - 0.5 + rot);
  return 0.5 * pt.eta.squaredNorm() * bracket * bracket;
}

double center_mass(const SystemConfig& cfg, PrimaryChoice choice) {
  return choice == PrimaryChoice::moon ? cfg.mu : 1.0 - cfg.mu;
}

double regularized_level(const SystemConfig& cfg, PrimaryChoice choice) {
  const double m = center_mass(cfg, choice);
  return 0.5 * m * m;
}

RegularizedQ r3bp_regularized_Q(const CotangentSpherePoint& pt, double k,
                                const SystemConfig& cfg, PrimaryChoice choice) {
  const Vec2 center = choice == PrimaryChoice::moon ? cfg.moon_pos() : cfg.earth_pos();
  const Vec2 other = choice == PrimaryChoice::moon ? cfg.earth_pos() : cfg.moon_pos();
  const double m_other = choice == PrimaryChoice::moon ? 1.0 - cfg.mu : cfg.mu;

  const double om = 1.0 - pt.xi.x();
  const Vec2 y(pt.eta.y() * om + pt.xi.y() * pt.eta.x(),
               pt.eta.z() * om + pt.xi.z() * pt.eta.x());
  const double other_dist = (y + center - other).norm();
  if (m_other > 0.0 && other_dist < cfg.singularity_threshold)
    throw SingularityError(choice == PrimaryChoice::moon ? Primary::earth : Primary::moon,
                           other_dist);

  double f = 1.0 + om * (pt.xi.z() * pt.eta.y() - pt.xi.y() * pt.eta.z()) +
             (pt.xi.z() * center.x() - pt.xi.y() * center.y()) - (k + 0.5) * om;
  if (m_other > 0.0) f -= m_other * om / other_dist;
  return RegularizedQ{0.5 * pt.eta.squaredNorm() * f * f, f};
}

CotangentSpherePoint lift_from_rotating(const PhasePoint& x, const SystemConfig& cfg,
                                        PrimaryChoice choice) {
  const Vec2 center = choice == PrimaryChoice::moon ? cfg.moon_pos() : cfg.earth_pos();
  return stereo_lift(switch_coordinates(x, center));
}

PhasePoint project_to_rotating(const CotangentSpherePoint& pt, const SystemConfig& cfg,
                               PrimaryChoice choice) {
  const Vec2 center = choice == PrimaryChoice::moon ? cfg.moon_pos() : cfg.earth_pos();
  return switch_coordinates_inverse(stereo_project(pt), center);
}

std::vector<CurvatureSample> conformal_metric_curvature(double k, int samples, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  // g = e^{2 phi} |dx|^2 with phi = log(2/(1+|x|^2)) - log(1 + (1-xi0)(-k-1/2))
  // and 1 - xi0 = 2/(1+|x|^2). Gaussian curvature: K = -e^{-2 phi} lap(phi).
  auto phi = [&](const Vec2& x) {
    const double conf = 2.0 / (1.0 + x.squaredNorm());
    return std::log(conf) - std::log(1.0 + conf * (-k - 0.5));
  };
  std::vector<CurvatureSample> out;
  out.reserve(samples);
  const double h = 1e-4;
  while (static_cast<int>(out.size()) < samples) {
    const Vec2 x(box(rng), box(rng));
    const double lap = (phi(x + Vec2(h, 0)) + phi(x - Vec2(h, 0)) + phi(x + Vec2(0, h)) +
                        phi(x - Vec2(0, h)) - 4.0 * phi(x)) /
                       (h * h);
    const double K = -std::exp(-2.0 * phi(x)) * lap;
    const double x2 = x.squaredNorm();
    const double xi0 = (x2 - 1.0) / (x2 + 1.0);
    out.push_back({Vec3(xi0, x.x() * (1.0 - xi0), x.y() * (1.0 - xi0)), K});
  }
  return out;
}

}  // namespace pcr3bp::moser
