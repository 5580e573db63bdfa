#include "pcr3bp/model.hpp"

#include <limits>

namespace pcr3bp::model {

void require_off_primaries(const Vec2& q, const SystemConfig& cfg) {
  // A massless primary has no potential term, so it cannot be singular.
  if (1.0 - cfg.mu > 0.0) {
    const double de = (q - cfg.earth_pos()).norm();
    if (de < cfg.singularity_threshold) throw SingularityError(Primary::earth, de);
  }
  if (cfg.mu > 0.0) {
    const double dm = (q - cfg.moon_pos()).norm();
    if (dm < cfg.singularity_threshold) throw SingularityError(Primary::moon, dm);
  }
}

static double gravitational_potential(const Vec2& q, const SystemConfig& cfg) {
  double v = 0.0;
  if (1.0 - cfg.mu > 0.0) v -= (1.0 - cfg.mu) / (q - cfg.earth_pos()).norm();
  if (cfg.mu > 0.0) v -= cfg.mu / (q - cfg.moon_pos()).norm();
  return v;
}

double hamiltonian(const PhasePoint& x, const SystemConfig& cfg) {
  require_off_primaries(x.q, cfg);
  return 0.5 * x.p.squaredNorm() + gravitational_potential(x.q, cfg) +
         x.p.x() * x.q.y() - x.p.y() * x.q.x();
}

double hamiltonian_completed(const PhasePoint& x, const SystemConfig& cfg) {
  require_off_primaries(x.q, cfg);
  const double a = x.p.x() + x.q.y();
  const double b = x.p.y() - x.q.x();
  return 0.5 * (a * a + b * b) + effective_potential(x.q, cfg);
}

double effective_potential(const Vec2& q, const SystemConfig& cfg) {
  require_off_primaries(q, cfg);
  return gravitational_potential(q, cfg) - 0.5 * q.squaredNorm();
}

double effective_potential_lunar(const LunarPolar& pt, const SystemConfig& cfg) {
  const double mu = cfg.mu;
  const double rho = pt.rho;
  const double c = std::cos(pt.theta);
  if (rho < cfg.singularity_threshold && mu > 0.0) throw SingularityError(Primary::moon, rho);
  const double kappa = rho * rho - 2.0 * rho * c + 1.0;  // |q - E|^2
  const double de = std::sqrt(kappa);
  if (de < cfg.singularity_threshold && 1.0 - mu > 0.0) throw SingularityError(Primary::earth, de);
  double v = -0.5 * rho * rho + rho * c * (1.0 - mu) - 0.5 * (1.0 - mu) * (1.0 - mu);
  if (mu > 0.0) v -= mu / rho;
  if (1.0 - mu > 0.0) v -= (1.0 - mu) / de;
  return v;
}

PotentialPartials potential_partials(const LunarPolar& pt, const SystemConfig& cfg) {
  const double mu = cfg.mu;
  const double rho = pt.rho;
  const double c = std::cos(pt.theta);
  const double s = std::sin(pt.theta);
  if (rho < cfg.singularity_threshold) throw SingularityError(Primary::moon, rho);
  const double kappa = rho * rho - 2.0 * rho * c + 1.0;
  if (std::sqrt(kappa) < cfg.singularity_threshold)
    throw SingularityError(Primary::earth, std::sqrt(kappa));
  const double k32 = std::pow(kappa, 1.5);
  const double k52 = k32 * kappa;
  const double k72 = k52 * kappa;

  PotentialPartials out;
  out.dU_drho = mu / (rho * rho) + (1.0 - mu) * (rho - c) / k32 - rho + c * (1.0 - mu);
  out.dU_dtheta = (1.0 - mu) * rho * s * (1.0 / k32 - 1.0);
  out.d2U_drho2 =
      -2.0 * mu / (rho * rho * rho) -
      (1.0 - mu) * (2.0 * rho * rho - 4.0 * rho * c - 1.0 + 3.0 * c * c) / k52 - 1.0;
  out.d2U_drhodtheta =
      (1.0 - mu) * s * ((-2.0 * rho * rho + rho * c + 1.0) / k52 - 1.0);
  out.d3U_drho3 =
      6.0 * mu / (rho * rho * rho * rho) -
      3.0 * (1.0 - mu) * (rho - c) * (3.0 + 4.0 * rho * c - 2.0 * rho * rho - 5.0 * c * c) / k72;
  return out;
}

Vec2 effective_potential_gradient(const Vec2& q, const SystemConfig& cfg) {
  require_off_primaries(q, cfg);
  Vec2 g = -q;
  if (1.0 - cfg.mu > 0.0) {
    const Vec2 re = q - cfg.earth_pos();
    g += (1.0 - cfg.mu) * re / std::pow(re.norm(), 3);
  }
  if (cfg.mu > 0.0) {
    const Vec2 rm = q - cfg.moon_pos();
    g += cfg.mu * rm / std::pow(rm.norm(), 3);
  }
  return g;
}

Vec4 hamiltonian_gradient(const PhasePoint& x, const SystemConfig& cfg) {
  const Vec2 gU = effective_potential_gradient(x.q, cfg);
  // grad of the gravitational part alone is gU + q.
  const Vec2 gV = gU + x.q;
  return Vec4(gV.x() - x.p.y(), gV.y() + x.p.x(),
              x.p.x() + x.q.y(), x.p.y() - x.q.x());
}

Vec4 hamiltonian_vector_field(const PhasePoint& x, const SystemConfig& cfg) {
  const Vec4 g = hamiltonian_gradient(x, cfg);
  return Vec4(g[2], g[3], -g[0], -g[1]);
}

namespace detail {
double effective_potential_raw(const Vec2& q, const SystemConfig& cfg) {
  const double de = (q - cfg.earth_pos()).norm();
  const double dm = (q - cfg.moon_pos()).norm();
  if ((de < cfg.singularity_threshold && 1.0 - cfg.mu > 0.0) ||
      (dm < cfg.singularity_threshold && cfg.mu > 0.0))
    return -std::numeric_limits<double>::infinity();
  double v = -0.5 * q.squaredNorm();
  if (1.0 - cfg.mu > 0.0) v -= (1.0 - cfg.mu) / de;
  if (cfg.mu > 0.0) v -= cfg.mu / dm;
  return v;
}
}  // namespace detail

}  // namespace pcr3bp::model
