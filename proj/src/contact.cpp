#include "pcr3bp/contact.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/gridscan.hpp"
#include "pcr3bp/model.hpp"

namespace pcr3bp::contact {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

double liouville_X_of_H(const PhasePoint& x, const SystemConfig& cfg) {
  const Vec4 g = model::hamiltonian_gradient(x, cfg);
  const Vec2 rel = x.q - cfg.moon_pos();
  return rel.x() * g[0] + rel.y() * g[1];
}

double moon_sufficient_margin(const LunarPolar& pt, double c, const SystemConfig& cfg) {
  const double U = model::effective_potential_lunar(pt, cfg);
  if (U > c)
    throw std::invalid_argument("point lies outside the Hill region: U = " + std::to_string(U) +
                                " > c = " + std::to_string(c));
  const double dU = model::potential_partials(pt, cfg).dU_drho;
  return dU - std::sqrt(2.0 * (c - U));
}

double chart_margin(double r, double s, double k, double m_origin) {
  const double mu = m_origin;
  const double r2s2 = r * r + s * s;
  const double rho = std::sqrt(r2s2);
  const double other2 = (1.0 - r) * (1.0 - r) + s * s;
  const double other32 = std::pow(other2, 1.5);
  const double U = -mu / rho - (1.0 - mu) / std::sqrt(other2) -
                   0.5 * (r - 1.0 + mu) * (r - 1.0 + mu) - 0.5 * s * s;
  if (U > k)
    throw std::invalid_argument("point lies outside the Hill region: U = " + std::to_string(U) +
                                " > k = " + std::to_string(k));
  const double radial = mu / rho + (1.0 - mu) * (r2s2 - r) / other32 + r * (1.0 - r - mu) - s * s;
  return radial - rho * std::sqrt(2.0 * (k - U));
}

double earth_cartesian_margin(double r, double s, double k, const SystemConfig& cfg) {
  return chart_margin(r, s, k, 1.0 - cfg.mu);
}

namespace {

struct LobeScanSetup {
  SystemConfig chart_cfg;  // chart with the swept primary as "moon"
  double lobe_radius;      // containment ball radius for the swept lobe
  double critical_value;
};

// Both lobes are swept in the same moon-centered chart; the earth lobe
// goes through the mu <-> 1-mu relabeling (the problem is symmetric
// under reflection through the origin).
LobeScanSetup lobe_setup(const SystemConfig& cfg, bool moon_side) {
  LobeScanSetup s{moon_side ? cfg : SystemConfig(1.0 - cfg.mu), 0.0, 0.0};
  s.chart_cfg.singularity_threshold = cfg.singularity_threshold;
  const double d = equilibria::find_L1_distance(s.chart_cfg);
  s.lobe_radius = d;
  s.critical_value = equilibria::axis_potential_u(d, s.chart_cfg).value;
  return s;
}

// First crossing of U = c along the ray at angle theta; valid because
// dU/drho > 0 throughout the containment ball.
double hill_boundary_radius(double theta, double c, const SystemConfig& cfg, double rho_min,
                            double rho_max) {
  auto U = [&](double rho) {
    return model::effective_potential_lunar(LunarPolar(rho, theta), cfg);
  };
  double lo = rho_min, hi = rho_max;
  if (U(lo) > c) throw std::invalid_argument("rho_min already outside the Hill region");
  for (int i = 0; i < 80 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (U(mid) <= c ? lo : hi) = mid;
  }
  return lo;
}

CertificationReport certify_component(double c, const SystemConfig& cfg, bool moon_side,
                                      const CertifyOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const LobeScanSetup setup = lobe_setup(cfg, moon_side);
  const SystemConfig& ccfg = setup.chart_cfg;
  if (!(c < setup.critical_value))
    throw std::invalid_argument(
        "energy is at or above the first critical value; use the connected-sum "
        "certification (certify --above) instead");

  const int n_t = opts.n_angular;
  const int n_r = opts.n_radial;
  const int rings = std::min(opts.boundary_rings, n_r - 1);
  const int n_bulk = n_r - rings;

  // Per-ray Hill boundary radii, shared by the margin scan and the fiber
  // spot check.
  std::vector<double> boundary(n_t);
  {
    std::function<double(std::size_t)> probe = [&](std::size_t it) {
      const double theta = 2.0 * M_PI * static_cast<double>(it) / n_t;
      boundary[it] = hill_boundary_radius(theta, c, ccfg, opts.rho_min, setup.lobe_radius);
      return std::numeric_limits<double>::infinity();
    };
    parallel_min_scan(n_t, opts.workers > 0 ? opts.workers : default_worker_count(), probe);
  }

  auto rho_of_cell = [&](std::size_t it, int ir) {
    const double rb = boundary[it];
    const double gap = opts.boundary_gap * (rb - opts.rho_min);
    if (ir < n_bulk) {
      const double t = n_bulk > 1 ? static_cast<double>(ir) / (n_bulk - 1) : 0.0;
      return opts.rho_min + t * (rb - gap - opts.rho_min);
    }
    // geometric rings hugging the boundary
    const int j = ir - n_bulk + 1;
    return rb - gap * std::pow(2.0, -j);
  };

  std::function<double(std::size_t)> margin_at = [&](std::size_t cell) {
    const std::size_t it = cell / n_r;
    const int ir = static_cast<int>(cell % n_r);
    const double theta = 2.0 * M_PI * static_cast<double>(it) / n_t;
    const double rho = rho_of_cell(it, ir);
    return moon_sufficient_margin(LunarPolar(rho, theta), c, ccfg);
  };

  const int workers = opts.workers > 0 ? opts.workers : default_worker_count();
  const MinScanResult scan =
      parallel_min_scan(static_cast<std::size_t>(n_t) * n_r, workers, margin_at);

  // Independent 4D spot check: dH(X) on sampled momentum fibers.
  std::mt19937 rng(opts.fiber_seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double fiber_min = std::numeric_limits<double>::infinity();
  const Vec2 center = ccfg.moon_pos();
  for (int i = 0; i < opts.fiber_positions; ++i) {
    const double theta = 2.0 * M_PI * uni(rng);
    const double rb =
        hill_boundary_radius(theta, c, ccfg, opts.rho_min, setup.lobe_radius);
    const double rho = opts.rho_min + uni(rng) * (rb - opts.rho_min) * 0.999;
    const Vec2 q = center + rho * Vec2(std::cos(theta), std::sin(theta));
    const double U = model::effective_potential(q, ccfg);
    const double rad = std::sqrt(2.0 * std::max(0.0, c - U));
    for (int m = 0; m < opts.fiber_momenta; ++m) {
      const double phi = 2.0 * M_PI * m / opts.fiber_momenta;
      const Vec2 p(rad * std::cos(phi) - q.y(), rad * std::sin(phi) + q.x());
      fiber_min = std::min(fiber_min, liouville_X_of_H(PhasePoint(q, p), ccfg));
    }
  }

  double min_margin = scan.min;
  double strict_gate = std::numeric_limits<double>::quiet_NaN();
  if (opts.strict) {
    // First-order Lipschitz gate at the argmin cell: margin minus a local
    // gradient bound times the cell half-diagonal must stay positive.
    const std::size_t it = scan.argmin / n_r;
    const int ir = static_cast<int>(scan.argmin % n_r);
    const double theta = 2.0 * M_PI * static_cast<double>(it) / n_t;
    const double rho = rho_of_cell(it, ir);
    const double h_t = 2.0 * M_PI / n_t;
    const double h_r = (boundary[it] - opts.rho_min) / n_bulk;
    const double hh = 1e-6;
    auto m = [&](double r, double t) {
      return moon_sufficient_margin(LunarPolar(r, t), c, ccfg);
    };
    const double gr = (m(rho + hh, theta) - m(rho - hh, theta)) / (2 * hh);
    const double gt = (m(rho, theta + hh) - m(rho, theta - hh)) / (2 * hh);
    strict_gate = scan.min - 2.0 * (std::abs(gr) * h_r + std::abs(gt) * h_t);
    min_margin = std::min(min_margin, strict_gate);
  }

  CertificationReport rep;
  rep.quantity = moon_side ? "moon_component_margin" : "earth_component_margin";
  rep.grid = {{"n_radial", static_cast<double>(n_r)},
              {"n_angular", static_cast<double>(n_t)},
              {"rho_min", opts.rho_min},
              {"boundary_rings", static_cast<double>(rings)},
              {"energy", c},
              {"fiber_min_dHX", fiber_min},
              {"fiber_positions", static_cast<double>(opts.fiber_positions)},
              {"fiber_momenta", static_cast<double>(opts.fiber_momenta)}};
  if (opts.strict) rep.grid["strict_gate"] = strict_gate;
  rep.min_margin = scan.min;
  const std::size_t it = scan.argmin / n_r;
  rep.argmin = {rho_of_cell(it, static_cast<int>(scan.argmin % n_r)),
                2.0 * M_PI * static_cast<double>(it) / n_t};
  rep.samples = scan.evaluated + static_cast<std::size_t>(opts.fiber_positions) *
                                     opts.fiber_momenta;
  rep.verdict = CertificationReport::classify(std::min(min_margin, fiber_min),
                                              rep.margin_tolerance);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace

CertificationReport certify_moon_component(double c, const SystemConfig& cfg,
                                           const CertifyOptions& opts) {
  return certify_component(c, cfg, /*moon_side=*/true, opts);
}

CertificationReport certify_earth_component(double c, const SystemConfig& cfg,
                                            const CertifyOptions& opts) {
  return certify_component(c, cfg, /*moon_side=*/false, opts);
}

double kepler_starshaped_fprime(const moser::CotangentSpherePoint& pt, double k) {
  if (std::abs(pt.xi.y()) > 1e-12)
    throw std::invalid_argument("slice evaluation requires xi1 = 0");
  const double a = -0.5 - k;
  const double om = 1.0 - pt.xi.x();
  const double e1x2 = pt.eta.y() * pt.xi.z();
  const double level = pt.eta.norm() * (1.0 + om * (a + e1x2)) - 1.0;
  if (std::abs(level) > 1e-10)
    throw std::invalid_argument("point is not on the regularized Kepler level (residual " +
                                std::to_string(level) + ")");
  return (1.0 + om * (a + 2.0 * e1x2)) / (1.0 + om * (a + e1x2));
}

CertificationReport starshaped_slice_scan(double k, int n_theta, int n_dir, int workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const double a = -0.5 - k;
  const double clip = 1e-3;
  std::function<double(std::size_t)> f = [&](std::size_t cell) {
    const std::size_t it = cell / n_dir;
    const int ip = static_cast<int>(cell % n_dir);
    const double theta = clip + (M_PI - 2 * clip) * static_cast<double>(it) / (n_theta - 1);
    const double psi = 2.0 * M_PI * ip / n_dir;
    const double c = std::cos(theta), s = std::sin(theta);
    // xi = (c, 0, s); eta = r (cos psi (-s,0,c) + sin psi (0,1,0)); the
    // level condition is A r^2 + B r = 1.
    const double A = std::sin(psi) * s * (1.0 - c);
    const double B = 1.0 + (1.0 - c) * a;  // > 1 for a > 0
    const double disc = B * B + 4.0 * A;
    if (disc < 0.0) return std::numeric_limits<double>::infinity();
    // Rationalized root, stable for small A. This is the branch with
    // positive bracket bounded away from zero: the compact component of
    // the squared level that regularizes the energy surface. The second
    // algebraic root (A < 0) has bracket -> 0 and |eta| -> infinity and
    // belongs to the noncompact leftover of the squaring.
    const double r = 2.0 / (B + std::sqrt(disc));
    const moser::CotangentSpherePoint pt(Vec3(c, 0.0, s),
                                         r * Vec3(-s * std::cos(psi), std::sin(psi),
                                                  c * std::cos(psi)));
    return kepler_starshaped_fprime(pt, k);
  };
  const MinScanResult scan =
      parallel_min_scan(static_cast<std::size_t>(n_theta) * n_dir,
                        workers > 0 ? workers : default_worker_count(), f);
  CertificationReport rep;
  rep.quantity = "starshaped_fprime";
  rep.grid = {{"k", k},
              {"n_theta", static_cast<double>(n_theta)},
              {"n_dir", static_cast<double>(n_dir)},
              {"theta_clip", clip}};
  rep.min_margin = scan.min;
  rep.argmin = {clip + (M_PI - 2 * clip) *
                           static_cast<double>(scan.argmin / n_dir) / (n_theta - 1),
                2.0 * M_PI * static_cast<double>(scan.argmin % n_dir) / n_dir};
  rep.samples = scan.evaluated;
  rep.verdict = CertificationReport::classify(scan.min, rep.margin_tolerance);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

double g_a(double theta, double a) {
  if (!(theta > 0.0 && theta < M_PI))
    throw std::invalid_argument("g_a requires theta in (0, pi)");
  const double c = std::cos(theta);
  const double num = 1.0 + (1.0 - c) * a;
  return num * num / (4.0 * std::sin(theta) * (1.0 - c));
}

double h_of(double t) {
  if (!(t > -1.0 && t < 1.0)) throw std::invalid_argument("h requires t in (-1, 1)");
  const double n = (2.0 - t);
  return n * n * n * n / (16.0 * (1.0 - t * t) * (1.0 - t) * (1.0 - t));
}

double h_prime(double t) {
  if (!(t > -1.0 && t < 1.0)) throw std::invalid_argument("h' requires t in (-1, 1)");
  const double a = t - 2.0, b = t + 1.0, c = t - 1.0;
  return -3.0 * t * a * a * a / (8.0 * b * b * c * c * c * c);
}

FiberMargin regularized_fiber_margin(const moser::CotangentSpherePoint& pt, double k,
                                     const SystemConfig& cfg, double eps,
                                     moser::PrimaryChoice choice) {
  const double level = moser::regularized_level(cfg, choice);
  const auto qf = moser::r3bp_regularized_Q(pt, k, cfg, choice);
  if (std::abs(qf.Q - level) > 1e-10 * std::max(1.0, level))
    throw std::invalid_argument("point is off the regularized level (|Q - level| = " +
                                std::to_string(std::abs(qf.Q - level)) + ")");
  const double om = 1.0 - pt.xi.x();
  if (!(pt.eta.norm() * om < eps))
    throw std::invalid_argument("point lies outside the near-collision zone");

  const Vec2 center = choice == moser::PrimaryChoice::moon ? cfg.moon_pos() : cfg.earth_pos();
  const Vec2 other = choice == moser::PrimaryChoice::moon ? cfg.earth_pos() : cfg.moon_pos();
  const double m_other = choice == moser::PrimaryChoice::moon ? 1.0 - cfg.mu : cfg.mu;
  const Vec2 y(pt.eta.y() * om + pt.xi.y() * pt.eta.x(),
               pt.eta.z() * om + pt.xi.z() * pt.eta.x());
  const Vec2 dvec = y + center - other;
  const double dist = dvec.norm();
  // eta . d/deta of f: the rotation term is linear in eta, y is linear in
  // eta, the remaining terms are constant.
  const double eta_df = om * (pt.xi.z() * pt.eta.y() - pt.xi.y() * pt.eta.z()) +
                        m_other * om * y.dot(dvec) / (dist * dist * dist);
  const double XQ = 2.0 * qf.Q + pt.eta.squaredNorm() * qf.factor * eta_df;
  return FiberMargin{XQ, pt.eta.norm(), std::abs(qf.factor)};
}

FiberZoneScan fiber_zone_scan(const SystemConfig& cfg, double k, double eps, int samples,
                              unsigned seed, moser::PrimaryChoice choice) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double level = moser::regularized_level(cfg, choice);
  FiberZoneScan out{std::numeric_limits<double>::infinity(), 0.0,
                    std::numeric_limits<double>::infinity(), 0};
  int guard = 0;
  while (out.samples < static_cast<std::size_t>(samples) && guard < 100 * samples) {
    ++guard;
    const double om = 1e-6 + uni(rng) * (eps * 0.5 - 1e-6);  // 1 - xi0
    const double xi0 = 1.0 - om;
    const double psi = 2.0 * M_PI * uni(rng);
    const double chi = 2.0 * M_PI * uni(rng);
    const double sphi = std::sqrt(std::max(0.0, 1.0 - xi0 * xi0));
    const Vec3 xi(xi0, sphi * std::cos(psi), sphi * std::sin(psi));
    // orthonormal tangent frame at xi
    const Vec3 t1 = Vec3(-sphi, xi0 * std::cos(psi), xi0 * std::sin(psi));
    const Vec3 t2 = Vec3(0.0, -std::sin(psi), std::cos(psi));
    const Vec3 dir = std::cos(chi) * t1 + std::sin(chi) * t2;
    // solve |t dir| f(xi, t dir) in t for the level; f stays near f(0)
    auto resid = [&](double t) {
      const moser::CotangentSpherePoint p(xi, t * dir);
      return moser::r3bp_regularized_Q(p, k, cfg, choice).Q - level;
    };
    double lo = 0.0, hi = 4.0;
    if (resid(hi) < 0.0) continue;
    for (int i = 0; i < 80; ++i) {
      const double mid = 0.5 * (lo + hi);
      (resid(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    if (!(t * om < eps)) continue;
    const moser::CotangentSpherePoint pt(xi, t * dir);
    const FiberMargin m = regularized_fiber_margin(pt, k, cfg, eps, choice);
    out.min_XQ = std::min(out.min_XQ, m.XQ);
    out.max_eta_norm = std::max(out.max_eta_norm, m.eta_norm);
    out.min_f_abs = std::min(out.min_f_abs, m.f_abs);
    ++out.samples;
  }
  return out;
}

}  // namespace pcr3bp::contact
