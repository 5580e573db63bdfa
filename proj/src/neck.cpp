#include "pcr3bp/neck.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/gridscan.hpp"
#include "pcr3bp/model.hpp"

namespace pcr3bp::neck {

namespace {
const Mat2 J = (Mat2() << 0.0, 1.0, -1.0, 0.0).finished();
}

Vec4 ConleyFrame::to_local(const PhasePoint& x) const {
  const Vec2 qp = x.q - qL;
  const Vec2 Pp = -(x.p + J * qL);
  return Vec4(qp.x(), qp.y(), Pp.x(), Pp.y());
}

PhasePoint ConleyFrame::to_global(const Vec4& local) const {
  const Vec2 qp(local[0], local[1]);
  const Vec2 Pp(local[2], local[3]);
  return PhasePoint(qL + qp, -Pp - J * qL);
}

double ConleyFrame::local_hamiltonian(const Vec4& local) const {
  return model::hamiltonian(to_global(local), cfg);
}

Vec4 ConleyFrame::local_gradient(const Vec4& local) const {
  const Vec4 g = model::hamiltonian_gradient(to_global(local), cfg);
  // chart Jacobian is diag(1, 1, -1, -1)
  return Vec4(g[0], g[1], -g[2], -g[3]);
}

double ConleyFrame::quadratic(const Vec4& local) const {
  return 0.5 * local.dot(Qform * local);
}

double ConleyFrame::rest(const Vec2& q_local) const {
  const double U = model::effective_potential(qL + q_local, cfg);
  // The full quadratic part of U: Qtilde carries the gravitational
  // Hessian, the centrifugal -|q|^2/2 adds -1 to both diagonal entries.
  const double quad = 0.5 * (-(2.0 * rho_h + 1.0) * q_local.x() * q_local.x() +
                             (rho_h - 1.0) * q_local.y() * q_local.y());
  return U - critical_value - quad;
}

ConleyFrame conley_frame(const SystemConfig& cfg) {
  ConleyFrame fr;
  fr.cfg = cfg;
  const double d = equilibria::find_L1_distance(cfg);
  fr.qL = cfg.moon_pos() + Vec2(d, 0.0);
  fr.critical_value = model::effective_potential(fr.qL, cfg);
  fr.rho_h = equilibria::rho_hessian(fr.qL, cfg);
  fr.Qtilde << -fr.rho_h, 0.0, 0.0, 0.5 * fr.rho_h;
  fr.Qform << -2.0 * fr.rho_h, 0.0, 0.0, 1.0,
              0.0, fr.rho_h, -1.0, 0.0,
              0.0, -1.0, 1.0, 0.0,
              1.0, 0.0, 0.0, 1.0;
  fr.delta_earth = fr.qL.x() - cfg.earth_pos().x();
  fr.delta_moon = fr.qL.x() - cfg.moon_pos().x();

  // Second-order sanity: FD Hessian of the chart Hamiltonian must equal
  // the stored matrix.
  const double h = 1e-5;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Vec4 pp = Vec4::Zero(), pm = Vec4::Zero(), mp = Vec4::Zero(), mm = Vec4::Zero();
      pp[i] += h; pp[j] += h;
      pm[i] += h; pm[j] -= h;
      mp[i] -= h; mp[j] += h;
      mm[i] -= h; mm[j] -= h;
      const double hess = (fr.local_hamiltonian(pp) - fr.local_hamiltonian(pm) -
                           fr.local_hamiltonian(mp) + fr.local_hamiltonian(mm)) /
                          (4.0 * h * h);
      if (std::abs(hess - fr.Qform(i, j)) > 1e-6 * std::max(1.0, std::abs(fr.Qform(i, j))))
        throw std::logic_error("local quadratic model disagrees with the Hessian at entry (" +
                               std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return fr;
}

double CutoffProfile::value(double w) const {
  const double aw = std::abs(w);
  if (aw <= eps1) return 1.0;
  if (aw >= eps2) return 0.0;
  const double u = (aw - eps1) / (eps2 - eps1);
  return 1.0 - (10.0 - (15.0 - 6.0 * u) * u) * u * u * u;
}

double CutoffProfile::derivative(double w) const {
  const double aw = std::abs(w);
  if (aw <= eps1 || aw >= eps2) return 0.0;
  const double u = (aw - eps1) / (eps2 - eps1);
  const double ds = (30.0 - (60.0 - 30.0 * u) * u) * u * u / (eps2 - eps1);
  return w > 0.0 ? -ds : ds;
}

Vec4 weinstein_Y(const Vec4& local, double a, double b) {
  return Vec4(a * local[0], b * local[1], (1.0 - a) * local[2], (1.0 - b) * local[3]);
}

Vec4 YQ_definiteness(double a, double b, double rho_h) {
  Mat4 M;
  M << -2.0 * rho_h, 0.0, 0.0, 1.0,
       0.0, rho_h, -1.0, 0.0,
       0.0, -1.0, 1.0, 0.0,
       1.0, 0.0, 0.0, 1.0;
  Mat4 A = Mat4::Zero();
  A.diagonal() << a, b, 1.0 - a, 1.0 - b;
  const Mat4 S = 0.5 * (M * A + A.transpose() * M);
  Eigen::SelfAdjointEigenSolver<Mat4> solver(S);
  return solver.eigenvalues();
}

static double base_delta(const ConleyFrame& frame, BasePrimary base) {
  return base == BasePrimary::earth ? frame.delta_earth : frame.delta_moon;
}

double primitive_G(const Vec4& local, double a, double b, const ConleyFrame& frame,
                   BasePrimary base) {
  return (1.0 - a) * local[0] * local[2] + base_delta(frame, base) * local[2] +
         (1.0 - b) * local[3] * local[1];
}

Vec4 alpha0(const Vec4& local, const ConleyFrame& frame, BasePrimary base) {
  // i_{X0} omega with omega = dP ^ dq: components (dq1, dq2, dP1, dP2).
  return Vec4(0.0, 0.0, -(local[0] + base_delta(frame, base)), -local[1]);
}

Vec4 alpha1(const Vec4& local, double a, double b) {
  return Vec4((1.0 - a) * local[2], (1.0 - b) * local[3], -a * local[0], -b * local[1]);
}

Vec4 base_field_X0(const Vec4& local, const ConleyFrame& frame, BasePrimary base) {
  return Vec4(local[0] + base_delta(frame, base), local[1], 0.0, 0.0);
}

InterpolatedField interpolated_field(const Vec4& local, const CutoffProfile& cutoff,
                                     const ConleyFrame& frame, double a, double b,
                                     std::optional<BasePrimary> force_base) {
  InterpolatedField out;
  out.w = local[0] - local[3] / frame.rho_h;
  out.base = force_base.value_or(out.w >= 0.0 ? BasePrimary::earth : BasePrimary::moon);
  out.f = cutoff.value(out.w);
  const double df = cutoff.derivative(out.w);
  const Vec4 X0 = base_field_X0(local, frame, out.base);
  const Vec4 Y = weinstein_Y(local, a, b);
  const double G = primitive_G(local, a, b, frame, out.base);
  const Vec4 Xf(0.0, df / frame.rho_h, df, 0.0);
  out.X = (1.0 - out.f) * X0 + out.f * Y + G * Xf;
  out.dHX = frame.local_gradient(local).dot(out.X);
  return out;
}

double dHX_via_product_rule(const Vec4& local, const CutoffProfile& cutoff,
                            const ConleyFrame& frame, double a, double b,
                            std::optional<BasePrimary> force_base) {
  const double w = local[0] - local[3] / frame.rho_h;
  const BasePrimary base = force_base.value_or(w >= 0.0 ? BasePrimary::earth : BasePrimary::moon);
  const double f = cutoff.value(w);
  const double df = cutoff.derivative(w);
  const double G = primitive_G(local, a, b, frame, base);
  // fG as a Hamiltonian: X_{fG} = (-(fG)_P, (fG)_q) for omega = dP ^ dq.
  const double delta = base_delta(frame, base);
  const double dfG_q1 = df * G + f * (1.0 - a) * local[2];
  const double dfG_q2 = f * (1.0 - b) * local[3];
  const double dfG_P1 = f * ((1.0 - a) * local[0] + delta);
  const double dfG_P2 = -df / frame.rho_h * G + f * (1.0 - b) * local[1];
  const Vec4 XfG(-dfG_P1, -dfG_P2, dfG_q1, dfG_q2);
  const Vec4 X = base_field_X0(local, frame, base) + XfG;
  return frame.local_gradient(local).dot(X);
}

double dH_Xf_closed_form(const Vec4& local, const CutoffProfile& cutoff,
                         const ConleyFrame& frame) {
  const double w = local[0] - local[3] / frame.rho_h;
  const double df = cutoff.derivative(w);
  const Vec2 q = frame.qL + Vec2(local[0], local[1]);
  const double rho_pt = equilibria::rho_hessian(q, frame.cfg);
  return df * ((1.0 - 1.0 / frame.rho_h) * local[2] +
               local[1] / frame.rho_h * (rho_pt - frame.rho_h));
}

double neck_sphere_residual(double delta, double rho_h, double phi, double psi) {
  if (!(rho_h > 1.0)) throw std::invalid_argument("sphere parametrization needs rho_h > 1");
  const double R = std::sqrt(2.0 * rho_h + 1.0) * std::abs(delta);
  const double A = R * std::cos(phi) * std::sin(psi);
  const double B = R * std::sin(phi) * std::sin(psi);
  const double C = R * std::cos(psi);
  const double q1 = (B + (rho_h + 1.0) * delta) / rho_h;
  const double q2 = C / std::sqrt(rho_h - 1.0);
  const double P1 = A + q2;
  const double P2 = rho_h * (q1 - delta);
  Mat4 M;
  M << -2.0 * rho_h, 0.0, 0.0, 1.0,
       0.0, rho_h, -1.0, 0.0,
       0.0, -1.0, 1.0, 0.0,
       1.0, 0.0, 0.0, 1.0;
  const Vec4 x(q1, q2, P1, P2);
  return 0.5 * x.dot(M * x);
}

namespace {

// First U = c crossing along a ray from `center`; assumes U increasing.
double ray_boundary(const Vec2& center, double theta, double c, const SystemConfig& cfg,
                    double rho_min, double rho_max) {
  const Vec2 u(std::cos(theta), std::sin(theta));
  auto U = [&](double rho) {
    return model::detail::effective_potential_raw(center + rho * u, cfg);
  };
  double lo = rho_min, hi = rho_max;
  if (U(lo) > c) return rho_min;
  if (U(hi) <= c) return rho_max;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (U(mid) <= c ? lo : hi) = mid;
  }
  return lo;
}

struct SideScan {
  double min_margin = std::numeric_limits<double>::infinity();
  Vec2 argmin = Vec2::Zero();
  std::size_t samples = 0;
};

// Momentum-free radial margin sweep over one lobe, skipping the neck
// ball and the other side of the dividing plane q1 = qL_1.
SideScan side_sweep(const SystemConfig& cfg, const ConleyFrame& frame, double E, bool moon_side,
                    const AboveCriticalOptions& opts, double r_neck) {
  const Vec2 center = moon_side ? cfg.moon_pos() : cfg.earth_pos();
  const double lobe_max = moon_side ? frame.delta_moon * 1.1 : -frame.delta_earth * 1.1;
  const int n_t = opts.n_angular, n_r = opts.n_radial;
  std::vector<double> bounds(n_t);
  for (int it = 0; it < n_t; ++it)
    bounds[it] = ray_boundary(center, 2.0 * M_PI * it / n_t, E, cfg, opts.rho_min, lobe_max);

  SideScan out;
  std::function<double(std::size_t)> f = [&](std::size_t cell) {
    const int it = static_cast<int>(cell / n_r);
    const int ir = static_cast<int>(cell % n_r);
    const double theta = 2.0 * M_PI * it / n_t;
    const double rho = opts.rho_min + (bounds[it] * 0.9999 - opts.rho_min) * ir / (n_r - 1);
    const Vec2 u(std::cos(theta), std::sin(theta));
    const Vec2 q = center + rho * u;
    if ((q - frame.qL).norm() < r_neck) return std::numeric_limits<double>::infinity();
    if (moon_side ? (q.x() >= frame.qL.x()) : (q.x() <= frame.qL.x()))
      return std::numeric_limits<double>::infinity();
    const double U = model::detail::effective_potential_raw(q, cfg);
    if (U > E) return std::numeric_limits<double>::infinity();
    const double dU = model::effective_potential_gradient(q, cfg).dot(u);
    return dU - std::sqrt(2.0 * (E - U));
  };
  const MinScanResult scan =
      parallel_min_scan(static_cast<std::size_t>(n_t) * n_r,
                        opts.workers > 0 ? opts.workers : default_worker_count(), f);
  out.min_margin = scan.min;
  out.samples = scan.evaluated;
  const int it = static_cast<int>(scan.argmin / n_r);
  const int ir = static_cast<int>(scan.argmin % n_r);
  const double theta = 2.0 * M_PI * it / n_t;
  out.argmin = center + (opts.rho_min + (bounds[it] * 0.9999 - opts.rho_min) * ir / (n_r - 1)) *
                            Vec2(std::cos(theta), std::sin(theta));
  return out;
}

}  // namespace

AboveCriticalResult certify_above_critical(const SystemConfig& cfg,
                                           const AboveCriticalOptions& opts) {
  const ConleyFrame frame = conley_frame(cfg);
  const double r_neck =
      opts.neck_radius > 0.0
          ? opts.neck_radius
          : std::min({0.15, frame.delta_moon / 2.0, -frame.delta_earth / 2.0});

  AboveCriticalResult result;
  for (const double eps : opts.eps_candidates) {
    const auto t0 = std::chrono::steady_clock::now();
    const double E = frame.critical_value + eps;

    const SideScan moon = side_sweep(cfg, frame, E, true, opts, r_neck);
    const SideScan earth = side_sweep(cfg, frame, E, false, opts, r_neck);

    // Neck ball: full 4D sampling of the level set with the interpolated
    // field.
    const int n_g = opts.neck_grid;
    const int n_m = opts.n_momentum;
    double neck_min = std::numeric_limits<double>::infinity();
    Vec4 neck_arg = Vec4::Zero();
    std::size_t neck_samples = 0;
    for (int gx = 0; gx < n_g; ++gx)
      for (int gy = 0; gy < n_g; ++gy) {
        const Vec2 off(-r_neck + 2.0 * r_neck * gx / (n_g - 1),
                       -r_neck + 2.0 * r_neck * gy / (n_g - 1));
        if (off.norm() > r_neck) continue;
        const Vec2 q = frame.qL + off;
        const double U = model::detail::effective_potential_raw(q, cfg);
        if (U > E) continue;
        const double rad = std::sqrt(2.0 * (E - U));
        for (int m = 0; m < n_m; ++m) {
          const double phi = 2.0 * M_PI * m / n_m;
          const Vec2 p(rad * std::cos(phi) - q.y(), rad * std::sin(phi) + q.x());
          const Vec4 local = frame.to_local(PhasePoint(q, p));
          const InterpolatedField fld =
              interpolated_field(local, opts.cutoff, frame, opts.a, opts.b);
          ++neck_samples;
          if (fld.dHX < neck_min) {
            neck_min = fld.dHX;
            neck_arg = local;
          }
        }
      }

    const double overall = std::min({moon.min_margin, earth.min_margin, neck_min});
    contact::CertificationReport rep;
    rep.quantity = "above_critical_margin";
    rep.grid = {{"eps", eps},
                {"energy", E},
                {"neck_radius", r_neck},
                {"moon_min", moon.min_margin},
                {"earth_min", earth.min_margin},
                {"neck_min", neck_min},
                {"n_radial", double(opts.n_radial)},
                {"n_angular", double(opts.n_angular)},
                {"neck_grid", double(opts.neck_grid)},
                {"n_momentum", double(opts.n_momentum)},
                {"cutoff_eps1", opts.cutoff.eps1},
                {"cutoff_eps2", opts.cutoff.eps2},
                {"a", opts.a},
                {"b", opts.b}};
    rep.min_margin = overall;
    if (overall == neck_min)
      rep.argmin = {neck_arg[0], neck_arg[1], neck_arg[2], neck_arg[3]};
    else if (overall == moon.min_margin)
      rep.argmin = {moon.argmin.x(), moon.argmin.y()};
    else
      rep.argmin = {earth.argmin.x(), earth.argmin.y()};
    rep.samples = moon.samples + earth.samples + neck_samples;
    rep.verdict = contact::CertificationReport::classify(overall, rep.margin_tolerance);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.per_candidate.push_back(rep);
    if (eps > 0.0 && rep.verdict == contact::Verdict::certified) {
      result.any_certified = true;
      result.largest_certified = std::max(result.largest_certified, eps);
    }
  }
  return result;
}

}  // namespace pcr3bp::neck
