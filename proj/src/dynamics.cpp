#include "pcr3bp/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

#include "pcr3bp/model.hpp"

namespace pcr3bp::dynamics {

namespace odeint = boost::numeric::odeint;

double Trajectory::conserved_drift() const {
  if (samples.empty()) return 0.0;
  const double c0 = samples.front().conserved;
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(s.conserved - c0));
  return worst / std::max(1.0, std::abs(c0));
}

double Trajectory::max_constraint_defect() const {
  if (frame != Frame::regularized) return 0.0;
  double worst = 0.0;
  for (const auto& s : samples) {
    const Vec3 xi(s.state[0], s.state[1], s.state[2]);
    const Vec3 eta(s.state[3], s.state[4], s.state[5]);
    worst = std::max({worst, std::abs(xi.norm() - 1.0), std::abs(xi.dot(eta))});
  }
  return worst;
}

namespace {

// Generic adaptive driver: controlled RKF78 with an after-step hook.
template <typename State, typename Rhs, typename AfterStep>
void drive(State& x, double t0, double t1, const IntegratorOptions& opts, Rhs rhs,
           AfterStep after) {
  using stepper_t = odeint::runge_kutta_fehlberg78<State>;
  auto stepper = odeint::make_controlled<stepper_t>(opts.tolerance, opts.tolerance);
  double t = t0;
  after(t, x);
  if (t1 <= t0) return;
  double dt = std::min(opts.initial_dt, (t1 - t0));
  int steps = 0;
  while (t < t1) {
    dt = std::min(dt, t1 - t);
    if (opts.max_dt > 0.0) dt = std::min(dt, opts.max_dt);
    odeint::controlled_step_result r;
    do {
      r = stepper.try_step(rhs, x, t, dt);
      if (++steps > opts.max_steps)
        throw std::runtime_error("integrator exceeded the step budget");
      if (dt < 1e-16) throw std::runtime_error("integrator step size underflow");
    } while (r == odeint::fail);
    after(t, x);
  }
}

using RotState = std::array<double, 5>;  // q1 q2 p1 p2 s  (s: reparametrization clock)

struct RotRhs {
  const SystemConfig* cfg;
  Vec2 center;
  double close_approach;

  void operator()(const RotState& x, RotState& dxdt, double t) const {
    const PhasePoint pp(x[0], x[1], x[2], x[3]);
    if (close_approach > 0.0) {
      if (cfg->mu > 0.0) {
        const double dm = (pp.q - cfg->moon_pos()).norm();
        if (dm < close_approach) throw CloseApproachError(Primary::moon, t, pp);
      }
      if (1.0 - cfg->mu > 0.0) {
        const double de = (pp.q - cfg->earth_pos()).norm();
        if (de < close_approach) throw CloseApproachError(Primary::earth, t, pp);
      }
    }
    const Vec4 v = model::hamiltonian_vector_field(pp, *cfg);
    dxdt[0] = v[0];
    dxdt[1] = v[1];
    dxdt[2] = v[2];
    dxdt[3] = v[3];
    dxdt[4] = 1.0 / (pp.q - center).norm();
  }
};

}  // namespace

Trajectory integrate_rotating(const PhasePoint& x0, const SystemConfig& cfg, double T,
                              const IntegratorOptions& opts) {
  Trajectory traj;
  traj.frame = Frame::rotating;
  RotState x{x0.q.x(), x0.q.y(), x0.p.x(), x0.p.y(), 0.0};
  RotRhs rhs{&cfg, cfg.moon_pos(), opts.close_approach};
  drive(x, 0.0, T, opts, rhs, [&](double t, const RotState& s) {
    const PhasePoint pp(s[0], s[1], s[2], s[3]);
    traj.samples.push_back({t, {s[0], s[1], s[2], s[3]}, model::hamiltonian(pp, cfg)});
  });
  return traj;
}

namespace {

using RegState = std::array<double, 6>;

// Gradient of the regularized Hamiltonian Q = |eta|^2 f^2 / 2 in ambient
// coordinates, with f as in the three-body regularization. The Kepler
// case is the same formula with zero center and zero other-mass.
struct RegParams {
  double k;
  Vec2 center = Vec2::Zero();
  Vec2 other = Vec2::Zero();
  double m_other = 0.0;
  bool rotating = true;
};

struct RegGrad {
  double Q;
  Vec3 dxi;
  Vec3 deta;
};

RegGrad regularized_gradient(const Vec3& xi, const Vec3& eta, const RegParams& par) {
  const double om = 1.0 - xi.x();
  const double rot = par.rotating ? xi.z() * eta.y() - xi.y() * eta.z() : 0.0;
  const double cen = xi.z() * par.center.x() - xi.y() * par.center.y();
  double f = 1.0 + om * rot + cen - (par.k + 0.5) * om;

  Vec3 df_dxi(-rot + (par.k + 0.5), -par.center.y(), par.center.x());
  Vec3 df_deta = Vec3::Zero();
  if (par.rotating) {
    df_dxi += Vec3(0.0, -om * eta.z(), om * eta.y());
    df_deta += Vec3(0.0, om * xi.z(), -om * xi.y());
  }

  if (par.m_other != 0.0) {
    const Vec2 y(eta.y() * om + xi.y() * eta.x(), eta.z() * om + xi.z() * eta.x());
    const Vec2 dvec = y + par.center - par.other;
    const double dist = dvec.norm();
    const Vec2 vhat = dvec / dist;
    f -= par.m_other * om / dist;
    const double common = par.m_other * om / (dist * dist);
    // d(dist)/dz = vhat . dy/dz
    df_dxi.x() += par.m_other / dist + common * (-eta.y() * vhat.x() - eta.z() * vhat.y());
    df_dxi.y() += common * (eta.x() * vhat.x());
    df_dxi.z() += common * (eta.x() * vhat.y());
    df_deta.x() += common * (xi.y() * vhat.x() + xi.z() * vhat.y());
    df_deta.y() += common * (om * vhat.x());
    df_deta.z() += common * (om * vhat.y());
  }

  RegGrad g;
  const double e2 = eta.squaredNorm();
  g.Q = 0.5 * e2 * f * f;
  g.dxi = e2 * f * df_dxi;
  g.deta = f * f * eta + e2 * f * df_deta;
  return g;
}

struct RegRhs {
  RegParams par;

  void operator()(const RegState& x, RegState& dxdt, double /*s*/) const {
    const Vec3 xi(x[0], x[1], x[2]);
    const Vec3 eta(x[3], x[4], x[5]);
    const RegGrad g = regularized_gradient(xi, eta, par);
    // Constrained Hamiltonian field: project back onto T(T*S^2).
    const double lam2 = xi.dot(g.deta);
    const double lam1 = eta.dot(g.deta) - xi.dot(g.dxi);
    const Vec3 dxi = g.deta - lam2 * xi;
    const Vec3 deta = -g.dxi - lam1 * xi + lam2 * eta;
    dxdt[0] = dxi.x();
    dxdt[1] = dxi.y();
    dxdt[2] = dxi.z();
    dxdt[3] = deta.x();
    dxdt[4] = deta.y();
    dxdt[5] = deta.z();
  }
};

void project_state(RegState& x) {
  Vec3 xi(x[0], x[1], x[2]);
  Vec3 eta(x[3], x[4], x[5]);
  xi.normalize();
  eta -= xi.dot(eta) * xi;
  x = {xi.x(), xi.y(), xi.z(), eta.x(), eta.y(), eta.z()};
}

Trajectory integrate_regularized(const moser::CotangentSpherePoint& pt0, const RegParams& par,
                                 double level, double S, const IntegratorOptions& opts) {
  {
    const RegGrad g0 = regularized_gradient(pt0.xi, pt0.eta, par);
    if (std::abs(g0.Q - level) > 1e-10 * std::max(1.0, std::abs(level)))
      throw std::invalid_argument("initial point is off the regularized level (residual " +
                                  std::to_string(g0.Q - level) + ")");
  }
  Trajectory traj;
  traj.frame = Frame::regularized;
  RegState x{pt0.xi.x(), pt0.xi.y(), pt0.xi.z(), pt0.eta.x(), pt0.eta.y(), pt0.eta.z()};
  RegRhs rhs{par};
  drive(x, 0.0, S, opts, rhs, [&](double s, RegState& st) {
    project_state(st);
    const Vec3 xi(st[0], st[1], st[2]);
    const Vec3 eta(st[3], st[4], st[5]);
    traj.samples.push_back(
        {s, {st[0], st[1], st[2], st[3], st[4], st[5]},
         regularized_gradient(xi, eta, par).Q});
  });
  return traj;
}

RegParams params_kepler(double k, bool rotating) {
  RegParams par{k};
  par.rotating = rotating;
  return par;
}

RegParams params_3bp(double k, const SystemConfig& cfg, moser::PrimaryChoice choice) {
  RegParams par{k};
  par.center = choice == moser::PrimaryChoice::moon ? cfg.moon_pos() : cfg.earth_pos();
  par.other = choice == moser::PrimaryChoice::moon ? cfg.earth_pos() : cfg.moon_pos();
  par.m_other = choice == moser::PrimaryChoice::moon ? 1.0 - cfg.mu : cfg.mu;
  return par;
}

}  // namespace

Trajectory integrate_regularized_kepler(const moser::CotangentSpherePoint& pt0, double k,
                                        double S, const IntegratorOptions& opts,
                                        bool rotating_frame) {
  return integrate_regularized(pt0, params_kepler(k, rotating_frame), 0.5, S, opts);
}

Trajectory integrate_regularized_3bp(const moser::CotangentSpherePoint& pt0, double k,
                                     const SystemConfig& cfg, moser::PrimaryChoice choice,
                                     double S, const IntegratorOptions& opts) {
  return integrate_regularized(pt0, params_3bp(k, cfg, choice),
                               moser::regularized_level(cfg, choice), S, opts);
}

double correspondence_check(const PhasePoint& x0, const SystemConfig& cfg, double T,
                            moser::PrimaryChoice choice, int n_compare,
                            const IntegratorOptions& opts) {
  const double k = model::hamiltonian(x0, cfg);
  const double m_center = moser::center_mass(cfg, choice);
  const Vec2 center = choice == moser::PrimaryChoice::moon ? cfg.moon_pos() : cfg.earth_pos();

  // Rotating arc with the reparametrization clock s(t) = int dt/|q-c|.
  IntegratorOptions ropts = opts;
  ropts.close_approach = 0.0;  // the correspondence arc stays off the primaries by choice
  Trajectory rot;
  rot.frame = Frame::rotating;
  std::vector<double> clock;
  {
    RotState x{x0.q.x(), x0.q.y(), x0.p.x(), x0.p.y(), 0.0};
    RotRhs rhs{&cfg, center, 0.0};
    drive(x, 0.0, T, ropts, rhs, [&](double t, const RotState& s) {
      rot.samples.push_back({t, {s[0], s[1], s[2], s[3]}, 0.0});
      clock.push_back(s[4]);
    });
  }

  // Regularized flow from the lifted start; the flow of Q runs at
  // m_center times the speed of the reparametrized flow.
  const RegParams par = params_3bp(k, cfg, choice);
  const moser::CotangentSpherePoint lift0 = moser::lift_from_rotating(x0, cfg, choice);
  RegState y{lift0.xi.x(), lift0.xi.y(), lift0.xi.z(),
             lift0.eta.x(), lift0.eta.y(), lift0.eta.z()};
  RegRhs rhs{par};

  double worst = 0.0;
  double sigma = 0.0;
  for (int i = 1; i <= n_compare; ++i) {
    const std::size_t idx = static_cast<std::size_t>(
        std::min<double>(rot.samples.size() - 1.0,
                         std::round(static_cast<double>(i) * (rot.samples.size() - 1) /
                                    n_compare)));
    const double target = clock[idx] / m_center;
    if (target > sigma) {
      drive(y, sigma, target, opts, rhs, [&](double, RegState& st) { project_state(st); });
      sigma = target;
    }
    const auto& rs = rot.samples[idx];
    const moser::CotangentSpherePoint lifted = moser::lift_from_rotating(
        PhasePoint(rs.state[0], rs.state[1], rs.state[2], rs.state[3]), cfg, choice);
    const Vec3 dxi = lifted.xi - Vec3(y[0], y[1], y[2]);
    const Vec3 deta = lifted.eta - Vec3(y[3], y[4], y[5]);
    worst = std::max(worst, std::sqrt(dxi.squaredNorm() + deta.squaredNorm()));
  }
  return worst;
}

CollisionPassage collision_passage_demo(const SystemConfig& cfg, double k,
                                        double start_distance, const IntegratorOptions& opts) {
  // Zero-angular-momentum launch toward the moon from the axis.
  const Vec2 q = cfg.moon_pos() + Vec2(start_distance, 0.0);
  const double vgrav = model::effective_potential(q, cfg) + 0.5 * q.squaredNorm();
  const double speed2 = 2.0 * (k - vgrav) + q.x() * q.x();
  if (speed2 <= 0.0)
    throw std::invalid_argument("energy too low for the requested launch distance");
  // q' = (p1 + q2, p2 - q1) = (-speed, 0): aimed at the moon.
  const PhasePoint x0(q, Vec2(-std::sqrt(speed2), q.x()));

  CollisionPassage out;
  const double s_max = 6.0;  // generous arc length through the passage
  IntegratorOptions dense = opts;
  if (dense.max_dt <= 0.0) dense.max_dt = 1e-4;  // resolve the passage window
  out.trajectory = integrate_regularized_3bp(moser::lift_from_rotating(x0, cfg,
                                                                       moser::PrimaryChoice::moon),
                                             k, cfg, moser::PrimaryChoice::moon, s_max, dense);
  for (const auto& s : out.trajectory.samples) {
    const double xi0 = s.state[0];
    out.max_xi0 = std::max(out.max_xi0, xi0);
    const double om = 1.0 - xi0;
    if (om > 1e-14) {
      const double pullback_p = Vec2(s.state[1], s.state[2]).norm() / om;
      out.max_pullback_p = std::max(out.max_pullback_p, pullback_p);
    }
  }
  out.q_drift = out.trajectory.conserved_drift();
  // Energy of the pulled-back endpoint, evaluated away from the collision.
  const auto& last = out.trajectory.samples.back();
  const moser::CotangentSpherePoint end_pt(Vec3(last.state[0], last.state[1], last.state[2]),
                                           Vec3(last.state[3], last.state[4], last.state[5]));
  const PhasePoint end = moser::project_to_rotating(end_pt, cfg, moser::PrimaryChoice::moon);
  out.energy_defect = std::abs(model::hamiltonian(end, cfg) - k);
  return out;
}

namespace {

// Integrates from an axis start until the next crossing of q2 = 0,
// bisecting the crossing time; returns (state, time) at the crossing.
std::optional<std::pair<RotState, double>> next_axis_crossing(const RotState& start,
                                                              const SystemConfig& cfg,
                                                              double max_time,
                                                              const IntegratorOptions& opts) {
  RotRhs rhs{&cfg, cfg.moon_pos(), opts.close_approach};
  RotState x = start;
  double t = 0.0;
  double dt = opts.initial_dt;
  using stepper_t = odeint::runge_kutta_fehlberg78<RotState>;
  auto stepper = odeint::make_controlled<stepper_t>(opts.tolerance, opts.tolerance);
  double prev_q2 = x[1];
  RotState prev = x;
  double prev_t = 0.0;
  int steps = 0;
  bool armed = false;  // require leaving the axis before watching for the return
  while (t < max_time) {
    odeint::controlled_step_result r;
    do {
      r = stepper.try_step(rhs, x, t, dt);
      if (++steps > opts.max_steps) return std::nullopt;
      if (dt < 1e-16) return std::nullopt;
    } while (r == odeint::fail);
    if (!armed && std::abs(x[1]) > 1e-6) armed = true;
    if (armed && prev_q2 != 0.0 && ((prev_q2 < 0.0) != (x[1] < 0.0))) {
      // bisect the crossing within [prev_t, t] starting from prev
      RotState lo_state = prev;
      double lo = prev_t, hi = t;
      for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        RotState probe = lo_state;
        double tt = lo;
        double hdt = (mid - lo) / 8.0;
        while (tt < mid) {
          hdt = std::min(hdt, mid - tt);
          odeint::controlled_step_result rr;
          do {
            rr = stepper.try_step(rhs, probe, tt, hdt);
          } while (rr == odeint::fail);
        }
        if ((probe[1] < 0.0) == (prev_q2 < 0.0)) {
          lo = mid;
          lo_state = probe;
        } else {
          hi = mid;
        }
      }
      return std::make_pair(lo_state, lo);
    }
    prev = x;
    prev_q2 = x[1];
    prev_t = t;
  }
  return std::nullopt;
}

}  // namespace

std::optional<PeriodicOrbit> find_symmetric_periodic_orbit(const SystemConfig& cfg, double c,
                                                           const PeriodicOrbitHint& hint,
                                                           const IntegratorOptions& opts) {
  auto launch = [&](double q1) -> std::optional<RotState> {
    const double U = model::detail::effective_potential_raw(Vec2(q1, 0.0), cfg);
    const double r2 = 2.0 * (c - U);
    if (r2 <= 0.0) return std::nullopt;
    const double p2 = hint.retrograde ? q1 - std::sqrt(r2) : q1 + std::sqrt(r2);
    return RotState{q1, 0.0, 0.0, p2, 0.0};
  };
  // Perpendicularity defect at the next crossing: p1 there (q' _|_ axis
  // iff p1 + q2 = 0 and q2 = 0).
  auto defect = [&](double q1) -> std::optional<double> {
    const auto s0 = launch(q1);
    if (!s0) return std::nullopt;
    const auto hit = next_axis_crossing(*s0, cfg, hint.max_half_time, opts);
    if (!hit) return std::nullopt;
    return hit->first[2];
  };

  // Scan for a sign change of the defect over the hint bracket.
  const int n_scan = 40;
  double prev_q1 = hint.q1_lo;
  std::optional<double> prev_d = defect(prev_q1);
  double root_lo = 0.0, root_hi = 0.0;
  bool bracketed = false;
  for (int i = 1; i <= n_scan && !bracketed; ++i) {
    const double q1 = hint.q1_lo + (hint.q1_hi - hint.q1_lo) * i / n_scan;
    const std::optional<double> di = defect(q1);
    if (prev_d && di && (*prev_d < 0.0) != (*di < 0.0)) {
      root_lo = prev_q1;
      root_hi = q1;
      bracketed = true;
    }
    prev_q1 = q1;
    prev_d = di;
  }
  if (!bracketed) return std::nullopt;

  double lo = root_lo, hi = root_hi;
  std::optional<double> dlo = defect(lo);
  if (!dlo) return std::nullopt;
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const std::optional<double> dm = defect(mid);
    if (!dm) return std::nullopt;
    if ((*dm < 0.0) == (*dlo < 0.0)) {
      lo = mid;
      dlo = dm;
    } else {
      hi = mid;
    }
  }
  const double q1_star = 0.5 * (lo + hi);
  const auto s0 = launch(q1_star);
  if (!s0) return std::nullopt;
  const auto half = next_axis_crossing(*s0, cfg, hint.max_half_time, opts);
  if (!half) return std::nullopt;

  PeriodicOrbit orbit;
  orbit.q1_start = q1_star;
  orbit.p2_start = (*s0)[3];
  orbit.period = 2.0 * half->second;

  const PhasePoint start((*s0)[0], (*s0)[1], (*s0)[2], (*s0)[3]);
  orbit.trajectory = integrate_rotating(start, cfg, orbit.period, opts);
  const auto& last = orbit.trajectory.samples.back();
  orbit.closure_defect =
      (Vec4(last.state[0], last.state[1], last.state[2], last.state[3]) - start.as_vec4())
          .norm();
  return orbit;
}

}  // namespace pcr3bp::dynamics
