#include <doctest.h>

#include <cmath>

#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/model.hpp"

using namespace pcr3bp;
using namespace pcr3bp::dynamics;

TEST_CASE("rotating Kepler circular orbit is a relative equilibrium") {
  const SystemConfig cfg(0.0);
  const PhasePoint x0(1.0, 0.0, 0.0, 1.0);
  const auto traj = integrate_rotating(x0, cfg, 20.0);
  CHECK(traj.conserved_drift() < 1e-9);
  for (const auto& s : traj.samples) {
    const double r = std::hypot(s.state[0], s.state[1]);
    CHECK(std::abs(r - 1.0) < 1e-9);
  }
}

TEST_CASE("energy conservation over a long arc") {
  // distant retrograde orbit around the moon: stays well clear of both
  // primaries for the whole horizon
  const SystemConfig cfg(0.3);
  const Vec2 q0 = cfg.moon_pos() + Vec2(0.25, 0.0);
  const PhasePoint x0(q0, Vec2(0.0, q0.x() - 1.42));
  const auto traj = integrate_rotating(x0, cfg, 100.0);
  CHECK(traj.conserved_drift() < 1e-9);
  CHECK(traj.samples.front().t == 0.0);
  CHECK(traj.samples.back().t == doctest::Approx(100.0));
}

TEST_CASE("reflection plus time reversal maps trajectories to trajectories") {
  const SystemConfig cfg(0.3);
  const Vec2 q0 = cfg.moon_pos() + Vec2(0.25, 0.0);
  const PhasePoint x0(q0 + Vec2(0.0, 0.02), Vec2(0.05, q0.x() - 1.42));
  const double T = 3.0;
  const auto fwd = integrate_rotating(x0, cfg, T);
  const auto& last = fwd.samples.back();
  // reflect (q2, p1) -> (-q2, -p1) and integrate the same duration
  const PhasePoint mirrored(last.state[0], -last.state[1], -last.state[2], last.state[3]);
  const auto back = integrate_rotating(mirrored, cfg, T);
  const auto& end = back.samples.back();
  const Vec4 expected(x0.q.x(), -x0.q.y(), -x0.p.x(), x0.p.y());
  CHECK((Vec4(end.state[0], end.state[1], end.state[2], end.state[3]) - expected).norm() < 1e-8);
}

TEST_CASE("close approaches abort toward the regularized integrator") {
  const SystemConfig cfg(0.3);
  // aimed straight at the moon
  const PhasePoint x0(cfg.moon_pos() + Vec2(0.2, 0.0), Vec2(-1.0, cfg.moon_pos().x() + 0.2));
  CHECK_THROWS_AS(integrate_rotating(x0, cfg, 10.0), CloseApproachError);
}

TEST_CASE("regularized Kepler geodesic has period 2 pi") {
  // k = -1/2, |eta| = 1: the flow travels a great circle at unit speed
  const moser::CotangentSpherePoint pt0(Vec3(0, 1, 0), Vec3(0, 0, 1));
  const auto traj =
      integrate_regularized_kepler(pt0, -0.5, 2.0 * M_PI, {}, /*rotating_frame=*/false);
  CHECK(traj.conserved_drift() < 1e-9);
  CHECK(traj.max_constraint_defect() < 1e-10);
  const auto& last = traj.samples.back();
  const Vec3 xi(last.state[0], last.state[1], last.state[2]);
  const Vec3 eta(last.state[3], last.state[4], last.state[5]);
  CHECK((xi - pt0.xi).norm() < 1e-6);
  CHECK((eta - pt0.eta).norm() < 1e-6);
}

TEST_CASE("regularized flow crosses the collision locus smoothly") {
  // great-circle data passing through xi0 = 1
  const moser::CotangentSpherePoint pt0(Vec3(0, 0, -1), Vec3(1, 0, 0));
  IntegratorOptions dense;
  dense.max_dt = 1e-3;
  const auto traj =
      integrate_regularized_kepler(pt0, -0.5, M_PI, dense, /*rotating_frame=*/false);
  CHECK(traj.conserved_drift() < 1e-9);
  double max_xi0 = -1.0;
  for (const auto& s : traj.samples) max_xi0 = std::max(max_xi0, s.state[0]);
  CHECK(max_xi0 > 1.0 - 1e-6);
}

TEST_CASE("off-level starts are rejected") {
  const moser::CotangentSpherePoint bad(Vec3(0, 1, 0), Vec3(0, 0, 2));
  CHECK_THROWS_AS(integrate_regularized_kepler(bad, -0.5, 1.0), std::invalid_argument);
}

TEST_CASE("three-body regularized flow conserves level and constraints") {
  const SystemConfig cfg(0.3);
  const double d = equilibria::find_L1_distance(cfg);
  const double k = equilibria::axis_potential_u(d, cfg).value - 0.05;
  const Vec2 q = cfg.moon_pos() + Vec2(0.05, 0.02);
  const double vgrav = model::effective_potential(q, cfg) + 0.5 * q.squaredNorm();
  const Vec2 u(0.3, -0.95);
  const Vec2 un = u.normalized();
  const double b = un.dot(Vec2(q.y(), -q.x()));
  const double t = -b + std::sqrt(b * b - 2.0 * (vgrav - k));
  const PhasePoint x0(q, t * un);
  const auto pt0 = moser::lift_from_rotating(x0, cfg, moser::PrimaryChoice::moon);
  const auto traj = integrate_regularized_3bp(pt0, k, cfg, moser::PrimaryChoice::moon, 3.0);
  CHECK(traj.conserved_drift() < 1e-9);
  CHECK(traj.max_constraint_defect() < 1e-10);
}

TEST_CASE("rotating and regularized flows trace the same arc") {
  const SystemConfig cfg(0.3);
  const double d = equilibria::find_L1_distance(cfg);
  const double k = equilibria::axis_potential_u(d, cfg).value - 0.05;
  const Vec2 q = cfg.moon_pos() + Vec2(0.1, 0.05);
  const double vgrav = model::effective_potential(q, cfg) + 0.5 * q.squaredNorm();
  const Vec2 un = Vec2(0.2, 1.0).normalized();
  const double b = un.dot(Vec2(q.y(), -q.x()));
  const double disc = b * b - 2.0 * (vgrav - k);
  REQUIRE(disc > 0.0);
  const PhasePoint x0(q, (-b + std::sqrt(disc)) * un);
  const double deviation = correspondence_check(x0, cfg, 1.0);
  CHECK(deviation < 1e-6);
  // refining the comparison parameters does not change the answer
  const double deviation2 = correspondence_check(x0, cfg, 1.0, moser::PrimaryChoice::moon, 128);
  CHECK(deviation2 < 1e-6);
}

TEST_CASE("Kepler correspondence at mu = 0") {
  const SystemConfig cfg(0.0);
  const PhasePoint x0(0.4, 0.0, 0.0, 0.9);
  CHECK(correspondence_check(x0, cfg, 1.0, moser::PrimaryChoice::earth) < 1e-6);
}

TEST_CASE("collision passage: velocity explodes while Q stays put") {
  const SystemConfig cfg(0.3);
  const double d = equilibria::find_L1_distance(cfg);
  const double k = equilibria::axis_potential_u(d, cfg).value - 0.05;
  const auto passage = collision_passage_demo(cfg, k);
  CHECK(passage.max_pullback_p > 1e3);
  CHECK(passage.q_drift < 1e-9);
  CHECK(passage.max_xi0 > 0.999);
  CHECK(passage.energy_defect < 1e-8);
}

TEST_CASE("retrograde circular orbit of the rotating Kepler problem") {
  const SystemConfig cfg(0.0);
  const double r = 0.2;
  const double c = -1.0 / (2.0 * r) + std::sqrt(r);
  PeriodicOrbitHint hint;
  hint.q1_lo = 0.15;
  hint.q1_hi = 0.25;
  hint.retrograde = true;
  const auto orbit = find_symmetric_periodic_orbit(cfg, c, hint);
  REQUIRE(orbit.has_value());
  CHECK(orbit->q1_start == doctest::Approx(r).epsilon(1e-8));
  CHECK(orbit->period == doctest::Approx(2.0 * M_PI / (1.0 + std::pow(r, -1.5))).epsilon(1e-6));
  CHECK(orbit->closure_defect < 1e-8);
  // energy is conserved along the found orbit
  CHECK(orbit->trajectory.conserved_drift() < 1e-9);
  for (const auto& s : orbit->trajectory.samples)
    CHECK(std::abs(s.conserved - c) < 1e-8 * std::max(1.0, std::abs(c)));
}

TEST_CASE("a finer shooting scan still finds the same orbit") {
  const SystemConfig cfg(0.3);
  const double d = equilibria::find_L1_distance(cfg);
  const double c = equilibria::axis_potential_u(d, cfg).value - 0.1;
  PeriodicOrbitHint hint;
  hint.q1_lo = cfg.moon_pos().x() + 0.03;
  hint.q1_hi = cfg.moon_pos().x() + 0.8 * d;
  hint.retrograde = true;
  const auto orbit = find_symmetric_periodic_orbit(cfg, c, hint);
  REQUIRE(orbit.has_value());
  CHECK(orbit->closure_defect < 1e-8);
  PeriodicOrbitHint narrowed = hint;
  narrowed.q1_lo = orbit->q1_start - 0.01;
  narrowed.q1_hi = orbit->q1_start + 0.01;
  const auto again = find_symmetric_periodic_orbit(cfg, c, narrowed);
  REQUIRE(again.has_value());
  CHECK(again->q1_start == doctest::Approx(orbit->q1_start).epsilon(1e-6));
}

TEST_CASE("exhausted brackets report not-found") {
  const SystemConfig cfg(0.3);
  PeriodicOrbitHint hint;
  hint.q1_lo = 2.5;  // far outside the Hill region
  hint.q1_hi = 2.6;
  hint.max_half_time = 1.0;
  CHECK_FALSE(find_symmetric_periodic_orbit(cfg, -2.1, hint).has_value());
}
