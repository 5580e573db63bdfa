#include <doctest.h>

#include <cmath>
#include <random>

#include "pcr3bp/contact.hpp"
#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/gridscan.hpp"
#include "pcr3bp/model.hpp"

using namespace pcr3bp;
using namespace pcr3bp::contact;

namespace {
std::mt19937& rng() {
  static std::mt19937 gen(31415);
  return gen;
}

double critical_value(const SystemConfig& cfg) {
  return equilibria::axis_potential_u(equilibria::find_L1_distance(cfg), cfg).value;
}
}  // namespace

TEST_CASE("dH(X) matches the lunar polar closed form") {
  const SystemConfig cfg(0.3);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> rad(0.03, 0.4);
  std::uniform_real_distribution<double> mom(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const double rho = rad(rng()), th = ang(rng());
    const Vec2 q = cfg.moon_pos() + rho * Vec2(std::cos(th), std::sin(th));
    const PhasePoint x(q, Vec2(mom(rng()), mom(rng())));
    const double dU = model::potential_partials(LunarPolar(rho, th), cfg).dU_drho;
    const double closed = rho * std::sin(th) * (x.p.x() + rho * std::sin(th)) -
                          rho * std::cos(th) *
                              (x.p.y() - rho * std::cos(th) + 1.0 - cfg.mu) +
                          rho * dU;
    CHECK(liouville_X_of_H(x, cfg) ==
          doctest::Approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("X is Liouville: Lie derivative of the two-form reproduces it") {
  // X = (q - M) d/dq has constant Jacobian diag(1,1,0,0); the Lie
  // derivative of the constant two-form is DX^T Om + Om DX.
  const SystemConfig cfg(0.3);
  const double h = 1e-5;
  Mat4 Om = Mat4::Zero();
  Om(0, 2) = 1;
  Om(1, 3) = 1;
  Om(2, 0) = -1;
  Om(3, 1) = -1;
  auto Xfield = [&](const Vec4& z) {
    return Vec4(z[0] - cfg.moon_pos().x(), z[1] - cfg.moon_pos().y(), 0.0, 0.0);
  };
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (int s = 0; s < 50; ++s) {
    Vec4 z;
    for (int i = 0; i < 4; ++i) z[i] = box(rng());
    Mat4 DX;
    for (int i = 0; i < 4; ++i) {
      Vec4 zp = z, zm = z;
      zp[i] += h;
      zm[i] -= h;
      DX.col(i) = (Xfield(zp) - Xfield(zm)) / (2.0 * h);
    }
    const Mat4 lie = DX.transpose() * Om + Om * DX;
    CHECK((lie - Om).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("on the kinetic-equality fiber point dH(X) reduces to rho dU/drho") {
  const SystemConfig cfg(0.25);
  const double rho = 0.2, th = 0.9;
  const Vec2 q = cfg.moon_pos() + rho * Vec2(std::cos(th), std::sin(th));
  // both kinetic brackets vanish: p1 = -q2, p2 = q1
  const PhasePoint x(q, Vec2(-q.y(), q.x()));
  const double dU = model::potential_partials(LunarPolar(rho, th), cfg).dU_drho;
  CHECK(liouville_X_of_H(x, cfg) == doctest::Approx(rho * dU).epsilon(1e-12));
}

TEST_CASE("moon margin positive over the component, boundary and limit behavior") {
  const SystemConfig cfg(0.3);
  const double c1 = critical_value(cfg);
  const double c = c1 - 0.05;
  // interior points have positive margin
  const double d = equilibria::find_L1_distance(cfg);
  for (double rho = 0.02; rho < 0.8 * d; rho += 0.03)
    for (double th = 0.0; th < 6.28; th += 0.4) {
      const LunarPolar pt(rho, th);
      if (model::effective_potential_lunar(pt, cfg) > c) continue;
      CHECK(moon_sufficient_margin(pt, c, cfg) > 0.0);
    }
  // outside the Hill region the margin is rejected
  CHECK_THROWS_AS(moon_sufficient_margin(LunarPolar(d, 0.0), c, cfg), std::invalid_argument);
  // toward the critical level along the axis the margin shrinks to zero
  double prev = std::numeric_limits<double>::infinity();
  for (const double delta : {3e-1, 1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double cc = c1 - delta;
    // boundary point on the axis: U = cc there, margin = dU/drho > 0
    double lo = 1e-3, hi = d;
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (model::effective_potential_lunar(LunarPolar(mid, 0.0), cfg) <= cc ? lo : hi) = mid;
    }
    const double m = moon_sufficient_margin(LunarPolar(lo, 0.0), cc, cfg);
    CHECK(m > 0.0);
    CHECK(m < prev);
    prev = m;
  }
  CHECK(prev < 0.05);  // approaches zero at the pinch
}

TEST_CASE("certify_moon_component across mass ratios and offsets") {
  for (const double mu : {0.1, 0.3, 0.5}) {
    const SystemConfig cfg(mu);
    const double c1 = critical_value(cfg);
    CertifyOptions opts;
    opts.n_radial = 200;
    opts.n_angular = 200;
    opts.fiber_positions = 100;
    for (const double delta : {0.1, 0.01, 0.001}) {
      const auto rep = certify_moon_component(c1 - delta, cfg, opts);
      CHECK(rep.verdict == Verdict::certified);
      CHECK(rep.min_margin > 0.0);
      CHECK(rep.grid.at("fiber_min_dHX") > 0.0);
    }
  }
}

TEST_CASE("symmetric case puts the argmin on the axis") {
  const SystemConfig cfg(0.5);
  CertifyOptions opts;
  opts.n_radial = 300;
  opts.n_angular = 256;
  opts.fiber_positions = 50;
  const auto rep = certify_moon_component(critical_value(cfg) - 0.05, cfg, opts);
  const double th = rep.argmin.at(1);
  CHECK(std::min(th, 2.0 * M_PI - th) < 2.0 * M_PI / opts.n_angular + 1e-12);
}

TEST_CASE("margin grows with the distance below the critical value") {
  const SystemConfig cfg(0.3);
  const double c1 = critical_value(cfg);
  CertifyOptions opts;
  opts.n_radial = 150;
  opts.n_angular = 150;
  opts.fiber_positions = 20;
  const auto far = certify_moon_component(c1 - 1.0, cfg, opts);
  const auto near = certify_moon_component(c1 - 0.01, cfg, opts);
  CHECK(far.min_margin > near.min_margin);
}

TEST_CASE("grid refinement stability of the reported margin") {
  const SystemConfig cfg(0.3);
  const double c = critical_value(cfg) - 0.1;
  CertifyOptions coarse;
  coarse.n_radial = 250;
  coarse.n_angular = 250;
  coarse.fiber_positions = 10;
  CertifyOptions fine = coarse;
  fine.n_radial = 500;
  fine.n_angular = 500;
  const double m1 = certify_moon_component(c, cfg, coarse).min_margin;
  const double m2 = certify_moon_component(c, cfg, fine).min_margin;
  CHECK(std::abs(m1 - m2) < 0.1 * std::abs(m1));
}

TEST_CASE("worker count does not change the verdict or the margin") {
  const SystemConfig cfg(0.3);
  const double c = critical_value(cfg) - 0.05;
  CertifyOptions opts;
  opts.n_radial = 120;
  opts.n_angular = 120;
  opts.fiber_positions = 25;
  opts.workers = 1;
  const auto a = certify_moon_component(c, cfg, opts);
  opts.workers = 7;
  const auto b = certify_moon_component(c, cfg, opts);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.argmin == b.argmin);
  CHECK(a.verdict == b.verdict);
  CHECK(a.samples == b.samples);
}

TEST_CASE("earth margin equals the relabeled moon margin") {
  const SystemConfig cfg(0.3);
  const SystemConfig swapped(1.0 - cfg.mu);
  const double k = critical_value(cfg) - 0.05;
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> rad(0.02, 0.3);
  int kept = 0;
  while (kept < 500) {
    const double rho = rad(rng()), th = ang(rng());
    const LunarPolar pt(rho, th);
    if (model::effective_potential_lunar(pt, swapped) > k) continue;
    ++kept;
    const double lhs = earth_cartesian_margin(rho * std::cos(th), rho * std::sin(th), k, cfg);
    const double rhs = rho * moon_sufficient_margin(pt, k, swapped);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("chart margin is a fiber lower bound for dH(X)") {
  // the chart inequality chain: dH(X) over momenta on the level fiber is
  // bounded below by the closed-form margin, with equality at the
  // aligned momentum
  const SystemConfig cfg(0.3);
  const double k = critical_value(cfg) - 0.05;
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> rad(0.02, 0.3);
  int kept = 0;
  while (kept < 300) {
    const double rho = rad(rng()), th = ang(rng());
    const LunarPolar pt(rho, th);
    double U;
    try {
      U = model::effective_potential_lunar(pt, cfg);
    } catch (const SingularityError&) {
      continue;
    }
    if (U > k) continue;
    ++kept;
    const double margin = rho * moon_sufficient_margin(pt, k, cfg);
    const Vec2 q = pt.to_cartesian(cfg);
    const double r = std::sqrt(2.0 * (k - U));
    double fiber_min = std::numeric_limits<double>::infinity();
    for (int m = 0; m < 64; ++m) {
      const double phi = 2.0 * M_PI * m / 64;
      const PhasePoint x(q, Vec2(r * std::cos(phi) - q.y(), r * std::sin(phi) + q.x()));
      fiber_min = std::min(fiber_min, liouville_X_of_H(x, cfg));
    }
    CHECK(fiber_min >= margin - 1e-10);
    CHECK(fiber_min <= margin + r * rho * 0.2 + 1e-9);  // the bound is tight on the fiber
  }
}

TEST_CASE("strict mode still certifies away from the critical level") {
  const SystemConfig cfg(0.3);
  CertifyOptions opts;
  opts.n_radial = 200;
  opts.n_angular = 200;
  opts.fiber_positions = 20;
  opts.strict = true;
  const auto rep = certify_moon_component(critical_value(cfg) - 0.05, cfg, opts);
  CHECK(rep.verdict == Verdict::certified);
  CHECK(rep.grid.count("strict_gate") == 1);
  CHECK(rep.grid.at("strict_gate") > 0.0);
}

TEST_CASE("earth component certifies") {
  const SystemConfig cfg(0.3);
  CertifyOptions opts;
  opts.n_radial = 200;
  opts.n_angular = 200;
  opts.fiber_positions = 100;
  const auto rep = certify_earth_component(critical_value(cfg) - 0.05, cfg, opts);
  CHECK(rep.verdict == Verdict::certified);
}

TEST_CASE("certification refuses energies at the critical value") {
  const SystemConfig cfg(0.3);
  CHECK_THROWS_AS(certify_moon_component(critical_value(cfg) + 0.01, cfg), std::invalid_argument);
}

TEST_CASE("starshapedness of the regularized Kepler levels") {
  for (const double k : {-1.6, -2.0, -5.0}) {
    const auto rep = starshaped_slice_scan(k, 200, 32);
    CHECK(rep.verdict == Verdict::certified);
    CHECK(rep.min_margin > 0.0);
  }
  // geodesic case: f'(1) = 1 identically on |eta| = 1
  const double th = 1.1;
  const moser::CotangentSpherePoint pt(Vec3(std::cos(th), 0.0, std::sin(th)),
                                       Vec3(-std::sin(th), 0.0, std::cos(th)));
  CHECK(kepler_starshaped_fprime(pt, -0.5) == doctest::Approx(1.0).epsilon(1e-12));
  // off-level points are rejected
  CHECK_THROWS_AS(kepler_starshaped_fprime(
                      moser::CotangentSpherePoint(Vec3(std::cos(th), 0.0, std::sin(th)),
                                                  2.0 * Vec3(-std::sin(th), 0.0, std::cos(th))),
                      -0.5),
                  std::invalid_argument);
}

TEST_CASE("g and h closed forms") {
  CHECK(h_of(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(h_of(0.5) == doctest::Approx(1.6875).epsilon(1e-15));
  CHECK(g_a(M_PI / 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(h_prime(0.5) == doctest::Approx(4.5).epsilon(1e-14));
  CHECK_THROWS_AS(h_of(1.0), std::invalid_argument);
  CHECK_THROWS_AS(g_a(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("fiberwise margin on the regularized level") {
  const SystemConfig cfg(0.3);
  const double k = critical_value(cfg) - 0.05;
  const auto scan = fiber_zone_scan(cfg, k, 0.05, 10000);
  CHECK(scan.samples == 10000);
  CHECK(scan.min_XQ > 0.0);
  CHECK(scan.max_eta_norm <= 2.0);
  CHECK(scan.min_f_abs >= cfg.mu / 2.0);
}

TEST_CASE("fiber margin rejects off-level and far points") {
  const SystemConfig cfg(0.3);
  const double k = critical_value(cfg) - 0.05;
  const moser::CotangentSpherePoint pt(Vec3(0, 0, 1), Vec3(0.0, 0.5, 0.0));
  CHECK_THROWS_AS(regularized_fiber_margin(pt, k, cfg, 0.05), std::invalid_argument);
}
