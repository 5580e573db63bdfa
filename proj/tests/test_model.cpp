#include <doctest.h>

#include <cmath>
#include <random>

#include "pcr3bp/model.hpp"

using namespace pcr3bp;

namespace {

std::mt19937& rng() {
  static std::mt19937 gen(424242);
  return gen;
}

// Random phase point staying clear of both primaries.
PhasePoint random_point(const SystemConfig& cfg, double clearance = 0.05) {
  std::uniform_real_distribution<double> box(-1.8, 1.8);
  for (;;) {
    const Vec2 q(box(rng()), box(rng()));
    if ((q - cfg.earth_pos()).norm() < clearance) continue;
    if ((q - cfg.moon_pos()).norm() < clearance) continue;
    return PhasePoint(q, Vec2(box(rng()), box(rng())));
  }
}

double fd_partial(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("rotating Kepler circular point has H = -3/2") {
  const SystemConfig cfg(0.0);
  CHECK(model::hamiltonian(PhasePoint(1.0, 0.0, 0.0, 1.0), cfg) == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("equal masses at the origin") {
  const SystemConfig cfg(0.5);
  CHECK(model::hamiltonian(PhasePoint(0.0, 0.0, 0.0, 0.0), cfg) == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(model::effective_potential(Vec2(0.0, 0.0), cfg) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("both Hamiltonian forms agree") {
  for (const double mu : {0.0, 0.1, 0.3, 0.5, 0.9}) {
    const SystemConfig cfg(mu);
    for (int i = 0; i < 2000; ++i) {
      const PhasePoint x = random_point(cfg);
      CHECK(std::abs(model::hamiltonian(x, cfg) - model::hamiltonian_completed(x, cfg)) < 1e-12);
    }
  }
}

TEST_CASE("kinetic block vanishes on the axis lift") {
  const SystemConfig cfg(0.5);
  // apex of the equilateral triangle for equal masses
  const Vec2 apex(0.0, std::sqrt(3.0) / 2.0);
  const PhasePoint lift(apex, Vec2(-apex.y(), apex.x()));
  CHECK(model::hamiltonian_completed(lift, cfg) == doctest::Approx(-1.375).epsilon(1e-14));
  CHECK(model::effective_potential(apex, cfg) == doctest::Approx(-1.375).epsilon(1e-14));
}

TEST_CASE("reflection symmetry of the effective potential") {
  const SystemConfig cfg(0.27);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 q(box(rng()), box(rng()));
    if ((q - cfg.earth_pos()).norm() < 0.02 || (q - cfg.moon_pos()).norm() < 0.02) continue;
    CHECK(model::effective_potential(q, cfg) ==
          doctest::Approx(model::effective_potential(Vec2(q.x(), -q.y()), cfg)).epsilon(1e-13));
  }
}

TEST_CASE("Kepler effective potential on the unit circle") {
  const SystemConfig cfg(0.0);
  for (double th = 0.1; th < 6.2; th += 0.37) {
    const Vec2 q(std::cos(th), std::sin(th));
    CHECK(model::effective_potential(q, cfg) == doctest::Approx(-1.5).epsilon(1e-14));
  }
}

TEST_CASE("lunar chart matches the Cartesian potential") {
  for (const double mu : {0.05, 0.2, 0.5}) {
    const SystemConfig cfg(mu);
    std::uniform_real_distribution<double> rad(0.02, 1.7);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    int kept = 0;
    while (kept < 2000) {
      const LunarPolar pt(rad(rng()), ang(rng()));
      const Vec2 q = pt.to_cartesian(cfg);
      if ((q - cfg.earth_pos()).norm() < 0.02) continue;
      ++kept;
      const double a = model::effective_potential_lunar(pt, cfg);
      const double b = model::effective_potential(q, cfg);
      CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("axis value gap closed form") {
  const SystemConfig cfg(0.2);
  const double rho = 0.3;
  const double gap = model::effective_potential_lunar(LunarPolar(rho, 0.0), cfg) -
                     model::effective_potential_lunar(LunarPolar(rho, M_PI), cfg);
  const double closed = -2.0 * (1.0 - cfg.mu) * rho * rho * rho / ((1.0 - rho) * (1.0 + rho));
  CHECK(std::abs(gap - closed) < 1e-12);
}

TEST_CASE("lunar partials agree with finite differences") {
  const SystemConfig cfg(0.31);
  std::uniform_real_distribution<double> rad(0.05, 0.8);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
  int kept = 0;
  while (kept < 1000) {
    const double rho = rad(rng());
    const double th = ang(rng());
    if ((LunarPolar(rho, th).to_cartesian(cfg) - cfg.earth_pos()).norm() < 0.05) continue;
    ++kept;
    const auto p = model::potential_partials(LunarPolar(rho, th), cfg);
    auto U_r = [&](double r) { return model::effective_potential_lunar(LunarPolar(r, th), cfg); };
    auto U_t = [&](double t) { return model::effective_potential_lunar(LunarPolar(rho, t), cfg); };
    auto Ur_t = [&](double t) { return model::potential_partials(LunarPolar(rho, t), cfg).dU_drho; };
    auto Urr_r = [&](double r) {
      return model::potential_partials(LunarPolar(r, th), cfg).d2U_drho2;
    };
    CHECK(p.dU_drho == doctest::Approx(fd_partial(U_r, rho)).epsilon(1e-6));
    CHECK(p.dU_dtheta == doctest::Approx(fd_partial(U_t, th)).epsilon(1e-6));
    CHECK(p.d2U_drhodtheta == doctest::Approx(fd_partial(Ur_t, th)).epsilon(1e-6));
    CHECK(p.d3U_drho3 == doctest::Approx(fd_partial(Urr_r, rho)).epsilon(1e-6));
    auto Ur_r = [&](double r) { return model::potential_partials(LunarPolar(r, th), cfg).dU_drho; };
    CHECK(p.d2U_drho2 == doctest::Approx(fd_partial(Ur_r, rho)).epsilon(1e-6));
  }
}

TEST_CASE("radial derivative axis gap closed form") {
  const SystemConfig cfg(0.3);
  const double rho = 0.4;
  const double gap = model::potential_partials(LunarPolar(rho, 0.0), cfg).dU_drho -
                     model::potential_partials(LunarPolar(rho, M_PI), cfg).dU_drho;
  const double closed = 2.0 * (1.0 - cfg.mu) * (std::pow(rho, 4) - 3.0 * rho * rho) /
                        ((1.0 - rho) * (1.0 - rho) * (1.0 + rho) * (1.0 + rho));
  CHECK(std::abs(gap - closed) < 1e-12);
}

TEST_CASE("angular derivative vanishes on the axis") {
  const SystemConfig cfg(0.4);
  for (double rho = 0.05; rho < 0.9; rho += 0.07) {
    CHECK(std::abs(model::potential_partials(LunarPolar(rho, 0.0), cfg).dU_dtheta) < 1e-15);
    CHECK(std::abs(model::potential_partials(LunarPolar(rho, M_PI), cfg).dU_dtheta) < 1e-15);
  }
}

TEST_CASE("Hamiltonian field conserves H and matches finite differences") {
  const SystemConfig cfg(0.3);
  for (int i = 0; i < 2000; ++i) {
    const PhasePoint x = random_point(cfg);
    const Vec4 v = model::hamiltonian_vector_field(x, cfg);
    const Vec4 g = model::hamiltonian_gradient(x, cfg);
    CHECK(std::abs(g.dot(v)) < 1e-10 * std::max(1.0, g.norm() * v.norm()));
  }
  for (int i = 0; i < 200; ++i) {
    const PhasePoint x = random_point(cfg);
    const Vec4 g = model::hamiltonian_gradient(x, cfg);
    for (int j = 0; j < 4; ++j) {
      auto f = [&](double z) {
        Vec4 y = x.as_vec4();
        y[j] = z;
        return model::hamiltonian(PhasePoint::from_vec4(y), cfg);
      };
      CHECK(g[j] == doctest::Approx(fd_partial(f, x.as_vec4()[j])).epsilon(1e-6));
    }
  }
}

TEST_CASE("singularity guard names the offending primary") {
  const SystemConfig cfg(0.3);
  CHECK_THROWS_AS(model::hamiltonian(PhasePoint(cfg.moon_pos(), Vec2(0, 0)), cfg),
                  SingularityError);
  try {
    model::effective_potential(cfg.earth_pos() + Vec2(1e-12, 0.0), cfg);
    FAIL("expected a singularity error");
  } catch (const SingularityError& e) {
    CHECK(e.which() == Primary::earth);
  }
  // A massless moon cannot be singular.
  const SystemConfig kepler(0.0);
  CHECK_NOTHROW(model::effective_potential(kepler.moon_pos(), kepler));
}
