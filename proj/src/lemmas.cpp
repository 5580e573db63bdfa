#include "pcr3bp/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/gridscan.hpp"
#include "pcr3bp/model.hpp"
#include "pcr3bp/rational.hpp"

namespace pcr3bp::verifier {

namespace {

double U_lunar(double rho, double theta, const SystemConfig& cfg) {
  return model::effective_potential_lunar(LunarPolar(rho, theta), cfg);
}

model::PotentialPartials partials(double rho, double theta, const SystemConfig& cfg) {
  return model::potential_partials(LunarPolar(rho, theta), cfg);
}

// d^2 U / d theta^2, analytic.
double U_thth(double rho, double theta, const SystemConfig& cfg) {
  const double mu = cfg.mu;
  const double c = std::cos(theta), s = std::sin(theta);
  const double kappa = rho * rho - 2.0 * rho * c + 1.0;
  const double k32 = std::pow(kappa, 1.5), k52 = k32 * kappa;
  return (1.0 - mu) * rho * (c * (1.0 / k32 - 1.0) - 3.0 * rho * s * s / k52);
}

// d^3 U / (d rho d theta^2), analytic (for the angular structure of V).
double V_thth(double rho, double theta, const SystemConfig& cfg) {
  const double mu = cfg.mu;
  const double c = std::cos(theta), s = std::sin(theta);
  const double kappa = rho * rho - 2.0 * rho * c + 1.0;
  const double k52 = std::pow(kappa, 2.5), k72 = k52 * kappa;
  const double g5 = (-2.0 * rho * rho + rho * c + 1.0) / k52;
  const double dg5 = (-rho * s) / k52 -
                     (-2.0 * rho * rho + rho * c + 1.0) * 5.0 * rho * s / k72;
  return (1.0 - mu) * (c * (g5 - 1.0) + s * dg5);
}

double W_of(double rho, double theta, const SystemConfig& cfg) {
  return partials(rho, theta, cfg).d2U_drho2 + 1.0;
}

void check(bool ok, const std::string& what, LemmaReport& rep) {
  if (!ok) {
    rep.pass = false;
    if (rep.notes.size() < 20) rep.notes.push_back(what);
  }
}

// Richardson-extrapolated central difference, O(h^4).
double dtheta(const std::function<double(double)>& f, double th, double h = 1e-4) {
  const double d1 = (f(th + h) - f(th - h)) / (2.0 * h);
  const double d2 = (f(th + h / 2) - f(th - h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

LemmaReport verify_tra1(const SystemConfig& cfg, const LemmaGrid& grid) {
  LemmaReport rep;
  rep.id = "tra1";
  rep.pass = true;
  rep.grid = {{"mu", cfg.mu}, {"n_rho", double(grid.n_rho)}, {"n_theta", double(grid.n_theta)}};
  const double mu = cfg.mu;
  const double clip = grid.endpoint_clip;
  const double th_step = 2.0 * M_PI / grid.n_theta;
  double worst = std::numeric_limits<double>::infinity();

  for (int i = 0; i < grid.n_rho; ++i) {
    const double rho = clip + (1.0 - 2 * clip) * i / (grid.n_rho - 1);

    // Angular grid minimum must sit at theta = 0 (mod resolution).
    double best = std::numeric_limits<double>::infinity(), best_th = 0.0;
    for (int j = 0; j < grid.n_theta; ++j) {
      const double th = th_step * j;
      const double v = U_lunar(rho, th, cfg);
      if (v < best) {
        best = v;
        best_th = th;
      }
    }
    const double dist0 = std::min(best_th, 2.0 * M_PI - best_th);
    check(dist0 <= th_step, "grid minimum away from theta = 0 at rho = " + std::to_string(rho),
          rep);

    // Stationarity at 0 and pi, convexity there, and the value gap.
    check(std::abs(partials(rho, 0.0, cfg).dU_dtheta) < 1e-14, "dU/dtheta(0) != 0", rep);
    check(std::abs(partials(rho, M_PI, cfg).dU_dtheta) < 1e-14, "dU/dtheta(pi) != 0", rep);
    const double u0 = U_thth(rho, 0.0, cfg);
    const double upi = U_thth(rho, M_PI, cfg);
    check(u0 > 0.0, "U_thth(0) <= 0", rep);
    check(upi > 0.0, "U_thth(pi) <= 0", rep);
    const double gap = U_lunar(rho, 0.0, cfg) - U_lunar(rho, M_PI, cfg);
    const double gap_closed = -2.0 * (1.0 - mu) * rho * rho * rho / ((1.0 - rho) * (1.0 + rho));
    // the direct difference drops below double resolution as rho^3 near
    // the center; assert the sign only where it is resolvable
    if (rho >= 0.01) check(gap < 0.0, "U(rho,0) >= U(rho,pi)", rep);
    // closed-form matches on the range where the direct differences are
    // well conditioned (the 1/(1-rho) terms blow up toward rho = 1)
    if (rho >= 0.01 && rho <= 0.9) {
      const double om = 1.0 - rho;
      const double closed0 = (1.0 - mu) * rho * (1.0 / (om * om * om) - 1.0);
      check(std::abs(u0 - closed0) < 1e-12 * std::max(1.0, std::abs(closed0)),
            "U_thth(0) closed form mismatch", rep);
      check(std::abs(gap - gap_closed) < 1e-12 * std::max(1.0, std::abs(gap_closed)),
            "value gap closed form mismatch", rep);
    }

    // Interior maxima satisfy cos(theta) = rho/2.
    double max_v = -std::numeric_limits<double>::infinity(), max_th = 0.0;
    for (int j = 1; j * th_step < M_PI; ++j) {
      const double th = th_step * j;
      const double v = U_lunar(rho, th, cfg);
      if (v > max_v) {
        max_v = v;
        max_th = th;
      }
    }
    check(std::abs(std::cos(max_th) - rho / 2.0) < 2.0 * th_step,
          "interior maximum violates cos(theta) = rho/2 at rho = " + std::to_string(rho), rep);

  }
  // Margin on a fixed canonical set so refinement of the structural
  // sweep cannot move it: the axial value gap over a log-spaced range.
  for (int i = 0; i < 200; ++i) {
    const double rho = 0.01 * std::pow((1.0 - clip) / 0.01, i / 199.0);
    const double gap = U_lunar(rho, M_PI, cfg) - U_lunar(rho, 0.0, cfg);
    if (gap < worst) {
      worst = gap;
      rep.witness = {rho, M_PI};
    }
  }
  rep.worst_margin = worst;
  if (!(worst > 0.0)) rep.pass = false;
  return rep;
}

LemmaReport verify_tra2(const SystemConfig& cfg, const LemmaGrid& grid) {
  LemmaReport rep;
  rep.id = "tra2";
  rep.pass = true;
  const double mu = cfg.mu;
  const double d = equilibria::find_L1_distance(cfg);
  rep.grid = {{"mu", mu}, {"n_rho", double(grid.n_rho)}, {"n_theta", double(grid.n_theta)},
              {"d", d}};
  const double exclusion = 1e-3;
  const Vec2 moon = cfg.moon_pos();
  const Vec2 l1 = moon + Vec2(d, 0.0);
  const int n_rho = grid.n_theta;  // the 2D sweep is square-ish; reuse the angular count
  const int n_th = grid.n_theta;
  const double th_step = 2.0 * M_PI / n_th;

  std::function<double(std::size_t)> margin = [&](std::size_t cell) {
    const int i = static_cast<int>(cell / n_th);
    const int j = static_cast<int>(cell % n_th);
    const double rho = exclusion + (d - exclusion) * i / (n_rho - 1);
    const double th = th_step * j;
    const Vec2 q = moon + rho * Vec2(std::cos(th), std::sin(th));
    if ((q - l1).norm() < exclusion) return std::numeric_limits<double>::infinity();
    return partials(rho, th, cfg).dU_drho;
  };
  const MinScanResult scan =
      parallel_min_scan(static_cast<std::size_t>(n_rho) * n_th,
                        grid.workers > 0 ? grid.workers : default_worker_count(), margin);
  rep.worst_margin = scan.min;
  {
    const int i = static_cast<int>(scan.argmin / n_th);
    const int j = static_cast<int>(scan.argmin % n_th);
    rep.witness = {exclusion + (d - exclusion) * i / (n_rho - 1), th_step * j};
  }
  // The infimum over B minus the exclusion disk sits where that disk
  // touches the boundary arc rho = d (the derivative vanishes linearly
  // along the axis but only quadratically along the arc). Evaluate a
  // fixed canonical set containing the tangency so the reported margin
  // does not move under grid refinement: the exclusion circle inside B
  // plus the boundary arc marching away from the tangency angle.
  const double tangency = 2.0 * std::asin(exclusion / (2.0 * d));
  auto consider = [&](double rho, double th) {
    const Vec2 q = moon + rho * Vec2(std::cos(th), std::sin(th));
    if ((q - l1).norm() < exclusion * (1.0 - 1e-12)) return;
    const double v = partials(rho, th, cfg).dU_drho;
    if (v < rep.worst_margin) {
      rep.worst_margin = v;
      rep.witness = {rho, th};
    }
  };
  for (int j = 0; j < 1024; ++j) {
    const double phi = 2.0 * M_PI * j / 1024;
    const Vec2 q = l1 + exclusion * Vec2(std::cos(phi), std::sin(phi));
    const double rho = (q - moon).norm();
    if (rho > d || rho <= exclusion) continue;
    consider(rho, std::atan2(q.y() - moon.y(), q.x() - moon.x()));
  }
  for (int j = 0; j < 200; ++j) {
    const double th = tangency * std::pow(M_PI / tangency, j / 199.0);
    consider(d, th);
    consider(d, -th);
  }
  if (!(rep.worst_margin > 0.0)) rep.pass = false;

  // Angular structure of V = dU/drho on a coarser rho sample.
  for (int i = 1; i <= 40; ++i) {
    const double rho = d * i / 41.0;
    double best = std::numeric_limits<double>::infinity(), best_th = 0.0;
    for (int j = 0; j < n_th; ++j) {
      const double v = partials(rho, th_step * j, cfg).dU_drho;
      if (v < best) {
        best = v;
        best_th = th_step * j;
      }
    }
    const double dist0 = std::min(best_th, 2.0 * M_PI - best_th);
    check(dist0 <= th_step, "V grid minimum away from theta = 0 at rho = " + std::to_string(rho),
          rep);

    const double om = 1.0 - rho;
    const double vz = V_thth(rho, 0.0, cfg);
    const double closed = (1.0 - mu) * ((2.0 * rho + 1.0) / (om * om * om * om) - 1.0);
    check(std::abs(vz - closed) < 1e-12 * std::max(1.0, std::abs(closed)),
          "V_thth(0) closed form mismatch", rep);
    check(vz > 0.0 && V_thth(rho, M_PI, cfg) > 0.0, "V not convex at its axial minima", rep);

    const double gap = partials(rho, 0.0, cfg).dU_drho - partials(rho, M_PI, cfg).dU_drho;
    const double gap_closed = 2.0 * (1.0 - mu) * (std::pow(rho, 4) - 3.0 * rho * rho) /
                              (om * om * (1.0 + rho) * (1.0 + rho));
    check(std::abs(gap - gap_closed) < 1e-12 * std::max(1.0, std::abs(gap_closed)),
          "V value gap closed form mismatch", rep);
    check(gap < 0.0, "V(0) >= V(pi)", rep);
  }
  return rep;
}

LemmaReport verify_tra3(const SystemConfig& cfg, const LemmaGrid& grid) {
  LemmaReport rep;
  rep.id = "tra3";
  rep.pass = true;
  const double d = equilibria::find_L1_distance(cfg);
  rep.grid = {{"mu", cfg.mu}, {"n_rho", double(grid.n_rho)}, {"n_theta", double(grid.n_theta)},
              {"d", d}};
  const double exclusion = 1e-3;
  const int n_rho = grid.n_theta;
  const int n_th = grid.n_theta;
  const double th_step = 2.0 * M_PI / n_th;
  const double rho_step = (d - exclusion) / (n_rho - 1);

  // Margin of the inequality W <= 0 (equivalently d2U/drho2 <= -1).
  std::function<double(std::size_t)> margin = [&](std::size_t cell) {
    const int i = static_cast<int>(cell / n_th);
    const int j = static_cast<int>(cell % n_th);
    const double rho = exclusion + rho_step * i;
    return -W_of(rho, th_step * j, cfg);
  };
  const MinScanResult scan =
      parallel_min_scan(static_cast<std::size_t>(n_rho) * n_th,
                        grid.workers > 0 ? grid.workers : default_worker_count(), margin);
  rep.worst_margin = scan.min;
  const double rho_worst = exclusion + rho_step * static_cast<int>(scan.argmin / n_th);
  rep.witness = {rho_worst, th_step * static_cast<double>(scan.argmin % n_th)};
  if (!(scan.min > 0.0)) rep.pass = false;

  // The grid argmax of W must sit on the boundary rho = d.
  check(std::abs(rho_worst - d) <= rho_step + 1e-12,
        "grid maximum of W not on the boundary (rho = " + std::to_string(rho_worst) + ")", rep);

  // Angular maximizer closed form, via an independent bisection on the
  // finite-difference derivative of the theta-dependent factor of W.
  for (int i = 1; i <= 24; ++i) {
    const double rho = exclusion + (d - exclusion) * i / 24.0;
    const std::function<double(double)> Wr = [&](double th) {
      const double c = std::cos(th);
      const double kappa = rho * rho - 2.0 * rho * c + 1.0;
      return -(2.0 * rho * rho - 4.0 * rho * c - 1.0 + 3.0 * c * c) / std::pow(kappa, 2.5);
    };
    auto Wp = [&](double th) { return dtheta(Wr, th); };
    double lo = 1e-3, hi = M_PI - 1e-3;
    if (Wp(lo) <= 0.0 || Wp(hi) >= 0.0) {
      check(false, "W' bracket failed at rho = " + std::to_string(rho), rep);
      continue;
    }
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (Wp(mid) > 0.0 ? lo : hi) = mid;
    }
    const double th_hat = 0.5 * (lo + hi);
    const double closed = (rho * rho - 1.0 + std::sqrt(-std::pow(rho, 4) + rho * rho + 1.0)) / rho;
    check(std::abs(std::cos(th_hat) - closed) < 1e-10,
          "angular maximizer mismatch at rho = " + std::to_string(rho), rep);
  }
  return rep;
}

LemmaReport verify_W_final(int n_d) {
  LemmaReport rep;
  rep.id = "W_final";
  rep.pass = true;
  rep.grid = {{"n_d", double(n_d)}};
  const double clip = 1e-4;
  double worst = std::numeric_limits<double>::infinity();

  for (int i = 0; i < n_d; ++i) {
    const double d = clip + (1.0 - 2 * clip) * i / (n_d - 1);
    const double s = std::sqrt(1.0 + d * d - std::pow(d, 4));
    const double A = 3.0 - d * d - 2.0 * s;
    const double A52 = std::pow(A, 2.5);
    const double P1 = std::pow(d, 5) - 2 * std::pow(d, 4) + std::pow(d, 3) - d * d + 2 * d - 1;
    const double P2 = std::pow(d, 4) - 2 * std::pow(d, 3) - d * d + 2 * d - 1;
    const double B = 6.0 - 2.0 * std::pow(d, 4) - (6.0 - 2.0 * d * d) * s;
    const double W_closed =
        (2.0 * d * d * (d * d - 3.0 * d + 3.0) * A52 - P1 * B) / (P2 * A52 * d * d);

    if (-W_closed < worst) {
      worst = -W_closed;
      rep.witness = {d};
    }
    check(W_closed < 0.0, "boundary maximum form nonnegative at d = " + std::to_string(d), rep);

    // Scalar estimates used in the negativity argument.
    check((1 + d) * (1 + d) * (1 + d) - (d * d + d + 1) >= 0.0, "(1+d)^3 < d^2+d+1", rep);
    check(d * d - 3 * d + 3 >= 1.0, "d^2-3d+3 < 1", rep);
    const double denom_pow = std::pow(3.0 - d * d + 2.0 * s, 2.5);
    check(std::pow(5.0, 2.5) / denom_pow >= 1.0 - 1e-15, "5^{5/2} ratio < 1", rep);
    check(1.0 / (1.0 + s) < 1.0, "1/(1+sqrt(...)) >= 1", rep);
    const double deriv = -2.0 * d * (1.0 - (1.0 - 2.0 * d * d) / s);
    check(deriv <= 1e-15, "3-d^2+2 sqrt(1+d^2-d^4) not monotone decreasing", rep);

    // Cross check against the direct evaluation of W at the maximizer.
    const double mu = equilibria::mu_from_d(d);
    const double costh = (d * d - 1.0 + s) / d;
    if (d >= 0.01 && d <= 0.99 && std::abs(costh) <= 1.0 && mu > 0.0 && mu < 1.0) {
      const double th = std::acos(costh);
      const SystemConfig cfg(mu);
      const double W_direct = W_of(d, th, cfg);
      check(std::abs(W_direct - W_closed) < 1e-11 * std::max(1.0, std::abs(W_closed)),
            "closed form disagrees with direct evaluation at d = " + std::to_string(d), rep);
    }
  }
  rep.worst_margin = worst;
  if (!(worst > 0.0)) rep.pass = false;
  return rep;
}

LemmaReport verify_h_claim(int n) {
  LemmaReport rep;
  rep.id = "h_claim";
  rep.pass = true;
  if (n % 2 == 0) ++n;  // odd count puts t = 0 on the grid
  rep.grid = {{"n", double(n)}};
  const double clip = 1e-4;
  auto h = [](double t) {
    return std::pow(2.0 - t, 4) / (16.0 * (1.0 - t * t) * (1.0 - t) * (1.0 - t));
  };
  auto hp = [](double t) {
    return -3.0 * t * std::pow(t - 2.0, 3) / (8.0 * (t + 1.0) * (t + 1.0) * std::pow(t - 1.0, 4));
  };
  auto g = [](double a, double th) {
    const double c = std::cos(th);
    return (1.0 + (1.0 - c) * a) * (1.0 + (1.0 - c) * a) / (4.0 * std::sin(th) * (1.0 - c));
  };

  double min_h = std::numeric_limits<double>::infinity(), argmin_t = 0.0;
  int sign_changes = 0;
  double prev_sign = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = -(1.0 - clip) + 2.0 * (1.0 - clip) * i / (n - 1);
    const double v = h(t);
    if (v < min_h) {
      min_h = v;
      argmin_t = t;
    }
    const double s = hp(t) > 0 ? 1.0 : (hp(t) < 0 ? -1.0 : 0.0);
    if (prev_sign != 0.0 && s != 0.0 && s != prev_sign) ++sign_changes;
    if (s != 0.0) prev_sign = s;
  }
  rep.worst_margin = min_h;  // the claim is h >= 1
  rep.witness = {argmin_t};
  check(min_h >= 1.0 - 1e-12, "h dips below 1", rep);
  check(std::abs(argmin_t) <= 2.0 * (1.0 - clip) / (n - 1) + 1e-12, "h minimum away from t = 0",
        rep);
  check(std::abs(h(0.0) - 1.0) < 1e-15, "h(0) != 1", rep);
  check(sign_changes == 1, "h' changes sign more than once", rep);

  // h(cos theta) = g_1(theta)^2 and g_a > g_1 for a > 1.
  for (int j = 1; j < 400; ++j) {
    const double th = M_PI * j / 400.0;
    const double lhs = h(std::cos(th));
    const double rhs = g(1.0, th) * g(1.0, th);
    check(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)),
          "h(cos) = g_1^2 identity fails", rep);
    check(g(2.0, th) > g(1.0, th), "g_2 <= g_1", rep);
    check(g(1.5, th) > g(1.0, th), "g_1.5 <= g_1", rep);
  }

  // Closed-form derivative vs central differences.
  const double fd = (h(0.5 + 1e-6) - h(0.5 - 1e-6)) / 2e-6;
  check(std::abs(hp(0.5) - 4.5) < 1e-12, "h'(1/2) != 9/2", rep);
  check(std::abs(fd - hp(0.5)) < 1e-7, "h' disagrees with finite differences", rep);
  return rep;
}

LemmaReport verify_cortra(const SystemConfig& cfg, int n_c, int n_theta) {
  LemmaReport rep;
  rep.id = "cortra";
  rep.pass = true;
  const double d = equilibria::find_L1_distance(cfg);
  const double HL1 = equilibria::axis_potential_u(d, cfg).value;
  rep.grid = {{"mu", cfg.mu}, {"n_c", double(n_c)}, {"n_theta", double(n_theta)}, {"d", d}};

  // Boundary chain: min over theta of U(d, theta) is attained at theta=0
  // with value H(L1).
  double min_bd = std::numeric_limits<double>::infinity(), min_th = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    const double th = 2.0 * M_PI * j / n_theta;
    const double v = U_lunar(d, th, cfg);
    if (v < min_bd) {
      min_bd = v;
      min_th = th;
    }
  }
  check(std::abs(min_bd - HL1) < 1e-10, "min_theta U(d,theta) != H(L1)", rep);
  check(std::min(min_th, 2.0 * M_PI - min_th) <= 2.0 * M_PI / n_theta + 1e-12,
        "boundary minimum away from theta = 0", rep);

  const std::vector<double> offsets = {1e-6, 1e-4, 1e-2, 0.05, 0.1, 0.2, 0.5, 1.0};
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < std::min<int>(n_c, offsets.size()); ++i) {
    const double c = HL1 - offsets[i];

    // per-ray extent of the component: the first U = c crossing stays
    // strictly inside the ball (dU/drho > 0 makes the crossing unique)
    double max_extent = 0.0;
    for (int j = 0; j < 256; ++j) {
      const double th = 2.0 * M_PI * j / 256;
      double lo = 1e-4, hi = d;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (U_lunar(mid, th, cfg) <= c ? lo : hi) = mid;
      }
      max_extent = std::max(max_extent, lo);
    }
    check(max_extent < d, "component extent reaches the ball radius at c = H(L1) - " +
                              std::to_string(offsets[i]),
          rep);
    if (d - max_extent < worst) {
      worst = d - max_extent;
      rep.witness = {max_extent, 0.0};
    }

    // flood-fill cross check where the neck gap is wider than the grid
    if (offsets[i] >= 0.05) {
      equilibria::HillGridSpec spec;
      spec.resolution = 500;
      const auto region = equilibria::hill_components(c, cfg, spec);
      double max_dist = 0.0;
      for (int iy = 0; iy < region.resolution; ++iy)
        for (int ix = 0; ix < region.resolution; ++ix)
          if (region.labels[std::size_t(iy) * region.resolution + ix] ==
              equilibria::HillLabel::moon)
            max_dist = std::max(max_dist,
                                (region.cell_center(ix, iy) - cfg.moon_pos()).norm());
      check(max_dist > 0.0, "flood fill lost the moon component", rep);
      check(max_dist < d, "moon component reaches the boundary ball at c = H(L1) - " +
                              std::to_string(offsets[i]),
            rep);
    }
  }
  rep.worst_margin = worst;
  return rep;
}

std::vector<IdentityResult> polynomial_identities() {
  using P = RationalPolynomial;
  const P x = poly_x();
  auto pw = [&](const P& p, int n) {
    P out = P::constant(1);
    for (int i = 0; i < n; ++i) out = out * p;
    return out;
  };
  std::vector<IdentityResult> out;

  // (i) d^5 - 2d^4 + d^3 - d^2 + 2d - 1 = (d^2 + d + 1)(d - 1)^3
  {
    const P lhs{-1, 2, -1, 1, -2, 1};
    const P rhs = P{1, 1, 1} * pw(P{-1, 1}, 3);
    out.push_back({"quintic_factors", lhs == rhs});
  }
  // (ii) d^4 - 2d^3 - d^2 + 2d - 1 = (d - 1/2)^4 - 5/2 (d - 1/2)^2 - 7/16
  {
    const P lhs{-1, 2, -1, -2, 1};
    const P shifted = P{Rational(-1, 2), 1};
    const P rhs = pw(shifted, 4) - P::constant(Rational(5, 2)) * pw(shifted, 2) -
                  P::constant(Rational(7, 16));
    out.push_back({"denominator_shifted_form", lhs == rhs});
  }
  // (iii) (3 - d^2)^2 - 4 (1 + d^2 - d^4) = 5 (1 - d)^2 (1 + d)^2
  {
    const P lhs = pw(P{3, 0, -1}, 2) - P::constant(4) * P{1, 0, 1, 0, -1};
    const P rhs = P::constant(5) * pw(P{1, -1}, 2) * pw(P{1, 1}, 2);
    out.push_back({"sqrt_argument_difference", lhs == rhs});
  }
  // (iv) (10 - 6x)^2 (-x^2 + x + 1) - (2x^2 + 4x - 10)^2 = 20 x (3 - 8x + 7x^2 - 2x^3)
  const P cubic{3, -8, 7, -2};
  {
    const P lhs = pw(P{10, -6}, 2) * P{1, 1, -1} - pw(P{-10, 4, 2}, 2);
    const P rhs = P::constant(20) * x * cubic;
    out.push_back({"radical_elimination", lhs == rhs});
    // same statement in rho through x = rho^2
    const P rho2 = P{0, 0, 1};
    out.push_back({"radical_elimination_rho",
                   lhs.compose(rho2) == (P::constant(20) * rho2 * cubic.compose(rho2))});
  }
  // (v) 3 - 8x + 7x^2 - 2x^3 = (x - 1)^2 (3 - 2x)
  {
    const P rhs = pw(P{-1, 1}, 2) * P{3, -2};
    out.push_back({"cubic_factors", cubic == rhs});
  }
  // full factorization in rho: 20 rho^2 (...) = 40 rho^2 (rho-1)^2 (rho+1)^2 (3/2 - rho^2)
  {
    const P rho2 = P{0, 0, 1};
    const P lhs = P::constant(20) * rho2 * cubic.compose(rho2);
    const P rhs = P::constant(40) * rho2 * pw(P{-1, 1}, 2) * pw(P{1, 1}, 2) *
                  P{Rational(3, 2), 0, -1};
    out.push_back({"full_boundary_factorization", lhs == rhs});
  }
  return out;
}

std::vector<LemmaReport> run_all(const SystemConfig& cfg, const LemmaGrid& grid) {
  std::vector<LemmaReport> out;
  out.push_back(verify_tra1(cfg, grid));
  out.push_back(verify_tra2(cfg, grid));
  out.push_back(verify_tra3(cfg, grid));
  out.push_back(verify_cortra(cfg));
  out.push_back(verify_h_claim());
  out.push_back(verify_W_final());
  return out;
}

}  // namespace pcr3bp::verifier
