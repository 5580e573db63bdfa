#include "pcr3bp/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "pcr3bp/model.hpp"

namespace pcr3bp::equilibria {

AxisPotential axis_potential_u(double rho, const SystemConfig& cfg) {
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("axis potential requires rho in (0,1), got " + std::to_string(rho));
  const double mu = cfg.mu;
  const double om = 1.0 - rho;
  AxisPotential out;
  out.value = -mu / rho - (1.0 - mu) / om - 0.5 * (rho - 1.0 + mu) * (rho - 1.0 + mu);
  out.derivative = mu / (rho * rho) - (1.0 - mu) / (om * om) + 1.0 - rho - mu;
  out.second_derivative = -2.0 * mu / (rho * rho * rho) - 2.0 * (1.0 - mu) / (om * om * om) - 1.0;
  return out;
}

// Bisection on [lo,hi] for a function with f(lo) > 0 > f(hi), refined by
// a few Newton steps when a derivative is supplied.
static double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                          double tol, const char* what,
                          const std::function<double(double)>* fprime = nullptr) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw BracketingError(what, lo, hi);
  const bool increasing = fhi > 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == increasing)
      hi = mid;
    else
      lo = mid;
  }
  double x = 0.5 * (lo + hi);
  if (fprime) {
    for (int i = 0; i < 4; ++i) {
      const double fx = f(x);
      const double dfx = (*fprime)(x);
      if (dfx == 0.0) break;
      const double next = x - fx / dfx;
      if (next <= lo || next >= hi) break;
      x = next;
    }
  }
  return x;
}

double find_L1_distance(const SystemConfig& cfg) {
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0))
    throw std::invalid_argument("degenerate mass ratio: no interior collinear point for mu = " +
                                std::to_string(cfg.mu));
  auto f = [&](double rho) { return axis_potential_u(rho, cfg).derivative; };
  std::function<double(double)> fp = [&](double rho) {
    return axis_potential_u(rho, cfg).second_derivative;
  };
  // u' decreases from +inf to -inf on (0,1) since u is strictly concave.
  return bisect_root(f, 1e-6, 1.0 - 1e-6, 1e-13, "L1 search: u' has no sign change", &fp);
}

double mu_from_d(double d) {
  if (!(d > 0.0 && d < 1.0))
    throw std::invalid_argument("d must lie in (0,1), got " + std::to_string(d));
  const double d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d;
  const double denom = d4 - 2.0 * d3 - d2 + 2.0 * d - 1.0;
  // denom = (d-1/2)^4 - 5/2 (d-1/2)^2 - 7/16 < 0 on (0,1)
  if (denom >= 0.0) throw std::logic_error("mass-ratio denominator vanished on (0,1)");
  return -(d5 - 3.0 * d4 + 3.0 * d3) / denom;
}

// dU/dx along the axis (q2 = 0), valid away from both primaries.
static double axis_gradient(double x, const SystemConfig& cfg) {
  return model::effective_potential_gradient(Vec2(x, 0.0), cfg).x();
}

LagrangeSet find_lagrange_points(const SystemConfig& cfg) {
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0))
    throw std::invalid_argument("degenerate mass ratio: Lagrange points require mu in (0,1)");
  LagrangeSet set;
  const double mu = cfg.mu;
  const Vec2 moon = cfg.moon_pos();

  set.d = find_L1_distance(cfg);
  const double eps = 1e-6;
  auto g = [&](double x) { return axis_gradient(x, cfg); };

  const double x1 = moon.x() + set.d;
  // L2 beyond the moon: dU/dx runs from -x at -3 (positive) down to -inf
  // at the moon.
  const double x2 = bisect_root(g, -3.0, moon.x() - eps, 1e-13, "L2 search");
  // L3 beyond the earth.
  const double x3 = bisect_root([&](double x) { return -g(x); }, cfg.earth_pos().x() + eps, 3.0,
                                1e-13, "L3 search");

  const Vec2 tri(mu - 0.5, std::sqrt(3.0) / 2.0);
  const std::array<Vec2, 5> pos = {Vec2(x1, 0.0), Vec2(x2, 0.0), Vec2(x3, 0.0), tri,
                                   Vec2(tri.x(), -tri.y())};
  for (int j = 0; j < 5; ++j) {
    LagrangePoint& L = set.points[j];
    L.index = j + 1;
    L.position = pos[j];
    L.lift = Vec4(pos[j].x(), pos[j].y(), -pos[j].y(), pos[j].x());
    L.value = model::effective_potential(pos[j], cfg);
  }
  return set;
}

bool hill_membership(const Vec2& q, double c, const SystemConfig& cfg) {
  return model::effective_potential(q, cfg) <= c;
}

const char* hill_label_name(HillLabel l) {
  switch (l) {
    case HillLabel::forbidden: return "forbidden";
    case HillLabel::earth: return "earth";
    case HillLabel::moon: return "moon";
    case HillLabel::merged: return "merged";
    case HillLabel::unbounded: return "unbounded";
  }
  return "?";
}

HillLabel HillRegion::label_at(const Vec2& q) const {
  const double h = cell_size();
  const int ix = static_cast<int>(std::floor((q.x() + box_radius) / h));
  const int iy = static_cast<int>(std::floor((q.y() + box_radius) / h));
  if (ix < 0 || iy < 0 || ix >= resolution || iy >= resolution)
    return HillLabel::unbounded;
  return labels[static_cast<std::size_t>(iy) * resolution + ix];
}

HillRegion hill_components(double c, const SystemConfig& cfg, const HillGridSpec& grid) {
  if (cfg.mu > 0.0 && cfg.mu < 1.0) {
    const double crit = axis_potential_u(find_L1_distance(cfg), cfg).value;
    if (std::abs(c - crit) < 1e-9)
      throw std::invalid_argument("energy is within 1e-9 of the first critical value; "
                                  "component structure is grid-dependent there");
  }
  HillRegion region;
  region.energy = c;
  region.box_radius = grid.box_radius;
  region.resolution = grid.resolution;
  const int n = grid.resolution;
  region.labels.assign(static_cast<std::size_t>(n) * n, HillLabel::forbidden);

  std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
  std::vector<char> allowed(static_cast<std::size_t>(n) * n, 0);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const Vec2 q = region.cell_center(ix, iy);
      allowed[static_cast<std::size_t>(iy) * n + ix] =
          model::detail::effective_potential_raw(q, cfg) <= c ? 1 : 0;
    }

  // 8-connected flood fill over allowed cells.
  int ncomp = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < allowed.size(); ++start) {
    if (!allowed[start] || comp[start] >= 0) continue;
    stack.clear();
    stack.push_back(start);
    comp[start] = ncomp;
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const int cy = static_cast<int>(cur) / n, cx = static_cast<int>(cur) % n;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int xx = cx + dx, yy = cy + dy;
          if (xx < 0 || yy < 0 || xx >= n || yy >= n) continue;
          const std::size_t idx = static_cast<std::size_t>(yy) * n + xx;
          if (allowed[idx] && comp[idx] < 0) {
            comp[idx] = ncomp;
            stack.push_back(idx);
          }
        }
    }
    ++ncomp;
  }

  auto component_of = [&](const Vec2& q) -> int {
    const double h = region.cell_size();
    const int ix = std::clamp(static_cast<int>(std::floor((q.x() + grid.box_radius) / h)), 0, n - 1);
    const int iy = std::clamp(static_cast<int>(std::floor((q.y() + grid.box_radius) / h)), 0, n - 1);
    return comp[static_cast<std::size_t>(iy) * n + ix];
  };

  // Any component touching the box boundary is unbounded.
  std::vector<char> unbounded(ncomp, 0);
  for (int i = 0; i < n; ++i) {
    for (const std::size_t idx : {static_cast<std::size_t>(i),
                                  static_cast<std::size_t>(n - 1) * n + i,
                                  static_cast<std::size_t>(i) * n,
                                  static_cast<std::size_t>(i) * n + (n - 1)}) {
      if (allowed[idx] && comp[idx] >= 0) unbounded[comp[idx]] = 1;
    }
  }

  const int earth_comp = (1.0 - cfg.mu) > 0.0 ? component_of(cfg.earth_pos()) : -1;
  const int moon_comp = cfg.mu > 0.0 ? component_of(cfg.moon_pos()) : -1;
  region.merged = earth_comp >= 0 && earth_comp == moon_comp;

  std::vector<char> counted(ncomp, 0);
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    if (!allowed[i]) continue;
    const int cidx = comp[i];
    HillLabel lab;
    if (unbounded[cidx])
      lab = HillLabel::unbounded;
    else if (region.merged && cidx == earth_comp)
      lab = HillLabel::merged;
    else if (cidx == earth_comp)
      lab = HillLabel::earth;
    else if (cidx == moon_comp)
      lab = HillLabel::moon;
    else
      lab = HillLabel::unbounded;  // stray bounded pocket: should not occur
    region.labels[i] = lab;
    if (!unbounded[cidx] && !counted[cidx]) {
      counted[cidx] = 1;
      ++region.bounded_components;
    }
  }
  return region;
}

double kepler_hill_radius(double k) {
  if (k > -1.5)
    throw std::invalid_argument("no compact Hill region for k > -3/2 (got k = " +
                                std::to_string(k) + ")");
  if (k == -1.5) return 1.0;  // double root of r^3 - 3r + 2
  auto f = [&](double r) { return r * r * r + 2.0 * k * r + 2.0; };
  // f(0) = 2 > 0 and f(1) = 3 + 2k < 0 for k < -3/2.
  std::function<double(double)> fp = [&](double r) { return 3.0 * r * r + 2.0 * k; };
  return bisect_root(f, 1e-13, 1.0, 1e-13, "Hill radius cubic", &fp);
}

double rho_hessian(const Vec2& q, const SystemConfig& cfg) {
  model::require_off_primaries(q, cfg);
  const double dm = (q - cfg.moon_pos()).norm();
  const double de = (q - cfg.earth_pos()).norm();
  return cfg.mu / (dm * dm * dm) + (1.0 - cfg.mu) / (de * de * de);
}

}  // namespace pcr3bp::equilibria
