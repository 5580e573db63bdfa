#include "pcr3bp/report.hpp"

#include <sstream>

#include "pcr3bp/model.hpp"

namespace pcr3bp::report {

json to_json(const contact::CertificationReport& rep, bool include_timings) {
  json j;
  j["quantity"] = rep.quantity;
  j["grid"] = rep.grid;
  j["min_margin"] = rep.min_margin;
  j["argmin"] = rep.argmin;
  j["samples"] = rep.samples;
  j["margin_tolerance"] = rep.margin_tolerance;
  j["verdict"] = contact::verdict_name(rep.verdict);
  if (include_timings) j["wall_seconds"] = rep.wall_seconds;
  return j;
}

json to_json(const verifier::LemmaReport& rep) {
  json j;
  j["id"] = rep.id;
  j["grid"] = rep.grid;
  j["worst_margin"] = rep.worst_margin;
  j["witness"] = rep.witness;
  j["pass"] = rep.pass;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

std::string trajectory_csv(const dynamics::Trajectory& traj) {
  std::ostringstream os;
  os.precision(17);
  const bool rot = traj.frame == dynamics::Frame::rotating;
  os << (rot ? "t,q1,q2,p1,p2,H\n" : "s,xi0,xi1,xi2,eta0,eta1,eta2,Q\n");
  for (const auto& s : traj.samples) {
    os << s.t;
    for (const double v : s.state) os << ',' << v;
    os << ',' << s.conserved << '\n';
  }
  return os.str();
}

std::string hill_csv(const equilibria::HillRegion& region, const SystemConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "x,y,U,label\n";
  for (int iy = 0; iy < region.resolution; ++iy)
    for (int ix = 0; ix < region.resolution; ++ix) {
      const Vec2 q = region.cell_center(ix, iy);
      os << q.x() << ',' << q.y() << ','
         << model::detail::effective_potential_raw(q, cfg) << ','
         << equilibria::hill_label_name(
                region.labels[std::size_t(iy) * region.resolution + ix])
         << '\n';
    }
  return os.str();
}

std::string hill_svg(const equilibria::HillRegion& region) {
  // Row-run rectangles, one color per label.
  auto color = [](equilibria::HillLabel l) -> const char* {
    switch (l) {
      case equilibria::HillLabel::forbidden: return "#f3f3f3";
      case equilibria::HillLabel::earth: return "#2f6fb0";
      case equilibria::HillLabel::moon: return "#b05a2f";
      case equilibria::HillLabel::merged: return "#6a4a8a";
      case equilibria::HillLabel::unbounded: return "#9ec9e8";
    }
    return "#000000";
  };
  const int n = region.resolution;
  const double px = 900.0 / n;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"900\" "
        "viewBox=\"0 0 900 900\">\n";
  os << "<rect width=\"900\" height=\"900\" fill=\"" << color(equilibria::HillLabel::forbidden)
     << "\"/>\n";
  for (int iy = 0; iy < n; ++iy) {
    int run_start = 0;
    auto label_of = [&](int ix) { return region.labels[std::size_t(iy) * n + ix]; };
    for (int ix = 1; ix <= n; ++ix) {
      if (ix == n || label_of(ix) != label_of(run_start)) {
        const auto l = label_of(run_start);
        if (l != equilibria::HillLabel::forbidden) {
          os << "<rect x=\"" << run_start * px << "\" y=\"" << (n - 1 - iy) * px << "\" width=\""
             << (ix - run_start) * px << "\" height=\"" << px << "\" fill=\"" << color(l)
             << "\"/>\n";
        }
        run_start = ix;
      }
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string curvature_csv(const std::vector<moser::CurvatureSample>& samples) {
  std::ostringstream os;
  os.precision(17);
  os << "xi0,xi1,xi2,curvature\n";
  for (const auto& s : samples)
    os << s.xi.x() << ',' << s.xi.y() << ',' << s.xi.z() << ',' << s.curvature << '\n';
  return os.str();
}

std::string component_margin_csv(double c, const SystemConfig& cfg, bool moon_side,
                                 int n_radial, int n_angular) {
  const SystemConfig chart = moon_side ? cfg : SystemConfig(1.0 - cfg.mu);
  std::ostringstream os;
  os.precision(17);
  os << "rho,theta,margin\n";
  for (int it = 0; it < n_angular; ++it) {
    const double theta = 2.0 * M_PI * it / n_angular;
    for (int ir = 1; ir <= n_radial; ++ir) {
      const double rho = 1e-3 + (1.0 - 1e-3) * ir / (n_radial + 1.0);
      const LunarPolar pt(rho, theta);
      double U;
      try {
        U = model::effective_potential_lunar(pt, chart);
      } catch (const SingularityError&) {
        continue;
      }
      if (U > c) break;  // the component is radially star-shaped about its primary
      os << rho << ',' << theta << ','
         << contact::moon_sufficient_margin(pt, c, chart) << '\n';
    }
  }
  return os.str();
}

}  // namespace pcr3bp::report
