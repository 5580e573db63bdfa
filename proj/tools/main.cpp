// Command-line frontend: every certification, verification, and
// simulation as a reproducible batch run with serialized reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "pcr3bp/contact.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/gridscan.hpp"
#include "pcr3bp/lemmas.hpp"
#include "pcr3bp/model.hpp"
#include "pcr3bp/neck.hpp"
#include "pcr3bp/rational.hpp"
#include "pcr3bp/report.hpp"

using namespace pcr3bp;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << std::endl;
  } else {
    std::ofstream os(out_path);
    os << j.dump(2) << '\n';
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  os << content;
}

int verdict_exit(contact::Verdict v) {
  switch (v) {
    case contact::Verdict::certified: return kExitPass;
    case contact::Verdict::violated: return kExitViolated;
    case contact::Verdict::inconclusive: return kExitUsage;
  }
  return kExitUsage;
}

SystemConfig make_config(double mu, bool allow_degenerate = false) {
  const SystemConfig cfg(mu);  // throws std::invalid_argument outside [0,1]
  if (!allow_degenerate && !(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("degenerate mass ratio " + std::to_string(mu) +
                                ": this command needs mu in (0,1)");
  return cfg;
}

int cmd_lagrange(double mu, const std::string& out) {
  const SystemConfig cfg = make_config(mu);
  const auto set = equilibria::find_lagrange_points(cfg);
  const double rho_h = equilibria::rho_hessian(set[1].position, cfg);

  json j;
  j["mu"] = mu;
  j["d"] = set.d;
  j["rho_hessian_L1"] = rho_h;
  json pts = json::array();
  for (const auto& L : set.points) {
    pts.push_back({{"index", L.index},
                   {"position", {L.position.x(), L.position.y()}},
                   {"lift", {L.lift[0], L.lift[1], L.lift[2], L.lift[3]}},
                   {"value", L.value}});
  }
  j["points"] = pts;
  j["ordering"] = "H(L1) < H(L2) < H(L3) < H(L4) = H(L5)";
  emit(j, out);

  std::cerr << "d = " << set.d << ", rho_h(L1) = " << rho_h << '\n';
  for (const auto& L : set.points)
    std::cerr << "L" << L.index << " at (" << L.position.x() << ", " << L.position.y()
              << "), H = " << L.value << '\n';
  return kExitPass;
}

int cmd_certify(double mu, std::optional<double> below, bool above, int grid_n, bool strict,
                const std::string& out, const std::string& csv, bool timings) {
  const SystemConfig cfg = make_config(mu);
  const double crit =
      equilibria::axis_potential_u(equilibria::find_L1_distance(cfg), cfg).value;
  json j;
  j["mu"] = mu;
  j["critical_value"] = crit;
  int exit_code = kExitPass;

  if (below) {
    if (!(*below > 0.0)) throw std::invalid_argument("--below expects a positive offset");
    contact::CertifyOptions opts;
    opts.n_radial = grid_n;
    opts.n_angular = grid_n;
    opts.strict = strict;
    const double c = crit - *below;
    const auto moon = contact::certify_moon_component(c, cfg, opts);
    const auto earth = contact::certify_earth_component(c, cfg, opts);
    j["energy"] = c;
    j["moon"] = report::to_json(moon, timings);
    j["earth"] = report::to_json(earth, timings);
    exit_code = std::max(verdict_exit(moon.verdict), verdict_exit(earth.verdict));
    if (!csv.empty())
      write_file(csv, report::component_margin_csv(c, cfg, /*moon_side=*/true));
  } else if (above) {
    neck::AboveCriticalOptions opts;
    const auto result = neck::certify_above_critical(cfg, opts);
    json cands = json::array();
    for (const auto& rep : result.per_candidate) cands.push_back(report::to_json(rep, timings));
    j["candidates"] = cands;
    j["largest_certified_eps"] = result.largest_certified;
    exit_code = result.any_certified ? kExitPass : kExitViolated;
    std::cerr << "largest certified eps above the critical value: "
              << result.largest_certified << '\n';
    if (!csv.empty()) {
      std::ostringstream os;
      os.precision(17);
      os << "eps,min_margin,moon_min,earth_min,neck_min\n";
      for (const auto& rep : result.per_candidate)
        os << rep.grid.at("eps") << ',' << rep.min_margin << ',' << rep.grid.at("moon_min")
           << ',' << rep.grid.at("earth_min") << ',' << rep.grid.at("neck_min") << '\n';
      write_file(csv, os.str());
    }
  } else {
    throw std::invalid_argument("certify needs --below DELTA or --above");
  }
  emit(j, out);
  return exit_code;
}

int cmd_verify(double mu, const std::string& only, const std::string& out) {
  json ledger;
  bool all_pass = true;
  std::string first_fail;

  auto add = [&](const verifier::LemmaReport& rep) {
    ledger[rep.id] = report::to_json(rep);
    if (!rep.pass && first_fail.empty()) first_fail = rep.id;
    all_pass = all_pass && rep.pass;
  };

  if (only.empty() || only == "poly") {
    json ids = json::array();
    bool poly_ok = true;
    for (const auto& r : verifier::polynomial_identities()) {
      ids.push_back({{"name", r.name}, {"exact", r.exact}});
      poly_ok = poly_ok && r.exact;
    }
    ledger["polynomial_identities"] = {{"pass", poly_ok}, {"identities", ids}};
    if (!poly_ok && first_fail.empty()) first_fail = "polynomial_identities";
    all_pass = all_pass && poly_ok;
  }
  if (only.empty() || only == "h") add(verifier::verify_h_claim());
  if (only.empty() || only == "W") add(verifier::verify_W_final());
  if (only.empty() || only == "tra1" || only == "tra2" || only == "tra3" ||
      only == "cortra") {
    const SystemConfig cfg = make_config(mu);
    verifier::LemmaGrid grid;
    if (only.empty() || only == "tra1") add(verifier::verify_tra1(cfg, grid));
    if (only.empty() || only == "tra2") add(verifier::verify_tra2(cfg, grid));
    if (only.empty() || only == "tra3") add(verifier::verify_tra3(cfg, grid));
    if (only.empty() || only == "cortra") add(verifier::verify_cortra(cfg));
  }
  ledger["all_pass"] = all_pass;
  if (!all_pass) ledger["first_failure"] = first_fail;
  emit(ledger, out);
  if (!all_pass) std::cerr << "failed: " << first_fail << '\n';
  return all_pass ? kExitPass : kExitViolated;
}

int cmd_simulate(double mu, bool kepler_geodesic, bool collision_demo,
                 const std::vector<double>& state, double T, double tol,
                 const std::string& csv, const std::string& out) {
  json j;
  if (kepler_geodesic) {
    const moser::CotangentSpherePoint pt0(Vec3(0, 1, 0), Vec3(0, 0, 1));
    dynamics::IntegratorOptions opts;
    opts.tolerance = tol;
    const auto traj = dynamics::integrate_regularized_kepler(pt0, -0.5, 2.0 * M_PI, opts,
                                                             /*rotating_frame=*/false);
    const auto& last = traj.samples.back();
    double defect = 0.0;
    const double target[6] = {0, 1, 0, 0, 0, 1};
    for (int i = 0; i < 6; ++i) defect += std::pow(last.state[i] - target[i], 2);
    defect = std::sqrt(defect);
    j["mode"] = "kepler_geodesic";
    j["s_period"] = 2.0 * M_PI;
    j["endpoint_defect"] = defect;  // bounds |period - 2 pi| at unit speed
    j["Q_drift"] = traj.conserved_drift();
    j["constraint_defect"] = traj.max_constraint_defect();
    if (!csv.empty()) write_file(csv, report::trajectory_csv(traj));
  } else if (collision_demo) {
    const SystemConfig cfg = make_config(mu);
    const double crit =
        equilibria::axis_potential_u(equilibria::find_L1_distance(cfg), cfg).value;
    const auto passage = dynamics::collision_passage_demo(cfg, crit - 0.05);
    j["mode"] = "collision_passage";
    j["energy"] = crit - 0.05;
    j["max_pullback_momentum"] = passage.max_pullback_p;
    j["Q_drift"] = passage.q_drift;
    j["max_xi0"] = passage.max_xi0;
    j["energy_defect"] = passage.energy_defect;
    if (!csv.empty()) write_file(csv, report::trajectory_csv(passage.trajectory));
  } else {
    if (state.size() != 4)
      throw std::invalid_argument(
          "--state needs q1 q2 p1 p2 (or pick --kepler-geodesic / --collision-demo)");
    const SystemConfig cfg = make_config(mu, /*allow_degenerate=*/true);
    dynamics::IntegratorOptions opts;
    opts.tolerance = tol;
    const auto traj = dynamics::integrate_rotating(
        PhasePoint(state[0], state[1], state[2], state[3]), cfg, T, opts);
    j["mode"] = "rotating";
    j["T"] = T;
    j["energy"] = traj.samples.front().conserved;
    j["energy_drift"] = traj.conserved_drift();
    j["samples"] = traj.samples.size();
    if (!csv.empty()) write_file(csv, report::trajectory_csv(traj));
  }
  emit(j, out);
  return kExitPass;
}

int cmd_hill(double mu, std::optional<double> energy, std::optional<double> offset, int res,
             const std::string& csv, const std::string& svg, const std::string& out) {
  const SystemConfig cfg = make_config(mu, /*allow_degenerate=*/true);
  double c;
  if (energy) {
    c = *energy;
  } else if (offset) {
    const SystemConfig strict = make_config(mu);
    c = equilibria::axis_potential_u(equilibria::find_L1_distance(strict), strict).value +
        *offset;
  } else {
    throw std::invalid_argument("hill needs --energy C or --offset DC");
  }
  equilibria::HillGridSpec spec;
  spec.resolution = res;
  const auto region = equilibria::hill_components(c, cfg, spec);
  json j;
  j["mu"] = mu;
  j["energy"] = c;
  j["resolution"] = res;
  j["bounded_components"] = region.bounded_components;
  j["merged"] = region.merged;
  emit(j, out);
  if (!csv.empty()) write_file(csv, report::hill_csv(region, cfg));
  if (!svg.empty()) write_file(svg, report::hill_svg(region));
  return kExitPass;
}

int cmd_curvature(double k, int samples, const std::string& csv, const std::string& out) {
  if (!(k < 0.0)) throw std::invalid_argument("curvature needs k < 0");
  const auto data = moser::conformal_metric_curvature(k, samples);
  double worst = 0.0;
  for (const auto& s : data) worst = std::max(worst, std::abs(s.curvature - (-2.0 * k)));
  json j;
  j["k"] = k;
  j["expected_curvature"] = -2.0 * k;
  j["samples"] = samples;
  j["max_deviation"] = worst;
  emit(j, out);
  if (!csv.empty()) write_file(csv, report::curvature_csv(data));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pcr3bp: numerical certification toolkit for the planar circular restricted "
      "three-body problem in the rotating frame"};
  app.require_subcommand(1);

  std::string out = "-";
  bool timings = false;
  app.add_option("--out", out, "write the JSON report here instead of stdout");
  app.add_flag("--timings", timings,
               "include wall-clock timings in reports (off by default so identical runs "
               "produce byte-identical output)");

  double mu = 0.3;
  auto* lag = app.add_subcommand(
      "lagrange", "critical points of the effective potential: positions, phase-space "
                  "lifts, critical values, the collinear distance d, and the Hessian "
                  "parameter at L1");
  lag->fallthrough();
  lag->add_option("--mu", mu, "mass fraction of the moon")->required();

  auto* cert = app.add_subcommand(
      "certify", "grid certification that the radial Liouville fields stay transverse to "
                 "the energy level: per bounded component below the first critical value, "
                 "through the interpolated neck field above it");
  std::optional<double> below;
  bool above = false;
  int grid_n = 1000;
  bool strict = false;
  std::string csv;
  cert->fallthrough();
  cert->add_option("--mu", mu, "mass fraction of the moon")->required();
  cert->add_option("--below", below, "positive offset below the first critical value");
  cert->add_flag("--above", above, "run the above-critical candidate ladder");
  cert->add_option("--grid", grid_n, "radial and angular resolution (default 1000)");
  cert->add_flag("--strict", strict, "add a first-order Lipschitz gate at the minimum");
  cert->add_option("--csv", csv, "write margin profiles CSV here");

  auto* ver = app.add_subcommand(
      "verify", "machine verification of the transversality inequalities, the boundary "
                "negativity chain, and the exact polynomial identities behind them");
  bool all = false;
  std::string only;
  ver->fallthrough();
  ver->add_option("--mu", mu, "mass fraction of the moon (default 0.3)");
  ver->add_flag("--all", all, "run every check (default when --only is absent)");
  ver->add_option("--only", only, "one of: poly, h, W, tra1, tra2, tra3, cortra");

  auto* sim = app.add_subcommand(
      "simulate", "trajectory integration: rotating frame, the regularized geodesic "
                  "benchmark, or a collision passage in regularized coordinates");
  bool kepler_geodesic = false, collision_demo = false;
  std::vector<double> state;
  double T = 10.0, tol = 1e-12;
  sim->fallthrough();
  sim->add_option("--mu", mu, "mass fraction of the moon");
  sim->add_flag("--kepler-geodesic", kepler_geodesic,
                "integrate the regularized Kepler flow at the geodesic energy");
  sim->add_flag("--collision-demo", collision_demo,
                "follow a radial orbit through the collision locus");
  sim->add_option("--state", state, "rotating-frame start q1 q2 p1 p2")->expected(4);
  sim->add_option("--T", T, "integration time");
  sim->add_option("--tol", tol, "per-step error tolerance");
  sim->add_option("--csv", csv, "write the trajectory CSV here");

  auto* hill = app.add_subcommand(
      "hill", "flood-filled classification of the allowed region at one energy");
  std::optional<double> energy, offset;
  int res = 800;
  std::string svg;
  hill->fallthrough();
  hill->add_option("--mu", mu, "mass fraction of the moon")->required();
  hill->add_option("--energy", energy, "absolute energy level");
  hill->add_option("--offset", offset, "energy relative to the first critical value");
  hill->add_option("--res", res, "grid resolution per axis");
  hill->add_option("--csv", csv, "write the labeled grid CSV here");
  hill->add_option("--svg", svg, "write a filled-contour SVG here");

  auto* curv = app.add_subcommand(
      "curvature", "finite-difference Gaussian curvature of the conformal metric of the "
                   "regularized flow; constant and equal to -2k");
  double kval = -1.0;
  int samples = 100;
  curv->fallthrough();
  curv->add_option("--k", kval, "energy parameter (k < 0)")->required();
  curv->add_option("--samples", samples, "number of sample points");
  curv->add_option("--csv", csv, "write per-point curvature CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (lag->parsed()) return cmd_lagrange(mu, out);
    if (cert->parsed()) return cmd_certify(mu, below, above, grid_n, strict, out, csv, timings);
    if (ver->parsed()) return cmd_verify(mu, only, out);
    if (sim->parsed())
      return cmd_simulate(mu, kepler_geodesic, collision_demo, state, T, tol, csv, out);
    if (hill->parsed()) return cmd_hill(mu, energy, offset, res, csv, svg, out);
    if (curv->parsed()) return cmd_curvature(kval, samples, csv, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolated;
  }
  return kExitUsage;
}
