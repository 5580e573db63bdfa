#pragma once

#include <json.hpp>
#include <string>

#include "pcr3bp/contact.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/lemmas.hpp"

namespace pcr3bp::report {

using json = nlohmann::json;

/// Canonical JSON views. Wall-clock timings are emitted only when
/// include_timings is set so that identical runs produce byte-identical
/// reports.
json to_json(const contact::CertificationReport& rep, bool include_timings = false);
json to_json(const verifier::LemmaReport& rep);

/// Per-sample trajectory CSV: t_or_s, state columns, conserved value.
std::string trajectory_csv(const dynamics::Trajectory& traj);

/// Hill grid CSV (columns x, y, U, label).
std::string hill_csv(const equilibria::HillRegion& region, const SystemConfig& cfg);

/// Simple filled-contour SVG of the Hill labels.
std::string hill_svg(const equilibria::HillRegion& region);

/// Curvature sample CSV (columns xi0, xi1, xi2, curvature).
std::string curvature_csv(const std::vector<moser::CurvatureSample>& samples);

/// Per-cell margin CSV over the moon (or relabeled earth) component
/// (columns rho, theta, margin).
std::string component_margin_csv(double c, const SystemConfig& cfg, bool moon_side,
                                 int n_radial = 200, int n_angular = 256);

}  // namespace pcr3bp::report
