// Python bindings for the main operations.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pcr3bp/contact.hpp"
#include "pcr3bp/dynamics.hpp"
#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/lemmas.hpp"
#include "pcr3bp/model.hpp"
#include "pcr3bp/moser.hpp"
#include "pcr3bp/neck.hpp"
#include "pcr3bp/rational.hpp"

namespace py = pybind11;
using namespace pcr3bp;

namespace {

PhasePoint as_phase_point(const Vec2& q, const Vec2& p) { return PhasePoint(q, p); }

py::dict report_dict(const contact::CertificationReport& rep) {
  py::dict d;
  d["quantity"] = rep.quantity;
  d["grid"] = rep.grid;
  d["min_margin"] = rep.min_margin;
  d["argmin"] = rep.argmin;
  d["samples"] = rep.samples;
  d["verdict"] = contact::verdict_name(rep.verdict);
  return d;
}

py::dict lemma_dict(const verifier::LemmaReport& rep) {
  py::dict d;
  d["id"] = rep.id;
  d["worst_margin"] = rep.worst_margin;
  d["witness"] = rep.witness;
  d["pass"] = rep.pass;
  d["notes"] = rep.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(pcr3bp, m) {
  m.doc() = "planar circular restricted three-body problem: rotating-frame model, "
            "regularization, and contact-transversality certification";

  py::register_exception<SingularityError>(m, "SingularityError");

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<double>(), py::arg("mu"))
      .def_readwrite("mu", &SystemConfig::mu)
      .def_readwrite("singularity_threshold", &SystemConfig::singularity_threshold)
      .def_property_readonly("earth_pos", &SystemConfig::earth_pos)
      .def_property_readonly("moon_pos", &SystemConfig::moon_pos)
      .def("__repr__",
           [](const SystemConfig& c) { return "SystemConfig(mu=" + std::to_string(c.mu) + ")"; });

  // model
  m.def("hamiltonian",
        [](const Vec2& q, const Vec2& p, const SystemConfig& cfg) {
          return model::hamiltonian(as_phase_point(q, p), cfg);
        },
        py::arg("q"), py::arg("p"), py::arg("cfg"));
  m.def("hamiltonian_completed",
        [](const Vec2& q, const Vec2& p, const SystemConfig& cfg) {
          return model::hamiltonian_completed(as_phase_point(q, p), cfg);
        },
        py::arg("q"), py::arg("p"), py::arg("cfg"));
  m.def("effective_potential", &model::effective_potential, py::arg("q"), py::arg("cfg"));
  m.def("effective_potential_lunar",
        [](double rho, double theta, const SystemConfig& cfg) {
          return model::effective_potential_lunar(LunarPolar(rho, theta), cfg);
        },
        py::arg("rho"), py::arg("theta"), py::arg("cfg"));
  m.def("potential_partials",
        [](double rho, double theta, const SystemConfig& cfg) {
          const auto p = model::potential_partials(LunarPolar(rho, theta), cfg);
          py::dict d;
          d["dU_drho"] = p.dU_drho;
          d["dU_dtheta"] = p.dU_dtheta;
          d["d2U_drho2"] = p.d2U_drho2;
          d["d2U_drhodtheta"] = p.d2U_drhodtheta;
          d["d3U_drho3"] = p.d3U_drho3;
          return d;
        },
        py::arg("rho"), py::arg("theta"), py::arg("cfg"));
  m.def("hamiltonian_vector_field",
        [](const Vec2& q, const Vec2& p, const SystemConfig& cfg) {
          return model::hamiltonian_vector_field(as_phase_point(q, p), cfg);
        },
        py::arg("q"), py::arg("p"), py::arg("cfg"));

  // equilibria
  m.def("find_L1_distance", &equilibria::find_L1_distance, py::arg("cfg"));
  m.def("mu_from_d", &equilibria::mu_from_d, py::arg("d"));
  m.def("find_lagrange_points",
        [](const SystemConfig& cfg) {
          const auto set = equilibria::find_lagrange_points(cfg);
          py::list out;
          for (const auto& L : set.points) {
            py::dict d;
            d["index"] = L.index;
            d["position"] = L.position;
            d["lift"] = L.lift;
            d["value"] = L.value;
            out.append(d);
          }
          return py::make_tuple(out, set.d);
        },
        py::arg("cfg"));
  m.def("hill_membership", &equilibria::hill_membership, py::arg("q"), py::arg("c"),
        py::arg("cfg"));
  m.def("hill_components",
        [](double c, const SystemConfig& cfg, int resolution) {
          equilibria::HillGridSpec spec;
          spec.resolution = resolution;
          const auto region = equilibria::hill_components(c, cfg, spec);
          py::list labels;
          for (const auto l : region.labels)
            labels.append(std::string(equilibria::hill_label_name(l)));
          py::dict d;
          d["bounded_components"] = region.bounded_components;
          d["merged"] = region.merged;
          d["resolution"] = region.resolution;
          d["box_radius"] = region.box_radius;
          d["labels"] = labels;
          return d;
        },
        py::arg("c"), py::arg("cfg"), py::arg("resolution") = 400);
  m.def("kepler_hill_radius", &equilibria::kepler_hill_radius, py::arg("k"));
  m.def("rho_hessian", &equilibria::rho_hessian, py::arg("q"), py::arg("cfg"));

  // moser
  py::enum_<moser::PrimaryChoice>(m, "PrimaryChoice")
      .value("moon", moser::PrimaryChoice::moon)
      .value("earth", moser::PrimaryChoice::earth);
  m.def("stereo_lift",
        [](const Vec2& x, const Vec2& y) {
          const auto pt = moser::stereo_lift(moser::StereoPoint(x, y));
          return py::make_tuple(pt.xi, pt.eta);
        },
        py::arg("x"), py::arg("y"));
  m.def("stereo_project",
        [](const Vec3& xi, const Vec3& eta) {
          const auto s = moser::stereo_project(moser::CotangentSpherePoint(xi, eta));
          return py::make_tuple(s.x, s.y);
        },
        py::arg("xi"), py::arg("eta"));
  m.def("kepler_regularized_Q",
        [](const Vec3& xi, const Vec3& eta, double k, bool rotating_frame) {
          return moser::kepler_regularized_Q(moser::CotangentSpherePoint(xi, eta), k,
                                             rotating_frame);
        },
        py::arg("xi"), py::arg("eta"), py::arg("k"), py::arg("rotating_frame") = true);
  m.def("r3bp_regularized_Q",
        [](const Vec3& xi, const Vec3& eta, double k, const SystemConfig& cfg,
           moser::PrimaryChoice choice) {
          const auto qf =
              moser::r3bp_regularized_Q(moser::CotangentSpherePoint(xi, eta), k, cfg, choice);
          return py::make_tuple(qf.Q, qf.factor);
        },
        py::arg("xi"), py::arg("eta"), py::arg("k"), py::arg("cfg"), py::arg("choice"));
  m.def("regularized_level", &moser::regularized_level, py::arg("cfg"), py::arg("choice"));
  m.def("conformal_metric_curvature",
        [](double k, int samples) {
          const auto data = moser::conformal_metric_curvature(k, samples);
          py::list out;
          for (const auto& s : data) out.append(py::make_tuple(s.xi, s.curvature));
          return out;
        },
        py::arg("k"), py::arg("samples") = 20);

  // contact certification
  m.def("liouville_X_of_H",
        [](const Vec2& q, const Vec2& p, const SystemConfig& cfg) {
          return contact::liouville_X_of_H(as_phase_point(q, p), cfg);
        },
        py::arg("q"), py::arg("p"), py::arg("cfg"));
  m.def("moon_sufficient_margin",
        [](double rho, double theta, double c, const SystemConfig& cfg) {
          return contact::moon_sufficient_margin(LunarPolar(rho, theta), c, cfg);
        },
        py::arg("rho"), py::arg("theta"), py::arg("c"), py::arg("cfg"));
  m.def("earth_cartesian_margin", &contact::earth_cartesian_margin, py::arg("r"), py::arg("s"),
        py::arg("k"), py::arg("cfg"));
  m.def("certify_moon_component",
        [](double c, const SystemConfig& cfg, int grid) {
          contact::CertifyOptions opts;
          opts.n_radial = grid;
          opts.n_angular = grid;
          return report_dict(contact::certify_moon_component(c, cfg, opts));
        },
        py::arg("c"), py::arg("cfg"), py::arg("grid") = 400);
  m.def("certify_earth_component",
        [](double c, const SystemConfig& cfg, int grid) {
          contact::CertifyOptions opts;
          opts.n_radial = grid;
          opts.n_angular = grid;
          return report_dict(contact::certify_earth_component(c, cfg, opts));
        },
        py::arg("c"), py::arg("cfg"), py::arg("grid") = 400);
  m.def("certify_above_critical",
        [](const SystemConfig& cfg, const std::vector<double>& eps_candidates) {
          neck::AboveCriticalOptions opts;
          if (!eps_candidates.empty()) opts.eps_candidates = eps_candidates;
          const auto result = neck::certify_above_critical(cfg, opts);
          py::list cands;
          for (const auto& rep : result.per_candidate) cands.append(report_dict(rep));
          py::dict d;
          d["per_candidate"] = cands;
          d["largest_certified"] = result.largest_certified;
          d["any_certified"] = result.any_certified;
          return d;
        },
        py::arg("cfg"), py::arg("eps_candidates") = std::vector<double>());
  m.def("starshaped_slice_scan",
        [](double k, int n_theta, int n_dir) {
          return report_dict(contact::starshaped_slice_scan(k, n_theta, n_dir));
        },
        py::arg("k"), py::arg("n_theta") = 400, py::arg("n_dir") = 64);

  // lemma verification
  m.def("verify_all",
        [](const SystemConfig& cfg) {
          py::list out;
          for (const auto& rep : verifier::run_all(cfg)) out.append(lemma_dict(rep));
          return out;
        },
        py::arg("cfg"));
  m.def("polynomial_identities", []() {
    py::list out;
    for (const auto& r : verifier::polynomial_identities())
      out.append(py::make_tuple(r.name, r.exact));
    return out;
  });

  // dynamics
  m.def("integrate_rotating",
        [](const Vec2& q, const Vec2& p, const SystemConfig& cfg, double T, double tol) {
          dynamics::IntegratorOptions opts;
          opts.tolerance = tol;
          const auto traj = dynamics::integrate_rotating(as_phase_point(q, p), cfg, T, opts);
          py::list samples;
          for (const auto& s : traj.samples)
            samples.append(py::make_tuple(s.t, s.state, s.conserved));
          py::dict d;
          d["samples"] = samples;
          d["energy_drift"] = traj.conserved_drift();
          return d;
        },
        py::arg("q"), py::arg("p"), py::arg("cfg"), py::arg("T"), py::arg("tol") = 1e-12);
  m.def("correspondence_check",
        [](const Vec2& q, const Vec2& p, const SystemConfig& cfg, double T) {
          return dynamics::correspondence_check(as_phase_point(q, p), cfg, T);
        },
        py::arg("q"), py::arg("p"), py::arg("cfg"), py::arg("T") = 1.0);
}
