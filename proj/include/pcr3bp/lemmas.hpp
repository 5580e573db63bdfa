#pragma once

#include <map>
#include <string>
#include <vector>

#include "pcr3bp/types.hpp"

namespace pcr3bp::verifier {

/// Outcome of one machine-checked lemma: worst-case margin over the
/// grid, the witness realizing it, and any structural sub-checks.
struct LemmaReport {
  std::string id;
  std::map<std::string, double> grid;
  double worst_margin = 0.0;        // positive means the inequality held with room
  std::vector<double> witness;      // location of the worst case
  bool pass = false;
  std::vector<std::string> notes;   // failed sub-checks, if any
};

struct LemmaGrid {
  int n_rho = 2000;
  int n_theta = 500;
  double endpoint_clip = 1e-4;
  int workers = 0;
};

/// The sliced potential attains its angular minimum at theta = 0:
/// critical-point structure, second derivatives, and the closed-form
/// value gap at theta = pi.
LemmaReport verify_tra1(const SystemConfig& cfg, const LemmaGrid& grid = {});

/// dU/drho > 0 on the ball B minus small disks at the moon and the
/// collinear point, plus the angular structure of dU/drho.
LemmaReport verify_tra2(const SystemConfig& cfg, const LemmaGrid& grid = {});

/// d^2U/drho^2 <= -1 on B (equivalently W <= 0), the angular maximizer
/// closed form, and the location of the grid maximum on the boundary.
LemmaReport verify_tra3(const SystemConfig& cfg, const LemmaGrid& grid = {});

/// Negativity of the boundary-maximum closed form W(d) across mass
/// ratios, plus each scalar estimate used to prove it.
LemmaReport verify_W_final(int n_d = 10000);

/// h >= 1 with the minimum at t = 0, h' vanishing only there, the
/// h(cos) = g_1^2 identity, and monotonicity g_a > g_1 for a > 1.
LemmaReport verify_h_claim(int n = 4000);

/// The moon Hill component stays inside the open ball B: boundary
/// values of U dominate the critical value, checked against the
/// flood-filled component.
LemmaReport verify_cortra(const SystemConfig& cfg, int n_c = 8, int n_theta = 2000);

struct IdentityResult {
  std::string name;
  bool exact;
};

/// Exact polynomial identities behind the boundary-negativity argument,
/// in rational arithmetic with zero tolerance. The fourth identity is
/// recorded with its full factorization 20 x (x-1)^2 (x+1)^2 (3-2x),
/// x = rho^2.
std::vector<IdentityResult> polynomial_identities();

/// Runs the whole lemma suite for one mass ratio.
std::vector<LemmaReport> run_all(const SystemConfig& cfg, const LemmaGrid& grid = {});

}  // namespace pcr3bp::verifier
