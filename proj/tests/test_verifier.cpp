#include <doctest.h>

#include <cmath>

#include "pcr3bp/equilibria.hpp"
#include "pcr3bp/lemmas.hpp"
#include "pcr3bp/rational.hpp"

using namespace pcr3bp;
using namespace pcr3bp::verifier;

TEST_CASE("rational polynomial arithmetic is exact") {
  const RationalPolynomial a{1, 2, 3};       // 1 + 2x + 3x^2
  const RationalPolynomial b{Rational(1, 2), -1};
  CHECK((a + b).coeff(0) == Rational(3, 2));
  CHECK((a * b).degree() == 3);
  CHECK((a - a).is_zero());
  // compose (1 + x)^2 with x -> x - 1 gives x^2
  const RationalPolynomial sq{1, 2, 1};
  const RationalPolynomial shifted = sq.compose(RationalPolynomial{-1, 1});
  CHECK(shifted == RationalPolynomial{0, 0, 1});
  CHECK(sq.evaluate(Rational(3)) == Rational(16));
  CHECK(sq.evaluate(0.5) == doctest::Approx(2.25));
}

TEST_CASE("all appendix polynomial identities hold exactly") {
  const auto results = polynomial_identities();
  CHECK(results.size() >= 6);
  for (const auto& r : results) {
    INFO(r.name);
    CHECK(r.exact);
  }
}

TEST_CASE("shifted quartic stays negative on the unit interval") {
  const RationalPolynomial shifted{Rational(-1, 2), 1};
  auto pw = [](const RationalPolynomial& p, int n) {
    RationalPolynomial out = RationalPolynomial::constant(1);
    for (int i = 0; i < n; ++i) out = out * p;
    return out;
  };
  const RationalPolynomial quartic =
      pw(shifted, 4) - RationalPolynomial::constant(Rational(5, 2)) * pw(shifted, 2) -
      RationalPolynomial::constant(Rational(7, 16));
  double max_v = -1e9;
  for (int i = 0; i <= 2000; ++i) max_v = std::max(max_v, quartic.evaluate(i / 2000.0));
  CHECK(max_v < 0.0);
}

TEST_CASE("radical elimination identity spot value") {
  // numeric evaluation at rho = 0.7 against the exact polynomial
  const double rho = 0.7, x = rho * rho;
  const double lhs = std::pow(10.0 - 6.0 * x, 2) * (-x * x + x + 1.0) -
                     std::pow(2.0 * x * x + 4.0 * x - 10.0, 2);
  const double rhs = 20.0 * x * (3.0 - 8.0 * x + 7.0 * x * x - 2.0 * x * x * x);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("lemma sweeps pass across the mass-ratio grid") {
  LemmaGrid grid;
  grid.n_rho = 400;   // lighter grids for the unit suite; defaults run in acceptance
  grid.n_theta = 200;
  for (const double mu : {0.05, 0.3, 0.5}) {
    const SystemConfig cfg(mu);
    const auto r1 = verify_tra1(cfg, grid);
    INFO("tra1 notes: " << (r1.notes.empty() ? std::string() : r1.notes.front()));
    CHECK(r1.pass);
    CHECK(r1.worst_margin > 0.0);
    const auto r2 = verify_tra2(cfg, grid);
    INFO("tra2 notes: " << (r2.notes.empty() ? std::string() : r2.notes.front()));
    CHECK(r2.pass);
    CHECK(r2.worst_margin > 0.0);
    const auto r3 = verify_tra3(cfg, grid);
    INFO("tra3 notes: " << (r3.notes.empty() ? std::string() : r3.notes.front()));
    CHECK(r3.pass);
    CHECK(r3.worst_margin > 0.0);
  }
}

TEST_CASE("tra3 grid maximum sits on the boundary ball") {
  const SystemConfig cfg(0.3);
  LemmaGrid grid;
  grid.n_theta = 300;
  const auto rep = verify_tra3(cfg, grid);
  const double d = equilibria::find_L1_distance(cfg);
  CHECK(std::abs(rep.witness.at(0) - d) < 2.0 * d / 300 + 1e-12);
}

TEST_CASE("boundary negativity sweep") {
  const auto rep = verify_W_final(2000);
  INFO((rep.notes.empty() ? std::string() : rep.notes.front()));
  CHECK(rep.pass);
  CHECK(rep.worst_margin > 0.0);
}

TEST_CASE("h claim") {
  const auto rep = verify_h_claim(2000);
  INFO((rep.notes.empty() ? std::string() : rep.notes.front()));
  CHECK(rep.pass);
  CHECK(rep.worst_margin >= 1.0 - 1e-12);
  CHECK(std::abs(rep.witness.at(0)) < 1e-3);
}

TEST_CASE("moon component containment across energies") {
  const SystemConfig cfg(0.3);
  const auto rep = verify_cortra(cfg);
  INFO((rep.notes.empty() ? std::string() : rep.notes.front()));
  CHECK(rep.pass);
  CHECK(rep.worst_margin > 0.0);
}

TEST_CASE("lemma margins are stable under grid refinement") {
  const SystemConfig cfg(0.3);
  LemmaGrid coarse;
  coarse.n_rho = 300;
  coarse.n_theta = 200;
  LemmaGrid fine;
  fine.n_rho = 600;
  fine.n_theta = 400;
  const double m1 = verify_tra3(cfg, coarse).worst_margin;
  const double m2 = verify_tra3(cfg, fine).worst_margin;
  CHECK(std::abs(m1 - m2) < 0.1 * std::abs(m1));
}
