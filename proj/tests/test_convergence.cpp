#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sbp_radial/convergence.hpp"

using namespace sbpr;

TEST_CASE("refinement factors") {
  CHECK(refinement_factor(GridKind::centred) == 2);
  CHECK(refinement_factor(GridKind::staggered) == 3);
}

TEST_CASE("scaled norms of a monomial field") {
  const GridSpec g = make_grid(GridKind::centred, 10, 1.0, 2);
  Eigen::VectorXd f(g.npoints());
  for (int k = 0; k < g.npoints(); ++k) f[k] = 1.0;
  const auto [l2, mx] = scaled_norms(g, f);
  // h^(p+1) sum i^p = h^3 * (0 + 1 + 4 + ... + 100)
  double s = 0;
  for (int i = 0; i <= 10; ++i) s += i * i;
  CHECK(l2 == doctest::Approx(std::sqrt(std::pow(0.1, 3) * s)).epsilon(1e-14));
  CHECK(mx == doctest::Approx(1.0).epsilon(1e-14));  // r^(p/2) at r = 1
}

TEST_CASE("richardson_row recovers a manufactured order") {
  // f_l = g(r) + h_l^2 q(r): the pairwise differences must fit order 2
  // exactly on both centred (rf = 2) and staggered (rf = 3) hierarchies.
  for (GridKind kind : {GridKind::centred, GridKind::staggered}) {
    const int rf = refinement_factor(kind);
    const int M0 = kind == GridKind::centred ? 20 : 21;
    const GridSpec g0 = make_grid(kind, M0, 1.0, 2);
    const GridSpec g1 = make_grid(kind, M0 * rf, 1.0, 2);
    const GridSpec g2 = make_grid(kind, M0 * rf * rf, 1.0, 2);
    auto fill = [](const GridSpec& g) {
      Eigen::VectorXd f(g.npoints());
      const double h2 = g.h() * g.h();
      for (int k = 0; k < g.npoints(); ++k) {
        const double r = g.radius(k);
        f[k] = std::sin(3 * r) + h2 * (1 + r * r);
      }
      return f;
    };
    const RichardsonRow row = richardson_row(g0, fill(g0), g1, fill(g1), g2,
                                             fill(g2), 2, 0.0);
    CHECK(row.order_l2 == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(row.order_max == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(row.ratio_l2 == doctest::Approx(double(rf * rf)).epsilon(1e-10));
    // Both error estimates recover the coarse-grid error norm h0^2 |1+r^2|.
    CHECK(row.e_hi == doctest::Approx(row.e_lo).epsilon(1e-10));
  }
}

TEST_CASE("richardson_row rejects misaligned grids") {
  const GridSpec g0 = make_grid(GridKind::centred, 20, 1.0, 2);
  const GridSpec g1 = make_grid(GridKind::centred, 40, 1.0, 2);
  const GridSpec g2 = make_grid(GridKind::centred, 60, 1.0, 2);  // not 80
  Eigen::VectorXd f0 = Eigen::VectorXd::Zero(g0.npoints());
  Eigen::VectorXd f1 = Eigen::VectorXd::Zero(g1.npoints());
  Eigen::VectorXd f2 = Eigen::VectorXd::Zero(g2.npoints());
  CHECK_THROWS_AS(richardson_row(g0, f0, g1, f1, g2, f2, 2, 0.0),
                  MisalignedGrids);
  const GridSpec gp = make_grid(GridKind::centred, 80, 1.0, 3);  // wrong p
  Eigen::VectorXd fp = Eigen::VectorXd::Zero(gp.npoints());
  CHECK_THROWS_AS(richardson_row(g0, f0, g1, f1, gp, fp, 2, 0.0),
                  MisalignedGrids);
}

TEST_CASE("self_convergence fits the scheme order") {
  SelfConvergenceConfig cc;
  cc.variant = Variant::SBP2;
  cc.kind = GridKind::centred;
  cc.p = 2;
  cc.M0 = 48;
  cc.t_end = 0.125;
  cc.t_min = 0.03;
  cc.expected_order = 2;
  cc.evolution.snapshot_dt = 0.0625;
  cc.evolution.pi_profile = [](double r) {
    const double z = (r - 0.5) / 0.1;
    return std::exp(-z * z);
  };
  const RichardsonReport rep = self_convergence(cc);
  REQUIRE(!rep.rows.empty());
  CHECK(rep.refinement == 2);
  CHECK(std::abs(rep.fitted_order_l2 - 2.0) < 0.3);
  CHECK(std::abs(rep.fitted_order_max - 2.0) < 0.3);
  for (const auto& row : rep.rows) {
    CHECK(row.t >= cc.t_min);
    CHECK(row.e_hi > 0);
  }
}

TEST_CASE("self_convergence validation") {
  SelfConvergenceConfig cc;
  cc.levels = 2;
  CHECK_THROWS_AS(self_convergence(cc), Error);
}

TEST_CASE("energy_drift_check on synthetic traces") {
  const ValidatedBc cons = validate_bc({BcVariant::PiDerivative, 0, 0, 1, 0});
  const ValidatedBc diss =
      validate_bc({BcVariant::MaxDissipative, 1, 1, 0, 0});
  EnergyTrace tr;
  // Linear-in-t drift of slope 1e-10 on E = 2: growth ratio 2, rel 5e-11.
  for (int j = 0; j <= 100; ++j) {
    const double t = 0.01 * j;
    tr.t.push_back(t);
    tr.E_hat_b.push_back(2.0 + 1e-10 * t);
    tr.E_hat.push_back(2.0 * std::exp(-t));
    tr.E_pred.push_back(2.0 * std::exp(-t));
    tr.boundary_product.push_back(0.0);
  }
  const DriftReport c = energy_drift_check(tr, cons);
  CHECK(c.max_rel_drift == doctest::Approx(5e-11).epsilon(1e-6));
  CHECK(c.growth_ratio == doctest::Approx(2.0).epsilon(0.02));
  const DriftReport d = energy_drift_check(tr, diss);
  CHECK(d.max_rel_drift == 0.0);
  CHECK(d.monotone);
  // An energy bump breaks monotonicity.
  tr.E_hat[50] = 2.1;
  CHECK(energy_drift_check(tr, diss).monotone == false);
}
