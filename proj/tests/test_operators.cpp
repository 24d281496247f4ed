#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sbp_radial/operators.hpp"
#include "sbp_radial/probes.hpp"

using namespace sbpr;

namespace {

SbpScheme scheme_for(Variant v, int p, GridKind kind, int M) {
  const GridSpec g = make_grid(kind, M, 1.0, p);
  const WeightTable t =
      make_weights(variant_method(v), p, kind, g.npoints() + 2);
  return build_scheme(v, g, t);
}

}  // namespace

TEST_CASE("variant helpers") {
  CHECK(variant_method(Variant::Evans) == Method::Evans);
  CHECK(variant_method(Variant::SBP41) == Method::SBP4);
  CHECK(variant_method(Variant::SBP42) == Method::SBP4);
  CHECK(variant_halforder(Variant::SBP2) == 1);
  CHECK(variant_halforder(Variant::SBP42) == 2);
}

TEST_CASE("band and norm operators agree with their dense forms") {
  const SbpScheme s = scheme_for(Variant::SBP2, 3, GridKind::staggered, 33);
  const int n = s.grid.npoints();
  Eigen::VectorXd x(n);
  for (int k = 0; k < n; ++k) x[k] = std::sin(1.7 * k + 0.3);
  CHECK((s.D.apply(x) - s.D.dense() * x).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((s.Dtilde.apply(x) - s.Dtilde.dense() * x).cwiseAbs().maxCoeff() <
        1e-13);
  CHECK((s.W.apply(x) - s.W.dense() * x).cwiseAbs().maxCoeff() < 1e-11);
  CHECK(s.W.quad(x) == doctest::Approx(x.dot(s.W.dense() * x)).epsilon(1e-12));
}

TEST_CASE("sbp identity holds for every variant") {
  for (Variant v : {Variant::Evans, Variant::SBP2})
    for (int p : {2, 5}) {
      const GridKind kind = (variant_method(v) == Method::Evans && p % 2)
                                ? GridKind::staggered
                                : GridKind::centred;
      const int M = kind == GridKind::centred ? 32 : 65;
      CHECK(verify_sbp(scheme_for(v, p, kind, M)) < 1e-13);
    }
}

TEST_CASE("sbp identity as a dense-matrix statement") {
  // W Dtilde + (Wtilde D)^t equals the single-entry boundary matrix B.
  const SbpScheme s = scheme_for(Variant::SBP2, 2, GridKind::centred, 32);
  const int n = s.grid.npoints();
  Eigen::MatrixXd lhs = s.W.dense() * s.Dtilde.dense() +
                        (s.Wtilde.dense() * s.D.dense()).transpose();
  CHECK(s.b_entry == doctest::Approx(s.table.v[n - 1]).epsilon(1e-14));
  lhs(n - 1, n - 1) -= s.b_entry;
  // The Psi_0 column on a centred grid is unconstrained (odd field, pinned
  // to zero), so exclude it from the residual.
  lhs.col(0).setZero();
  CHECK(lhs.cwiseAbs().maxCoeff() < 1e-11 * s.b_entry);
  CHECK(s.chi ==
        doctest::Approx(s.b_entry / std::pow(s.grid.last_index(), s.grid.p))
            .epsilon(1e-14));
}

TEST_CASE("build_scheme rejects mismatched tables") {
  const GridSpec g = make_grid(GridKind::centred, 32, 1.0, 2);
  const WeightTable stag =
      make_weights(Method::SBP2, 2, GridKind::staggered, 67);
  CHECK_THROWS_AS(build_scheme(Variant::SBP2, g, stag), TableMismatch);
  const WeightTable wrong_p =
      make_weights(Method::SBP2, 3, GridKind::centred, 40);
  CHECK_THROWS_AS(build_scheme(Variant::SBP2, g, wrong_p), TableMismatch);
  const WeightTable tiny = make_weights(Method::SBP2, 2, GridKind::centred, 8);
  CHECK_THROWS_AS(build_scheme(Variant::SBP2, g, tiny), TableMismatch);
}

TEST_CASE("interior truncation error of D converges at second order") {
  // The outer boundary closure is only first-order accurate by design, so
  // restrict the scan to the interior rows.
  auto pi = [](double r) { return std::cos(3 * r); };
  auto dpi = [](double r) { return -3 * std::sin(3 * r); };
  double prev = 0;
  for (int level = 0; level < 2; ++level) {
    const int M = 40 << level;
    const SbpScheme s = scheme_for(Variant::SBP2, 2, GridKind::centred, M);
    const Eigen::VectorXd e = truncation_scan_d(s, pi, dpi);
    const double err = e.segment(5, M - 12).cwiseAbs().maxCoeff();
    if (level) CHECK(prev / err > 3.5);  // ~4 for clean second order
    prev = err;
  }
}

TEST_CASE("truncation error of Dtilde converges at second order") {
  auto psi = [](double r) { return r * std::exp(-r * r); };
  auto dpsi = [](double r) { return (1 - 2 * r * r) * std::exp(-r * r); };
  double prev = 0, prev_bdy = 0;
  for (int level = 0; level < 2; ++level) {
    const int M = 40 << level;
    const SbpScheme s = scheme_for(Variant::SBP2, 2, GridKind::centred, M);
    const Eigen::VectorXd e = truncation_scan_dtilde(s, psi, dpsi);
    const double err = e.segment(5, M - 12).cwiseAbs().maxCoeff();
    const double err_bdy = e.tail(3).cwiseAbs().maxCoeff();
    if (level) {
      CHECK(prev / err > 3.5);       // interior: second order
      CHECK(prev_bdy / err_bdy > 1.7);  // closure: first order
    }
    prev = err;
    prev_bdy = err_bdy;
  }
}

TEST_CASE("naive probe and generalized Evans probe") {
  const Eigen::VectorXd err = naive_scheme_error(2, 20);
  for (int i = 1; i <= 20; ++i)
    CHECK(err[i - 1] == doctest::Approx(1.0 / (double(i) * i)).epsilon(1e-12));
  const GeneralizedEvansProbe pr = probe_generalized_evans(3, 1.0);
  CHECK(pr.h2_predicted == doctest::Approx(14.0));  // (p+3)(2p+1)/3
  CHECK(pr.h2_coeff == doctest::Approx(pr.h2_predicted).epsilon(1e-6));
  CHECK(pr.h4_r2_coeff ==
        doctest::Approx(pr.h4_r2_predicted).epsilon(1e-3));
}
