#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sbp_radial/boundary.hpp"

using namespace sbpr;

namespace {

SbpScheme scheme_for(Variant v, int p, GridKind kind, int M) {
  const GridSpec g = make_grid(kind, M, 1.0, p);
  const WeightTable t =
      make_weights(variant_method(v), p, kind, g.npoints() + 2);
  return build_scheme(v, g, t);
}

FieldPair random_state(const GridSpec& g, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  FieldPair u = zero_state(g);
  for (int k = 0; k < g.npoints(); ++k) {
    u.Pi[k] = dist(rng);
    u.Psi[k] = dist(rng);
  }
  if (g.kind == GridKind::centred) u.Psi[0] = 0;
  return u;
}

}  // namespace

TEST_CASE("validate_bc sign rules") {
  // Mixed signs are ill posed; a global sign flip is normalised away.
  CHECK_THROWS_AS(validate_bc({BcVariant::MaxDissipative, 1, -1, 0, 0}),
                  IllPosedSigns);
  CHECK_THROWS_AS(validate_bc({BcVariant::PiDerivative, -1, 0, 1, 0}),
                  IllPosedSigns);
  CHECK_THROWS_AS(validate_bc({BcVariant::MaxDissipative, 0, 0, 0, 0}),
                  IllPosedSigns);
  const ValidatedBc f = validate_bc({BcVariant::MaxDissipative, -1, -2, 0, 0});
  CHECK(f.spec.rho == 1.0);
  CHECK(f.spec.sigma == 2.0);
}

TEST_CASE("validate_bc ignores unused coefficients") {
  // A PiDerivative spec may carry garbage in sigma/nu; they are cleared.
  const ValidatedBc b = validate_bc({BcVariant::PiDerivative, 1, -7, 2, -9});
  CHECK(b.spec.sigma == 0.0);
  CHECK(b.spec.nu == 0.0);
  CHECK(b.s == doctest::Approx(2.0));
}

TEST_CASE("validate_bc energy classification") {
  CHECK(validate_bc({BcVariant::MaxDissipative, 1, 1, 0, 0}).behavior ==
        EnergyBehavior::NonIncreasing);
  CHECK(validate_bc({BcVariant::MaxDissipative, 1, 0, 0, 0}).behavior ==
        EnergyBehavior::Conserved);
  CHECK(validate_bc({BcVariant::PiDerivative, 0, 0, 1, 0}).behavior ==
        EnergyBehavior::Conserved);
  CHECK(validate_bc({BcVariant::PsiDerivative, 0, 2, 0, 1}).behavior ==
        EnergyBehavior::Conserved);
  CHECK_THROWS_AS(validate_bc({BcVariant::PiDerivative, 1, 0, 0, 0}),
                  IllPosedSigns);
  CHECK_THROWS_AS(validate_bc({BcVariant::General, 1, -1, 1, 1, }),
                  IllPosedSigns);
  CHECK_THROWS_AS(validate_bc({BcVariant::General, 0, 1, 1, 0}), DegenerateS);
}

TEST_CASE("projector satisfies its defining properties") {
  std::mt19937 rng(7);
  for (Variant v : {Variant::Evans, Variant::SBP2}) {
    const GridKind kind =
        v == Variant::Evans ? GridKind::staggered : GridKind::centred;
    const SbpScheme s = scheme_for(v, 3, kind, kind == GridKind::centred ? 32 : 65);
    for (BcVariant bv : {BcVariant::MaxDissipative, BcVariant::PiDerivative,
                         BcVariant::PsiDerivative}) {
      BoundarySpec spec{bv, 1, 1, 1, 1};
      const Projector P = build_projector(s, validate_bc(spec));
      const double L_norm =
          std::sqrt(P.L_pi.squaredNorm() + P.L_psi.squaredNorm());
      for (int trial = 0; trial < 10; ++trial) {
        const FieldPair u = random_state(s.grid, rng);
        const FieldPair Pu = P.apply(u);
        const FieldPair PPu = P.apply(Pu);
        CHECK(std::abs(P.constraint(Pu)) < 1e-12 * L_norm * 10);
        CHECK((PPu.Pi - Pu.Pi).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((PPu.Psi - Pu.Psi).cwiseAbs().maxCoeff() < 1e-12);
      }
      // A state already on the constraint surface is untouched.
      FieldPair u = random_state(s.grid, rng);
      const FieldPair Pu = P.apply(u);
      const FieldPair Pu2 = P.apply(Pu);
      CHECK((Pu2.Pi - Pu.Pi).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("general variant has no projector") {
  const SbpScheme s = scheme_for(Variant::SBP2, 2, GridKind::centred, 32);
  CHECK_THROWS_AS(build_projector(s, validate_bc({BcVariant::General, 1, 1,
                                                  1, 1})),
                  Error);
}

TEST_CASE("discrete energy is positive and E_hat_b augments it") {
  std::mt19937 rng(11);
  const SbpScheme s = scheme_for(Variant::SBP2, 2, GridKind::centred, 32);
  const ValidatedBc deriv = validate_bc({BcVariant::PiDerivative, 1, 0, 1, 0});
  const ValidatedBc alg = validate_bc({BcVariant::MaxDissipative, 1, 1, 0, 0});
  for (int trial = 0; trial < 20; ++trial) {
    const FieldPair u = random_state(s.grid, rng);
    const auto [E, Eb] = discrete_energy(s, u, deriv);
    CHECK(E > 0);
    CHECK(Eb >= E);
    const auto [E2, Eb2] = discrete_energy(s, u, alg);
    CHECK(E2 == doctest::Approx(E).epsilon(1e-14));
    CHECK(Eb2 == E2);  // no boundary augmentation without a derivative term
  }
}

TEST_CASE("energy rate formulas") {
  std::mt19937 rng(13);
  const SbpScheme s = scheme_for(Variant::SBP2, 2, GridKind::centred, 32);
  const int M = s.grid.npoints() - 1;
  const FieldPair u = random_state(s.grid, rng);
  CHECK(energy_rate(s, u, validate_bc({BcVariant::PiDerivative, 0, 0, 1, 0})) ==
        0.0);
  CHECK(energy_rate(s, u, validate_bc({BcVariant::PsiDerivative, 0, 0, 0, 1})) ==
        0.0);
  const double rate =
      energy_rate(s, u, validate_bc({BcVariant::MaxDissipative, 1, 1, 0, 0}));
  CHECK(rate == doctest::Approx(s.chi * u.Pi[M] * u.Psi[M]).epsilon(1e-14));
}

TEST_CASE("projected flow dissipates through a maximal boundary") {
  // On the constraint surface rho Pi_M = -sigma Psi_M, so the predicted
  // rate chi R^p Pi_M Psi_M is <= 0.
  std::mt19937 rng(17);
  const SbpScheme s = scheme_for(Variant::SBP2, 2, GridKind::centred, 32);
  const ValidatedBc bc = validate_bc({BcVariant::MaxDissipative, 2, 1, 0, 0});
  const Projector P = build_projector(s, bc);
  for (int trial = 0; trial < 20; ++trial) {
    const FieldPair Pu = P.apply(random_state(s.grid, rng));
    CHECK(energy_rate(s, Pu, bc) <= 1e-12);
  }
}
