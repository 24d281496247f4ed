#include "sbp_radial/boundary.hpp"

#include <cmath>

namespace sbpr {

ValidatedBc validate_bc(const BoundarySpec& raw) {
  BoundarySpec s = raw;
  // Zero out the coefficients the variant does not use.
  switch (s.variant) {
    case BcVariant::MaxDissipative: s.mu = s.nu = 0; break;
    case BcVariant::PiDerivative: s.sigma = s.nu = 0; break;
    case BcVariant::PsiDerivative: s.rho = s.mu = 0; break;
    case BcVariant::General: break;
  }
  if (s.rho == 0 && s.sigma == 0 && s.mu == 0 && s.nu == 0)
    throw IllPosedSigns("all boundary coefficients vanish");

  // Fix the overall sign so that at least one coefficient is positive.
  if (s.rho <= 0 && s.sigma <= 0 && s.mu <= 0 && s.nu <= 0) {
    s.rho = -s.rho;
    s.sigma = -s.sigma;
    s.mu = -s.mu;
    s.nu = -s.nu;
  }
  if (s.rho < 0 || s.sigma < 0 || s.mu < 0 || s.nu < 0)
    throw IllPosedSigns(
        "boundary coefficients must all have the same sign (rho, sigma, mu, "
        "nu >= 0 after normalisation)");

  ValidatedBc out;
  out.spec = s;
  out.s = s.rho * s.mu + s.sigma * s.nu;
  switch (s.variant) {
    case BcVariant::MaxDissipative:
      out.behavior = s.rho > 0 && s.sigma > 0 ? EnergyBehavior::NonIncreasing
                                              : EnergyBehavior::Conserved;
      break;
    case BcVariant::PiDerivative:
      if (s.mu == 0) throw IllPosedSigns("PiDerivative requires mu != 0");
      out.behavior = EnergyBehavior::Conserved;
      break;
    case BcVariant::PsiDerivative:
      if (s.nu == 0) throw IllPosedSigns("PsiDerivative requires nu != 0");
      out.behavior = EnergyBehavior::Conserved;
      break;
    case BcVariant::General:
      if (s.mu == 0 && s.nu == 0) {
        out.behavior = s.rho > 0 && s.sigma > 0 ? EnergyBehavior::NonIncreasing
                                                : EnergyBehavior::Conserved;
      } else {
        if (out.s == 0)
          throw DegenerateS(
              "rho mu + sigma nu = 0: the modified energy E-hat-b is "
              "undefined for this combination");
        out.behavior = s.mu * s.sigma == 0 && s.nu * s.rho == 0
                           ? EnergyBehavior::Conserved
                           : EnergyBehavior::NonIncreasing;
      }
      break;
  }
  return out;
}

double Projector::constraint(const FieldPair& u) const {
  return L_pi.dot(u.Pi) + L_psi.dot(u.Psi);
}

void Projector::apply_in_place(FieldPair& u) const {
  const double val = constraint(u);
  u.Pi -= val * c_pi;
  u.Psi -= val * c_psi;
}

FieldPair Projector::apply(FieldPair u) const {
  apply_in_place(u);
  return u;
}

Projector build_projector(const SbpScheme& scheme, const ValidatedBc& bc) {
  if (bc.spec.variant == BcVariant::General)
    throw Error(
        "no discrete energy is known for the general boundary condition; "
        "refusing to build a projector without a stability proof");

  const int n = scheme.grid.npoints();
  const int M = n - 1;
  const double h = scheme.grid.h();
  Projector P;
  P.L_pi = Eigen::VectorXd::Zero(n);
  P.L_psi = Eigen::VectorXd::Zero(n);

  auto add_row = [](Eigen::VectorXd& L, const BandOperator::Row& row,
                    double factor) {
    L.segment(row.first, row.coeffs.size()) += factor * row.coeffs;
  };
  switch (bc.spec.variant) {
    case BcVariant::MaxDissipative:
      P.L_pi[M] = bc.spec.rho;
      P.L_psi[M] = bc.spec.sigma;
      break;
    case BcVariant::PiDerivative:
      P.L_pi[M] = bc.spec.rho;
      add_row(P.L_pi, scheme.D.rows[M], bc.spec.mu / h);
      break;
    case BcVariant::PsiDerivative:
      P.L_psi[M] = bc.spec.sigma;
      add_row(P.L_psi, scheme.Dtilde.rows[M], bc.spec.nu / h);
      break;
    case BcVariant::General: break;  // unreachable
  }

  // W^-1 L^t. The constraint row is supported near the boundary, where
  // both norms are diagonal (the SBP4 u-couplings sit at the origin and
  // build_scheme guarantees the blocks do not overlap).
  P.c_pi = Eigen::VectorXd::Zero(n);
  P.c_psi = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    if (P.L_pi[k] != 0) P.c_pi[k] = P.L_pi[k] / scheme.W.diag[k];
    if (P.L_psi[k] != 0) P.c_psi[k] = P.L_psi[k] / scheme.Wtilde.diag[k];
  }
  const double denom = P.L_pi.dot(P.c_pi) + P.L_psi.dot(P.c_psi);
  if (!(denom > 0)) throw SingularNormal("L W^-1 L^t is not positive");
  P.c_pi /= denom;
  P.c_psi /= denom;
  return P;
}

std::pair<double, double> discrete_energy(const SbpScheme& scheme,
                                          const FieldPair& u,
                                          const ValidatedBc& bc) {
  const double hp1 = std::pow(scheme.grid.h(), scheme.grid.p + 1);
  const double E =
      0.5 * hp1 * (scheme.W.quad(u.Pi) + scheme.Wtilde.quad(u.Psi));
  double Eb = E;
  const bool derivative = bc.spec.variant == BcVariant::PiDerivative ||
                          bc.spec.variant == BcVariant::PsiDerivative;
  if (derivative && bc.s > 0) {
    const int M = scheme.grid.npoints() - 1;
    // chi h^p M^p = chi R^p since M h = R.
    const double bfac = scheme.chi * std::pow(scheme.grid.R, scheme.grid.p);
    const double q = bc.spec.mu * u.Psi[M] + bc.spec.nu * u.Pi[M];
    Eb += bfac * q * q / (2 * bc.s);
  }
  return {E, Eb};
}

double energy_rate(const SbpScheme& scheme, const FieldPair& u,
                   const ValidatedBc& bc) {
  if (bc.spec.variant == BcVariant::PiDerivative ||
      bc.spec.variant == BcVariant::PsiDerivative)
    return 0;
  const int M = scheme.grid.npoints() - 1;
  return scheme.chi * std::pow(scheme.grid.R, scheme.grid.p) * u.Pi[M] *
         u.Psi[M];
}

}  // namespace sbpr
