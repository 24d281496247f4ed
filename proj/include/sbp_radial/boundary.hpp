#ifndef SBP_RADIAL_BOUNDARY_HPP
#define SBP_RADIAL_BOUNDARY_HPP

#include <utility>

#include "sbp_radial/operators.hpp"

namespace sbpr {

/// Boundary-condition family at r = R:
///   MaxDissipative:  rho pi + sigma psi = 0,                rho sigma >= 0
///   PiDerivative:    rho pi + mu pi' = 0,                   rho mu >= 0
///   PsiDerivative:   sigma psi + nu (psi' + p psi / r) = 0, sigma nu >= 0
/// General carries all four coefficients; it is accepted for sign
/// diagnosis only, since no discrete energy is known for it.
enum class BcVariant { MaxDissipative, PiDerivative, PsiDerivative, General };

struct BoundarySpec {
  BcVariant variant = BcVariant::PiDerivative;
  double rho = 0, sigma = 0, mu = 0, nu = 0;
};

enum class EnergyBehavior {
  Conserved,      // the relevant energy (E-hat or E-hat-b) is constant
  NonIncreasing,  // strictly dissipative boundary term
};

struct ValidatedBc {
  BoundarySpec spec;  // signs normalised so the coefficients are >= 0
  double s = 0;       // rho mu + sigma nu
  EnergyBehavior behavior = EnergyBehavior::Conserved;
};

/// Check the well-posedness sign conditions (after fixing the overall
/// sign so that at least one coefficient is positive) and classify the
/// expected energy behaviour. Throws IllPosedSigns if any coefficient is
/// negative after normalisation or the variant's product condition fails,
/// and DegenerateS for mixed algebraic/derivative conditions with
/// s = rho mu + sigma nu = 0, which admit no energy estimate. The
/// pure-derivative sub-cases (rho = 0 with mu > 0, or sigma = 0 with
/// nu > 0) are accepted: there the projected flow freezes the boundary
/// value of the other field, so E-hat itself is conserved.
ValidatedBc validate_bc(const BoundarySpec& raw);

/// Olsson projector P = 1 - W^-1 L^t (L W^-1 L^t)^-1 L over the stacked
/// state (Pi, Psi), with L the single discrete constraint row. P is
/// self-adjoint in the energy inner product and differs from the identity
/// only on the support of W^-1 L^t.
struct Projector {
  Eigen::VectorXd L_pi, L_psi;  // constraint row
  Eigen::VectorXd c_pi, c_psi;  // W^-1 L^t / (L W^-1 L^t)

  double constraint(const FieldPair& u) const;
  void apply_in_place(FieldPair& u) const;
  FieldPair apply(FieldPair u) const;
};

/// Build the projector for a validated boundary condition:
///   MaxDissipative: L = rho Pi_M + sigma Psi_M
///   PiDerivative:   L = rho Pi_M + mu h^-1 (D Pi)_M
///   PsiDerivative:  L = sigma Psi_M + nu h^-1 (D-tilde Psi)_M
/// Throws SingularNormal if L W^-1 L^t vanishes and Error for the
/// General variant (no discrete energy is known).
Projector build_projector(const SbpScheme& scheme, const ValidatedBc& bc);

/// (E-hat, E-hat-b): the discrete energy
///   E-hat = (1/2) h^(p+1) (Pi^t W Pi + Psi^t W-tilde Psi)
/// and its boundary-modified version
///   E-hat-b = E-hat + chi h^p M^p (mu Psi_M + nu Pi_M)^2 / (2 s)
/// for derivative conditions with s > 0; otherwise E-hat-b = E-hat.
std::pair<double, double> discrete_energy(const SbpScheme& scheme,
                                          const FieldPair& u,
                                          const ValidatedBc& bc);

/// Predicted instantaneous d(E-hat)/dt (resp. d(E-hat-b)/dt) on the
/// projected flow: chi h^p M^p Pi_M Psi_M for MaxDissipative, exactly 0
/// for the derivative conditions.
double energy_rate(const SbpScheme& scheme, const FieldPair& u,
                   const ValidatedBc& bc);

}  // namespace sbpr

#endif
