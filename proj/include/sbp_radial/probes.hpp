#ifndef SBP_RADIAL_PROBES_HPP
#define SBP_RADIAL_PROBES_HPP

#include <Eigen/Dense>

namespace sbpr {

/// Pointwise error of the naive operator
///   (D-tilde Psi)_i = [(i+1)^p Psi_{i+1} - (i-1)^p Psi_{i-1}] / (2 i^p)
/// applied to psi = r, against psi' + p psi / r, at i = 1..npoints. For
/// p = 2 this is exactly 1/i^2: independent of h at fixed i, so the
/// scheme does not converge in the maximum norm.
Eigen::VectorXd naive_scheme_error(int p, int npoints);

/// Leading error coefficients of the generalized Evans operator
///   (p+1) D(r^p Psi) / D(r^{p+1})
/// with the minimal-width centered stencil D of order 2N, applied to
/// psi = a r + b r^3. The a-part is differentiated exactly; the error is
/// b h^2 g_N(i) with g_1(i) -> (p+3)(2p+1)/3 and
/// g_2(i) = -2(p+3)p(p-1)(2p-1)/15 / i^2 + O(i^-4), i.e. an h^4/r^2 error
/// that destroys fourth-order accuracy near the origin.
struct GeneralizedEvansProbe {
  double h2_coeff;         // fitted limit of g_1 (per unit b)
  double h2_predicted;     // (p+3)(2p+1)/3
  double h4_r2_coeff;      // fitted limit of i^2 g_2 (per unit b)
  double h4_r2_predicted;  // -2(p+3)p(p-1)(2p-1)/15
};

/// Fit the coefficients by Richardson extrapolation in 1/i^2 at
/// i = 40 and 80 (exact stencil sums, no grid spacing enters).
GeneralizedEvansProbe probe_generalized_evans(int p, double b);

}  // namespace sbpr

#endif
