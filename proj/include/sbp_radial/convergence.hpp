#ifndef SBP_RADIAL_CONVERGENCE_HPP
#define SBP_RADIAL_CONVERGENCE_HPP

#include <vector>

#include "sbp_radial/evolve.hpp"

namespace sbpr {

/// Refinement factor that keeps r_M = R exact and grid points aligned:
/// 2 on centred grids, 3 on staggered grids (half-integer indices map to
/// half-integer indices only under odd factors).
int refinement_factor(GridKind kind);

/// (L2_energy, max_scaled) of a grid function:
///   L2_energy = sqrt(h^(p+1) sum_i i^p field_i^2),
///   max_scaled = max_i |r_i^(p/2) field_i|.
/// Both are the natural norms in which convergence to the continuum is
/// expected (fields scale like r^(-p/2) near the origin). The i = 0 term
/// vanishes for p >= 1.
std::pair<double, double> scaled_norms(const GridSpec& grid,
                                       const Eigen::VectorXd& field);

/// Richardson comparison of one field at one time across three aligned
/// resolutions.
struct RichardsonRow {
  double t = 0;
  // Norms of the level differences restricted to the coarse grid:
  // d01 = coarse - mid, d12 = mid - fine.
  double d01_l2 = 0, d12_l2 = 0, d01_max = 0, d12_max = 0;
  // d01/d12; equals rf^k for clean order-k convergence.
  double ratio_l2 = 0, ratio_max = 0;
  double order_l2 = 0, order_max = 0;  // log(ratio) / log(rf)
  // Two independent estimates of the coarse-grid error norm, assuming
  // the expected order; they agree when the Richardson expansion holds.
  double e_lo = 0, e_hi = 0;
};

/// Compare one field across three grids refined by the kind's factor.
/// Throws MisalignedGrids unless g1, g2 are successive refinements of g0
/// with identical R and p.
RichardsonRow richardson_row(const GridSpec& g0, const Eigen::VectorXd& f0,
                             const GridSpec& g1, const Eigen::VectorXd& f1,
                             const GridSpec& g2, const Eigen::VectorXd& f2,
                             int expected_order, double t);

struct RichardsonReport {
  int refinement = 2;
  int expected_order = 0;
  std::vector<RichardsonRow> rows;  // one per compared snapshot time
  // Median fitted orders over the rows (robust against single-time noise).
  double fitted_order_l2 = 0, fitted_order_max = 0;
};

struct SelfConvergenceConfig {
  Variant variant = Variant::SBP2;
  GridKind kind = GridKind::centred;
  int p = 2;
  int M0 = 96;  // coarsest grid parameter; refined by the kind's factor
  double R = 1;
  double lambda = 0.25;
  double t_end = 0.5;
  int levels = 3;
  int expected_order = 2;
  double t_min = 0;  // compare only snapshots with t_min <= t <= t_max
  double t_max = 1e300;
  EvolutionConfig evolution;  // bump parameters and snapshot cadence
  // Outer boundary condition for all levels; default pi' = 0 (reflecting).
  BoundarySpec bc{BcVariant::PiDerivative, 0, 0, 1, 0};
  int i_star = 0;             // weight-table extent; 0 = choose automatically
  // Reuse an already-built table (it must cover the finest level);
  // otherwise one is built from (variant, p, kind, i_star).
  const WeightTable* table = nullptr;
};

/// Evolve the same initial data at `levels` aligned resolutions and
/// compare Pi snapshots pairwise. Rows are produced for every snapshot
/// time > 0 within [t_min, t_max].
RichardsonReport self_convergence(const SelfConvergenceConfig& config);

/// Energy-conservation diagnosis of a trace: for conserved boundary
/// conditions the reference is E-hat-b(0); for dissipative ones the
/// co-integrated prediction E_pred.
struct DriftReport {
  double max_rel_drift = 0;  // max |E - reference| / max(E(0), tiny)
  // Running-max drift at t_end over running-max drift at t_end/2;
  // close to 2 for the linear-in-t roundoff accumulation.
  double growth_ratio = 0;
  bool monotone = true;  // E-hat non-increasing at every sample
};

DriftReport energy_drift_check(const EnergyTrace& trace,
                               const ValidatedBc& bc);

}  // namespace sbpr

#endif
