#ifndef SBP_RADIAL_WEIGHTS_HPP
#define SBP_RADIAL_WEIGHTS_HPP

#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "sbp_radial/grid.hpp"

namespace sbpr {

enum class Method { Evans, SBP2, SBP4 };

const char* method_name(Method m);

/// Bounded sequences delta_{alpha,i} that parameterise the allowed
/// deviation of the Taylor coefficients of the D-tilde rows from their
/// naive values. delta2 is only present for the 4th-order method.
struct DeltaProfile {
  Eigen::VectorXd delta0;
  Eigen::VectorXd delta1;
  Eigen::VectorXd delta2;  // empty for N=1 methods
  bool has_delta2 = false;
  bool bounded = true;  // false if any |delta| grows with i
};

/// Analytic i -> infinity limits of the delta sequences for a method.
/// Returns (delta0, delta1, delta2); delta2 is meaningful for SBP4 only.
std::array<double, 3> delta_limits(Method method, int p);

/// Norm-weight sequences for one (method, p, grid kind), tabulated for all
/// grid indices i <= i_star. Entry k corresponds to grid index k (centred)
/// or k + 1/2 (staggered). wbar_i = w_i / i^p and vbar_i = v_i / i^p tend
/// to 1 as i -> infinity.
struct WeightTable {
  Method method;
  int p;
  GridKind kind;
  int i_star;

  Eigen::VectorXd w, v, wbar, vbar;
  // Off-diagonal couplings of the W-tilde norm (SBP4 only):
  // staggered: u1 couples Psi_{1/2} and Psi_{3/2};
  // centred:   u32 couples Psi_1,Psi_2 and u52 couples Psi_2,Psi_3.
  double u1 = 0, u32 = 0, u52 = 0;
  bool has_u = false;

  // Set for SBP4 staggered p in {1,2}: the W-tilde corner block is not
  // positive definite. The scheme may still be used, but carries no
  // energy-stability proof.
  bool indefinite = false;

  double chi = 1.0;  // vbar at the last tabulated index

  // Filled at build time for SBP4 (computed in high precision, where the
  // double-precision formulas lose accuracy); empty otherwise.
  std::optional<DeltaProfile> delta;

  int npoints() const {
    return kind == GridKind::centred ? i_star + 1 : i_star;
  }
  double index(int k) const {
    return kind == GridKind::centred ? double(k) : k + 0.5;
  }
  int twice_index(int k) const {
    return kind == GridKind::centred ? 2 * k : 2 * k + 1;
  }
  /// Storage slot of grid index i (given doubled); negative if absent.
  int slot(int twice_i) const {
    if (kind == GridKind::centred)
      return twice_i % 2 == 0 ? twice_i / 2 : -1;
    return twice_i % 2 == 1 ? (twice_i - 1) / 2 : -1;
  }
};

/// Evans weights: v_i = i^p, w_i = [(i+1)^{p+1} - (i-1)^{p+1}] / (2(p+1)).
/// Throws OddPOnCentredGrid for odd p on the centred grid (w_0 = 0 there,
/// so the origin accuracy condition cannot hold).
WeightTable evans_weights(int p, GridKind kind, int i_star);

/// SBP2 weights: v = w with (i+1)w_{i+1} - (i-1)w_{i-1} = 2(p+1)w_i and
/// the normalisation that makes wbar -> 1. Both characteristic modes have
/// modulus <= 1, so the recurrence is evaluated directly in double.
WeightTable sbp2_weights(int p, GridKind kind, int i_star);

/// Options for the SBP4 weight construction.
struct Sbp4Options {
  // Indices used for matching the exact-rational basis solutions to the
  // asymptotically constant mode; 0 means "use i_star".
  int match_at = 0;
};

/// SBP4 weights. The order-4 recurrence for v_i is solved with exact
/// rational arithmetic (a double-precision forward recursion loses roughly
/// one decimal digit per step), then the three free parameters are fixed by
/// matching against the asymptotic series near i_star in high-precision
/// floating point. Requires i_star >= 1000 for p <= 10 and >= 2000 for
/// p <= 22; larger p is rejected (tail series unvalidated).
WeightTable sbp4_weights(int p, GridKind kind, int i_star,
                         const Sbp4Options& opts = {});

WeightTable make_weights(Method method, int p, GridKind kind, int i_star);

/// Delta sequences of a table, computed from the folded operator rows.
/// For SBP4 returns the high-precision profile stored at build time.
DeltaProfile delta_profile(const WeightTable& table);

/// Threshold above which the asymptotic tail series are certified.
int tail_threshold(Method method, int p);

/// Evaluate the asymptotic tails (vbar_i, wbar_i) for i >= tail_threshold.
/// SBP4 uses the i^-4/i^-6 series; SBP2 uses the exact polynomial mode
/// (finite polynomial in i^-2). Throws BelowTailThreshold below threshold.
std::pair<double, double> tail_eval(Method method, int p, double i);

}  // namespace sbpr

#endif
