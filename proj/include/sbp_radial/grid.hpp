#ifndef SBP_RADIAL_GRID_HPP
#define SBP_RADIAL_GRID_HPP

#include <Eigen/Dense>

#include "sbp_radial/errors.hpp"

namespace sbpr {

/// Radial grid flavour: staggered grids have half-integer indices
/// i = 1/2, 3/2, ..., M (no point at r = 0); centred grids have integer
/// indices i = 0, 1, ..., M. In both cases r_i = i*h and r_M = R exactly.
enum class GridKind { staggered, centred };

/// Uniform radial grid for the reduced wave system.
///
/// Indices are stored doubled (twice_M = 2M) so that both integer and
/// half-integer index sets are exact. On a staggered grid the public "M"
/// parameter counts half-steps: M = 81 means the last index is 81/2.
struct GridSpec {
  GridKind kind;
  int twice_M;  // 2 * (last grid index); odd on staggered grids
  double R;     // outer radius, r_M = R
  int p;        // effective power in psi' + p psi / r

  double last_index() const { return 0.5 * twice_M; }
  double h() const { return R / last_index(); }

  /// Number of stored points (index 0 is r=0 on centred, r=h/2 on staggered).
  int npoints() const {
    return kind == GridKind::centred ? twice_M / 2 + 1 : (twice_M + 1) / 2;
  }
  /// Grid index i of storage slot k.
  double index(int k) const {
    return kind == GridKind::centred ? double(k) : k + 0.5;
  }
  int twice_index(int k) const {
    return kind == GridKind::centred ? 2 * k : 2 * k + 1;
  }
  double radius(int k) const { return index(k) * h(); }

  bool operator==(const GridSpec&) const = default;
};

/// Build and validate a grid. On centred grids M is the last index; on
/// staggered grids M counts half-steps (so the last index is M/2 and must
/// be a half-integer, i.e. M odd).
GridSpec make_grid(GridKind kind, int M, double R, int p);

/// Effective power p = 2l + n for spherical-harmonic index l in n+1
/// space dimensions.
int p_from_harmonic(int l, int n);

/// Parity of a grid function under r -> -r.
enum class Parity { even, odd };

/// Result of folding a (possibly negative, "ghost") index onto the
/// physical grid: value at index i equals sign * value at |i|.
/// For an odd field at i = 0 the value is forced to zero (sign = 0).
struct FoldedIndex {
  int twice_abs;
  int sign;  // +1, -1, or 0 (odd field at the origin)
};

inline FoldedIndex fold_value(Parity parity, int twice_i) {
  if (twice_i == 0 && parity == Parity::odd) return {0, 0};
  if (twice_i >= 0) return {twice_i, 1};
  return {-twice_i, parity == Parity::even ? 1 : -1};
}

/// Semi-discrete state: Pi represents pi = d(phi)/dt (even),
/// Psi represents psi = d(phi)/dr (odd; Psi_0 = 0 on centred grids).
struct FieldPair {
  Eigen::VectorXd Pi;
  Eigen::VectorXd Psi;
};

FieldPair zero_state(const GridSpec& grid);

}  // namespace sbpr

#endif
