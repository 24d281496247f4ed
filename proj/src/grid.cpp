#include "sbp_radial/grid.hpp"

#include <string>

namespace sbpr {

GridSpec make_grid(GridKind kind, int M, double R, int p) {
  if (p < 1) throw Error("p must be >= 1, got " + std::to_string(p));
  if (R <= 0) throw Error("R must be positive");
  if (kind == GridKind::staggered && M % 2 == 0)
    throw Error("staggered grid needs an odd half-step count, got " +
                std::to_string(M));
  const int twice_M = kind == GridKind::centred ? 2 * M : M;
  // The widest boundary block (SBP42) spans the last 7 points, and the
  // origin rows span the first few; require last index >= 8.
  if (twice_M < 16)
    throw GridTooSmall("grid too small for SBP42 boundary block (need last "
                       "index >= 8, got " + std::to_string(0.5 * twice_M) +
                       ")");
  return GridSpec{kind, twice_M, R, p};
}

int p_from_harmonic(int l, int n) {
  if (l < 0) throw Error("l must be >= 0");
  if (n < 1) throw Error("n must be >= 1");
  return 2 * l + n;
}

FieldPair zero_state(const GridSpec& grid) {
  return {Eigen::VectorXd::Zero(grid.npoints()),
          Eigen::VectorXd::Zero(grid.npoints())};
}

}  // namespace sbpr
