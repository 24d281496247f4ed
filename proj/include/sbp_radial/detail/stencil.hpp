#ifndef SBP_RADIAL_DETAIL_STENCIL_HPP
#define SBP_RADIAL_DETAIL_STENCIL_HPP

#include <utility>
#include <vector>

#include "sbp_radial/grid.hpp"

namespace sbpr::detail {

// Sparse row over physical grid indices (stored doubled), kept sorted.
// These are *numerator* coefficients: the D-tilde row of the operator is
// row / (denom(N) * w_i), the D row is row / denom(N).
template <class S>
using SparseRow = std::vector<std::pair<int, S>>;

template <class S>
void row_add(SparseRow<S>& row, int twice_j, const S& c) {
  for (auto& [j, val] : row)
    if (j == twice_j) {
      val += c;
      return;
    }
  row.emplace_back(twice_j, c);
}

inline int stencil_denom(int N) { return N == 1 ? 2 : 12; }

// Doubled offsets and weights of the minimum-width interior stencils:
// N=1: (Psi_{i+1} - Psi_{i-1}) / 2
// N=2: (8(Psi_{i+1} - Psi_{i-1}) - (Psi_{i+2} - Psi_{i-2})) / 12
inline std::vector<std::pair<int, int>> stencil_weights(int N) {
  if (N == 1) return {{2, 1}, {-2, -1}};
  return {{2, 8}, {-2, -8}, {4, -1}, {-4, 1}};
}

// Folded D-tilde row at grid index i (doubled). `tilde(twice_j)` returns
// the expansion of Psi~_j = (W~ Psi)_j over physical Psi values for j >= 0;
// ghost indices are folded with odd parity, Psi~_{-j} = -Psi~_j.
template <class S, class TildeFn>
SparseRow<S> folded_dtilde_row(int N, int twice_i, TildeFn&& tilde) {
  SparseRow<S> row;
  for (auto [off, wgt] : stencil_weights(N)) {
    int j2 = twice_i + off;
    int sign = 1;
    if (j2 < 0) {
      sign = -1;
      j2 = -j2;
    }
    for (const auto& [q2, c] : tilde(j2))
      row_add<S>(row, q2, S(S(sign * wgt) * c));
  }
  return row;
}

// Folded D row at grid index i (doubled): Pi is even, Pi_{-j} = Pi_{j}.
template <class S>
SparseRow<S> folded_d_row(int N, int twice_i) {
  SparseRow<S> row;
  for (auto [off, wgt] : stencil_weights(N)) {
    int j2 = twice_i + off;
    if (j2 < 0) j2 = -j2;
    row_add(row, j2, S(wgt));
  }
  // Drop entries that cancelled exactly (e.g. the centred origin row).
  std::erase_if(row, [](const auto& e) { return e.second == S(0); });
  return row;
}

// sum_j T_j (j - i)^alpha over a numerator row, in grid-index units.
template <class S>
S row_moment(const SparseRow<S>& row, int twice_i, int alpha) {
  S acc(0);
  for (const auto& [j2, c] : row) {
    S d = S(j2 - twice_i) / S(2);
    S term = c;
    for (int a = 0; a < alpha; ++a) term *= d;
    acc += term;
  }
  return acc;
}

// Diagonal-norm tilde accessor (Evans/SBP2): Psi~_j = v_j Psi_j. If
// `include_origin` is false the centred j=0 column is dropped (Psi_0 = 0
// on valid states); keep it when computing Taylor coefficients.
template <class S, class VFn>
auto diag_tilde(VFn&& v, bool include_origin) {
  return [v = std::forward<VFn>(v), include_origin](int j2) -> SparseRow<S> {
    if (j2 == 0 && !include_origin) return {};
    return {{j2, v(j2)}};
  };
}

// SBP4 tilde accessor with the u couplings. `v(twice_j)` supplies the
// diagonal; u couples the first two (staggered) or indices 1..3 (centred).
template <class S, class VFn>
auto sbp4_tilde(GridKind kind, VFn&& v, const S& u1, const S& u32,
                const S& u52) {
  return [kind, v = std::forward<VFn>(v), u1, u32, u52](int j2) -> SparseRow<S> {
    if (kind == GridKind::staggered) {
      if (j2 == 1) return {{1, v(1)}, {3, u1}};
      if (j2 == 3) return {{3, v(3)}, {1, u1}};
      return {{j2, v(j2)}};
    }
    if (j2 == 0) return {};
    if (j2 == 2) return {{2, v(2)}, {4, u32}};
    if (j2 == 4) return {{4, v(4)}, {2, u32}, {6, u52}};
    if (j2 == 6) return {{6, v(6)}, {4, u52}};
    return {{j2, v(j2)}};
  };
}

}  // namespace sbpr::detail

#endif
