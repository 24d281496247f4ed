#ifndef SBP_RADIAL_DETAIL_SBP4_SOLVER_HPP
#define SBP_RADIAL_DETAIL_SBP4_SOLVER_HPP

#include <vector>

#include "sbp_radial/detail/stencil.hpp"
#include "sbp_radial/grid.hpp"

namespace sbpr::detail {

// One forward solution of the 4th-order SBP4 accuracy recurrence.
// Slot k holds grid index k (centred) or k + 1/2 (staggered).
template <class S>
struct Sbp4Run {
  std::vector<S> v, w;
  S u1{0}, u32{0}, u52{0};
};

// March the recurrence up from the origin for given values of the three
// free parameters: staggered (u1, v_{1/2}, v_{3/2}), centred (v_1, u_{3/2},
// u_{5/2}). Each row i yields two conditions: the first-moment rule
//   sum_j T_j j = 12 (1+p) w_i
// fixes w_i, and the mixed fourth-order condition
//   2 i^5 S_0 - 2p i^4 S_1 = (1+p)(3 i^3 S_2 + i^2 S_3),
// with S_a the moments of the numerator row about i, fixes the top value
// v_{i+2}. The two origin conditions on the centred grid seed w_0 and v_2.
//
// Produces nslots values of v; w is left at 0 in the top two slots (their
// rows would need v beyond the requested range).
template <class S>
Sbp4Run<S> sbp4_run(int p, GridKind kind, int nslots, const S& s0,
                    const S& s1, const S& s2) {
  if (nslots < 4) throw GridTooSmall("sbp4_run needs at least 4 slots");
  Sbp4Run<S> run;
  run.v.assign(nslots, S(0));
  run.w.assign(nslots, S(0));
  if (kind == GridKind::staggered) {
    run.u1 = s0;
    run.v[0] = s1;
    run.v[1] = s2;
  } else {
    run.v[1] = s0;
    run.u32 = s1;
    run.u52 = s2;
    run.v[2] = run.v[1] + S(63) * run.u32 / S(8) - S(27) * run.u52 / S(8);
    run.w[0] =
        (run.v[1] - run.u32 / S(8) + S(5) * run.u52 / S(8)) / S(1 + p);
  }

  auto vfn = [&run, kind](int j2) -> S {
    return run.v[kind == GridKind::centred ? j2 / 2 : (j2 - 1) / 2];
  };
  auto tilde = sbp4_tilde<S>(kind, vfn, run.u1, run.u32, run.u52);

  const S q(p + 1);
  const int k_start = kind == GridKind::centred ? 1 : 0;
  for (int k = k_start; k + 2 < nslots; ++k) {
    const int twice_i = kind == GridKind::centred ? 2 * k : 2 * k + 1;
    // Numerator row with the unknown top value v[k+2] still at 0; the
    // unknown enters only through the outermost stencil leg, contributing
    // -x * 2^a to the moment S_a.
    auto row = folded_dtilde_row<S>(2, twice_i, tilde);
    const S A0 = row_moment(row, twice_i, 0);
    const S A1 = row_moment(row, twice_i, 1);
    const S A2 = row_moment(row, twice_i, 2);
    const S A3 = row_moment(row, twice_i, 3);
    const S i = S(twice_i) / S(2);
    const S i2 = i * i, i3 = i2 * i, i4 = i3 * i, i5 = i4 * i;
    const S den = S(2) * i5 - S(4 * p) * i4 - q * (S(12) * i3 + S(8) * i2);
    if (den == S(0)) throw Error("degenerate SBP4 recurrence row");
    const S num =
        S(2) * i5 * A0 - S(2 * p) * i4 * A1 - q * (S(3) * i3 * A2 + i2 * A3);
    const S x = num / den;
    run.v[k + 2] = x;
    run.w[k] = (A1 + i * A0 - x * (i + S(2))) / (S(12) * q);
  }
  return run;
}

}  // namespace sbpr::detail

#endif
