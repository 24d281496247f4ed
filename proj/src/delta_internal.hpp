#ifndef SBP_RADIAL_DELTA_INTERNAL_HPP
#define SBP_RADIAL_DELTA_INTERNAL_HPP

#include <vector>

#include "sbp_radial/weights.hpp"

namespace sbpr::detail {

// Delta sequences from the folded D-tilde rows, evaluated in double.
// v_ext must extend N slots past n_out so the top rows can be closed;
// w needs n_out entries. Entries that cannot be formed (the centred
// origin row) are NaN.
DeltaProfile delta_from_values(Method method, GridKind kind, int p,
                               const std::vector<double>& v_ext,
                               const std::vector<double>& w, int n_out,
                               double u1 = 0, double u32 = 0, double u52 = 0);

// Heuristic growth check used to set DeltaProfile::bounded.
bool delta_bounded(const DeltaProfile& d);

// Fill w, v from the barred arrays (w = wbar * i^p, except at the centred
// origin slot, which stores unscaled values) and set chi.
void bars_to_values(WeightTable& t);

// Set t.indefinite from the leading minors of the W-tilde corner block
// and the signs of the diagonal entries (only SBP4 can fail).
void check_definiteness(WeightTable& t);

}  // namespace sbpr::detail

#endif
