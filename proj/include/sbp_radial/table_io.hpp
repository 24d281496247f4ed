#ifndef SBP_RADIAL_TABLE_IO_HPP
#define SBP_RADIAL_TABLE_IO_HPP

#include <string>

#include "sbp_radial/convergence.hpp"

namespace sbpr {

/// Weight-table file: one header line `method p kind i_star chi`, then one
/// row `i wbar vbar [u]` per grid index, all reals with 17 significant
/// digits so that read(write(T)) == T at double precision. The u column
/// (SBP4 only) holds the superdiagonal coupling between Psi slots k and
/// k + 1. The centred i = 0 row stores the unscaled w_0.
void write_weight_table(const WeightTable& table, const std::string& path);
WeightTable read_weight_table(const std::string& path);

/// Delta-profile companion file: header `n has_delta2 bounded`, then rows
/// `i delta0 delta1 [delta2]`. Preserves the build-time high-precision
/// profile of SBP4 tables across the cache.
void write_delta_profile(const WeightTable& table, const DeltaProfile& d,
                         const std::string& path);
DeltaProfile read_delta_profile(const std::string& path);

/// Directory holding golden weight tables: $SBP_RADIAL_DATA or ./data.
std::string data_directory();

/// Return the table from the cache (weights_<method>_p<p>_<kind>_<i_star>
/// .csv under data_directory()), building and storing it on a miss. The
/// delta profile travels in a companion deltas_... file.
WeightTable cached_weights(Method method, int p, GridKind kind, int i_star);

/// Banded-matrix listing of the assembled operators and norms, one
/// `row, offset, value` line per entry, section headers per operator.
void write_scheme_dump(const SbpScheme& scheme, const std::string& path);

/// CSV emitters for evolution artifacts.
void write_fields_csv(const GridSpec& grid,
                      const std::vector<Snapshot>& snapshots,
                      const std::string& path);
void write_energy_csv(const EnergyTrace& trace, const std::string& path);
void write_convergence_csv(const RichardsonReport& report,
                           const std::string& path);

}  // namespace sbpr

#endif
