#include "sbp_radial/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sbpr {

int refinement_factor(GridKind kind) {
  return kind == GridKind::centred ? 2 : 3;
}

std::pair<double, double> scaled_norms(const GridSpec& grid,
                                       const Eigen::VectorXd& field) {
  double acc = 0, mx = 0;
  for (int k = 0; k < grid.npoints(); ++k) {
    const double i = grid.index(k);
    acc += std::pow(i, grid.p) * field[k] * field[k];
    mx = std::max(mx, std::pow(grid.radius(k), grid.p / 2.0) *
                          std::abs(field[k]));
  }
  return {std::sqrt(std::pow(grid.h(), grid.p + 1) * acc), mx};
}

namespace {

int slot_of(const GridSpec& g, int twice_i) {
  return g.kind == GridKind::centred ? twice_i / 2 : (twice_i - 1) / 2;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

RichardsonRow richardson_row(const GridSpec& g0, const Eigen::VectorXd& f0,
                             const GridSpec& g1, const Eigen::VectorXd& f1,
                             const GridSpec& g2, const Eigen::VectorXd& f2,
                             int expected_order, double t) {
  const int rf = refinement_factor(g0.kind);
  if (g1.kind != g0.kind || g2.kind != g0.kind || g1.p != g0.p ||
      g2.p != g0.p || g0.R != g1.R || g0.R != g2.R ||
      g1.twice_M != rf * g0.twice_M || g2.twice_M != rf * g1.twice_M)
    throw MisalignedGrids("levels are not successive refinements by " +
                          std::to_string(rf));

  const int n = g0.npoints();
  Eigen::VectorXd d01(n), d12(n);
  for (int k = 0; k < n; ++k) {
    const int j = g0.twice_index(k);
    const double mid = f1[slot_of(g1, rf * j)];
    d01[k] = f0[k] - mid;
    d12[k] = mid - f2[slot_of(g2, rf * rf * j)];
  }

  RichardsonRow row;
  row.t = t;
  std::tie(row.d01_l2, row.d01_max) = scaled_norms(g0, d01);
  std::tie(row.d12_l2, row.d12_max) = scaled_norms(g0, d12);
  row.ratio_l2 = row.d12_l2 > 0 ? row.d01_l2 / row.d12_l2 : 0;
  row.ratio_max = row.d12_max > 0 ? row.d01_max / row.d12_max : 0;
  const double lrf = std::log(double(rf));
  row.order_l2 = row.ratio_l2 > 0 ? std::log(row.ratio_l2) / lrf : 0;
  row.order_max = row.ratio_max > 0 ? std::log(row.ratio_max) / lrf : 0;
  const double rfk = std::pow(double(rf), expected_order);
  row.e_hi = row.d01_l2 * rfk / (rfk - 1);
  row.e_lo = row.d12_l2 * rfk * rfk / (rfk - 1);
  return row;
}

RichardsonReport self_convergence(const SelfConvergenceConfig& config) {
  if (config.levels < 3)
    throw Error("self_convergence needs at least 3 levels");
  const int rf = refinement_factor(config.kind);

  const Method method = variant_method(config.variant);
  std::vector<GridSpec> grids;
  int M = config.M0;
  for (int l = 0; l < config.levels; ++l, M *= rf)
    grids.push_back(make_grid(config.kind, M, config.R, config.p));

  WeightTable table;
  if (config.table) {
    table = *config.table;
  } else {
    int i_star = config.i_star;
    if (i_star == 0) {
      i_star = grids.back().npoints() + 2;
      if (method == Method::SBP4) i_star = std::max(i_star, 1000);
    }
    table = make_weights(method, config.p, config.kind, i_star);
  }

  const ValidatedBc bc = validate_bc(config.bc);
  std::vector<EvolveResult> runs;
  for (const auto& g : grids) {
    EvolutionConfig ev = config.evolution;
    ev.lambda = config.lambda;
    ev.t_end = config.t_end;
    runs.push_back(evolve(build_scheme(config.variant, g, table), bc, ev));
  }

  RichardsonReport report;
  report.refinement = rf;
  report.expected_order = config.expected_order;
  std::vector<double> orders_l2, orders_max;
  for (size_t j = 1; j < runs[0].snapshots.size(); ++j) {
    const double t = runs[0].snapshots[j].t;
    if (t < config.t_min || t > config.t_max) continue;
    report.rows.push_back(richardson_row(
        grids[0], runs[0].snapshots[j].state.Pi, grids[1],
        runs[1].snapshots[j].state.Pi, grids[2], runs[2].snapshots[j].state.Pi,
        config.expected_order, t));
    orders_l2.push_back(report.rows.back().order_l2);
    orders_max.push_back(report.rows.back().order_max);
  }
  report.fitted_order_l2 = median(orders_l2);
  report.fitted_order_max = median(orders_max);
  return report;
}

DriftReport energy_drift_check(const EnergyTrace& trace,
                               const ValidatedBc& bc) {
  DriftReport rep;
  const size_t n = trace.t.size();
  if (n == 0) return rep;
  const bool conserved = bc.behavior == EnergyBehavior::Conserved;
  const double e0 = std::max(std::abs(trace.E_hat_b[0]), 1e-300);

  std::vector<double> running(n);
  double rm = 0;
  for (size_t i = 0; i < n; ++i) {
    const double drift = conserved
                             ? std::abs(trace.E_hat_b[i] - trace.E_hat_b[0])
                             : std::abs(trace.E_hat[i] - trace.E_pred[i]);
    rm = std::max(rm, drift);
    running[i] = rm;
    if (!conserved && i > 0 &&
        trace.E_hat[i] > trace.E_hat[i - 1] + 1e-12 * e0)
      rep.monotone = false;
  }
  rep.max_rel_drift = rm / e0;

  const double t_half = trace.t.back() / 2;
  double rm_half = 0;
  for (size_t i = 0; i < n; ++i)
    if (trace.t[i] <= t_half) rm_half = running[i];
  rep.growth_ratio = rm / std::max(rm_half, 1e-300);
  return rep;
}

}  // namespace sbpr
