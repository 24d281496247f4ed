#include "sbp_radial/evolve.hpp"

#include <cmath>
#include <string>

namespace sbpr {

FieldPair initial_bump(const GridSpec& grid, double r_c, double sigma_b,
                       double A) {
  if (!(sigma_b > 0) || r_c - sigma_b <= 0 || r_c + sigma_b >= grid.R)
    throw SupportTouchesBoundary(
        "bump support [" + std::to_string(r_c - sigma_b) + ", " +
        std::to_string(r_c + sigma_b) + "] must lie strictly inside (0, " +
        std::to_string(grid.R) + ")");
  FieldPair u = zero_state(grid);
  for (int k = 0; k < grid.npoints(); ++k) {
    const double z = (grid.radius(k) - r_c) / sigma_b;
    if (std::abs(z) < 1) u.Pi[k] = A * std::exp(-1 / (1 - z * z));
  }
  return u;
}

FieldPair rhs(const SbpScheme& scheme, const Projector& P, const FieldPair& u) {
  const double inv_h = 1 / scheme.grid.h();
  FieldPair du;
  du.Pi = inv_h * scheme.Dtilde.apply(u.Psi);
  du.Psi = inv_h * scheme.D.apply(u.Pi);
  P.apply_in_place(du);
  return du;
}

void rk4_step(const SbpScheme& scheme, const Projector& P,
              const ValidatedBc& bc, double dt, FieldPair& u, double& e_pred) {
  const FieldPair k1 = rhs(scheme, P, u);
  FieldPair stage{u.Pi + 0.5 * dt * k1.Pi, u.Psi + 0.5 * dt * k1.Psi};
  const double g1 = energy_rate(scheme, u, bc);
  const double g2 = energy_rate(scheme, stage, bc);
  const FieldPair k2 = rhs(scheme, P, stage);
  stage.Pi = u.Pi + 0.5 * dt * k2.Pi;
  stage.Psi = u.Psi + 0.5 * dt * k2.Psi;
  const double g3 = energy_rate(scheme, stage, bc);
  const FieldPair k3 = rhs(scheme, P, stage);
  stage.Pi = u.Pi + dt * k3.Pi;
  stage.Psi = u.Psi + dt * k3.Psi;
  const double g4 = energy_rate(scheme, stage, bc);
  const FieldPair k4 = rhs(scheme, P, stage);

  u.Pi += dt / 6 * (k1.Pi + 2 * k2.Pi + 2 * k3.Pi + k4.Pi);
  u.Psi += dt / 6 * (k1.Psi + 2 * k2.Psi + 2 * k3.Psi + k4.Psi);
  e_pred += dt / 6 * (g1 + 2 * g2 + 2 * g3 + g4);

  if (!u.Pi.allFinite() || !u.Psi.allFinite())
    throw NonFinite("state left the representable range (instability?)");
}

EvolveResult evolve(const SbpScheme& scheme, const ValidatedBc& bc,
                    const EvolutionConfig& config) {
  const GridSpec& grid = scheme.grid;
  EvolutionConfig c = config;
  if (c.r_c == 0) c.r_c = grid.R / 2;
  if (c.sigma_b == 0) c.sigma_b = grid.R / 8;
  if (c.snapshot_dt == 0) c.snapshot_dt = grid.R / 8;
  if (!(c.lambda > 0) || !(c.t_end > 0))
    throw Error("evolve needs lambda > 0 and t_end > 0");

  const Projector P = build_projector(scheme, bc);

  EvolveResult res;
  if (c.pi_profile) {
    res.state = zero_state(grid);
    for (int k = 0; k < grid.npoints(); ++k)
      res.state.Pi[k] = c.pi_profile(grid.radius(k));
    P.apply_in_place(res.state);
  } else {
    res.state = P.apply(initial_bump(grid, c.r_c, c.sigma_b, c.A));
  }

  // Steps per snapshot interval: dt <= lambda h, snapshot times exact.
  const int per_interval =
      std::max(1, int(std::ceil(c.snapshot_dt / (c.lambda * grid.h()) - 1e-9)));
  const double dt = c.snapshot_dt / per_interval;
  const int n_intervals = int(std::ceil(c.t_end / c.snapshot_dt - 1e-9));

  double e_pred = discrete_energy(scheme, res.state, bc).first;
  double t = 0;
  auto record = [&](double time) {
    const auto [E, Eb] = discrete_energy(scheme, res.state, bc);
    res.trace.t.push_back(time);
    res.trace.E_hat.push_back(E);
    res.trace.E_hat_b.push_back(Eb);
    res.trace.E_pred.push_back(e_pred);
    const int M = grid.npoints() - 1;
    res.trace.boundary_product.push_back(res.state.Pi[M] * res.state.Psi[M]);
  };

  record(0);
  res.snapshots.push_back({0, res.state});
  for (int iv = 0; iv < n_intervals; ++iv) {
    for (int s = 0; s < per_interval; ++s) {
      rk4_step(scheme, P, bc, dt, res.state, e_pred);
      t = iv * c.snapshot_dt + (s + 1) * dt;
      record(t);
    }
    res.snapshots.push_back({t, res.state});
  }
  return res;
}

}  // namespace sbpr
