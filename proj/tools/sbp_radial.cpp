// Command-line front end: weight-table generation, scheme verification,
// evolution runs, self-convergence studies, and the accuracy probes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbp_radial/convergence.hpp"
#include "sbp_radial/probes.hpp"
#include "sbp_radial/table_io.hpp"

using namespace sbpr;

namespace {

struct RunConfig {
  std::string command = "verify";
  std::string method = "sbp2";
  int p = -1, l = -1, n = -1;
  std::string kind = "centred";
  int M = 0;  // 0: 64 centred / 129 staggered (verify, evolve); 96/81 (converge)
  double R = 1.0;
  double lambda = 0.25;
  int i_star = 0;  // 0: automatic
  double t_end = 0;  // 0: 2R
  std::string bc_variant = "pi-derivative";
  double bc_rho = 0, bc_sigma = 0, bc_mu = 1, bc_nu = 0;
  std::string out = ".";
  std::string tag = "run";
};

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
  std::istringstream v(value);
  auto num = [&](auto& field) {
    if (!(v >> field))
      throw Error("bad value '" + value + "' for key '" + key + "'");
  };
  if (key == "command") c.command = value;
  else if (key == "method") c.method = value;
  else if (key == "p") num(c.p);
  else if (key == "l") num(c.l);
  else if (key == "n") num(c.n);
  else if (key == "kind") c.kind = value;
  else if (key == "M") num(c.M);
  else if (key == "R") num(c.R);
  else if (key == "lambda") num(c.lambda);
  else if (key == "i_star") num(c.i_star);
  else if (key == "t_end") num(c.t_end);
  else if (key == "bc.variant") c.bc_variant = value;
  else if (key == "bc.rho") num(c.bc_rho);
  else if (key == "bc.sigma") num(c.bc_sigma);
  else if (key == "bc.mu") num(c.bc_mu);
  else if (key == "bc.nu") num(c.bc_nu);
  else if (key == "out") c.out = value;
  else if (key == "tag") c.tag = value;
  else throw UnknownKey("unknown config key '" + key + "'");
}

void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw Error("config line is not key=value: '" + line + "'");
      continue;
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    apply_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

GridKind parse_kind(const std::string& s) {
  if (s == "staggered") return GridKind::staggered;
  if (s == "centred" || s == "centered") return GridKind::centred;
  throw Error("unknown grid kind '" + s + "' (staggered|centred)");
}

Variant parse_variant(const std::string& s) {
  if (s == "evans") return Variant::Evans;
  if (s == "sbp2") return Variant::SBP2;
  if (s == "sbp41") return Variant::SBP41;
  if (s == "sbp42" || s == "sbp4") return Variant::SBP42;
  throw Error("unknown method '" + s + "' (evans|sbp2|sbp41|sbp42)");
}

BcVariant parse_bc_variant(const std::string& s) {
  if (s == "max-dissipative" || s == "maxdiss") return BcVariant::MaxDissipative;
  if (s == "pi-derivative") return BcVariant::PiDerivative;
  if (s == "psi-derivative") return BcVariant::PsiDerivative;
  if (s == "general") return BcVariant::General;
  throw Error("unknown bc variant '" + s + "'");
}

int resolve_p(RunConfig& c) {
  const bool have_p = c.p >= 0, have_ln = c.l >= 0 || c.n >= 0;
  if (have_p && have_ln)
    throw InconsistentCombination("give either p or (l, n), not both");
  if (have_ln) {
    if (c.l < 0 || c.n < 0)
      throw InconsistentCombination("both l and n are required");
    c.p = p_from_harmonic(c.l, c.n);
  }
  if (c.p < 1) throw Error("p must be >= 1 (give --p or --l and --n)");
  return c.p;
}

void check_consistency(const RunConfig& c, Variant variant, GridKind kind) {
  if (variant_method(variant) == Method::Evans &&
      kind == GridKind::centred && c.p % 2 == 1)
    throw InconsistentCombination(
        "the Evans method does not exist for odd p on the centred grid "
        "(w_0 is not defined there)");
  if (kind == GridKind::staggered && c.M != 0 && c.M % 2 == 0)
    throw InconsistentCombination(
        "staggered grids need an odd M (M counts half-steps; the last index "
        "is M/2)");
}

int auto_i_star(Method method, int p, int need_points) {
  if (method == Method::SBP4) return p <= 10 ? 1000 : 2000;
  return need_points + 2;
}

struct Failures {
  std::vector<std::string> list;
  void check(bool ok, const std::string& what) {
    if (!ok) list.push_back(what);
  }
  int finish() const {
    for (const auto& f : list) std::cout << "FAIL: " << f << "\n";
    if (list.empty()) std::cout << "all checks passed\n";
    return list.empty() ? 0 : 1;
  }
};

int cmd_weights(RunConfig& c) {
  const int p = resolve_p(c);
  const GridKind kind = parse_kind(c.kind);
  const Method method = variant_method(parse_variant(c.method));
  check_consistency(c, parse_variant(c.method), kind);
  const int i_star = c.i_star ? c.i_star : auto_i_star(method, p, 128);
  const WeightTable t = cached_weights(method, p, kind, i_star);
  std::cout << "weight table " << method_name(method) << " p=" << p << " "
            << c.kind << " i_star=" << i_star << " chi=" << t.chi
            << (t.indefinite ? "  [indefinite W-tilde]" : "") << "\n"
            << "stored under " << data_directory() << "\n";
  return 0;
}

int cmd_verify(RunConfig& c) {
  const int p = resolve_p(c);
  const GridKind kind = parse_kind(c.kind);
  const Variant variant = parse_variant(c.method);
  check_consistency(c, variant, kind);
  const int M = c.M ? c.M : (kind == GridKind::centred ? 64 : 129);
  const GridSpec grid = make_grid(kind, M, c.R, p);
  const int i_star =
      c.i_star ? c.i_star
               : auto_i_star(variant_method(variant), p, grid.npoints());
  const WeightTable table =
      cached_weights(variant_method(variant), p, kind, i_star);
  const SbpScheme scheme = build_scheme(variant, grid, table);

  Failures f;
  const double resid = verify_sbp(scheme);
  std::cout << "SBP identity residual: " << resid << "\n";
  f.check(resid <= 1e-12, "SBP residual exceeds 1e-12");

  const ValidatedBc bc = validate_bc(
      {parse_bc_variant(c.bc_variant), c.bc_rho, c.bc_sigma, c.bc_mu, c.bc_nu});
  const Projector P = build_projector(scheme, bc);
  std::mt19937 rng(12345);
  std::normal_distribution<double> dist;
  double worst = 0;
  for (int trial = 0; trial < 20; ++trial) {
    FieldPair u = zero_state(grid);
    for (int k = 0; k < grid.npoints(); ++k) {
      u.Pi[k] = dist(rng);
      u.Psi[k] = dist(rng);
    }
    if (kind == GridKind::centred) u.Psi[0] = 0;
    FieldPair Pu = P.apply(u);
    worst = std::max(worst, std::abs(P.constraint(Pu)));
    FieldPair PPu = P.apply(Pu);
    worst = std::max(worst, (PPu.Pi - Pu.Pi).cwiseAbs().maxCoeff());
    worst = std::max(worst, (PPu.Psi - Pu.Psi).cwiseAbs().maxCoeff());
  }
  std::cout << "projector residuals (L P u, P^2 - P): " << worst << "\n";
  f.check(worst <= 1e-12, "projector properties violated");

  const auto err = truncation_scan_dtilde(
      scheme, [](double r) { return r * r * r; },
      [](double r) { return 3 * r * r; });
  std::cout << "max truncation error on psi = r^3: "
            << err.cwiseAbs().maxCoeff() << "\n";
  return f.finish();
}

int cmd_evolve(RunConfig& c) {
  const int p = resolve_p(c);
  const GridKind kind = parse_kind(c.kind);
  const Variant variant = parse_variant(c.method);
  check_consistency(c, variant, kind);
  const int M = c.M ? c.M : (kind == GridKind::centred ? 64 : 129);
  const GridSpec grid = make_grid(kind, M, c.R, p);
  const int i_star =
      c.i_star ? c.i_star
               : auto_i_star(variant_method(variant), p, grid.npoints());
  const WeightTable table =
      cached_weights(variant_method(variant), p, kind, i_star);
  const SbpScheme scheme = build_scheme(variant, grid, table);
  const ValidatedBc bc = validate_bc(
      {parse_bc_variant(c.bc_variant), c.bc_rho, c.bc_sigma, c.bc_mu, c.bc_nu});

  EvolutionConfig ev;
  ev.lambda = c.lambda;
  ev.t_end = c.t_end ? c.t_end : 2 * c.R;
  const EvolveResult res = evolve(scheme, bc, ev);

  std::filesystem::create_directories(c.out);
  write_fields_csv(grid, res.snapshots, c.out + "/fields_" + c.tag + ".csv");
  write_energy_csv(res.trace, c.out + "/energy_" + c.tag + ".csv");

  const DriftReport drift = energy_drift_check(res.trace, bc);
  std::cout << "evolved to t=" << ev.t_end << ", relative energy drift "
            << drift.max_rel_drift << "\n";
  Failures f;
  // The drift of the default C-infinity bump is dominated by RK4 damping
  // of its grid-scale spectral tail (a few 1e-6 at M = 64, shrinking
  // rapidly with resolution); only a genuine instability exceeds 1e-4.
  f.check(drift.max_rel_drift <= 1e-4, "energy drift exceeds 1e-4");
  if (bc.behavior == EnergyBehavior::NonIncreasing)
    f.check(drift.monotone, "E-hat increased between samples");
  return f.finish();
}

int cmd_converge(RunConfig& c) {
  const int p = resolve_p(c);
  SelfConvergenceConfig cc;
  cc.kind = parse_kind(c.kind);
  cc.variant = parse_variant(c.method);
  check_consistency(c, cc.variant, cc.kind);
  cc.p = p;
  cc.M0 = c.M ? c.M : (cc.kind == GridKind::centred ? 96 : 81);
  cc.R = c.R;
  cc.lambda = c.lambda;
  cc.t_end = c.t_end ? c.t_end : 2 * c.R;
  cc.expected_order =
      variant_method(cc.variant) == Method::SBP4 ? 4 : 2;
  cc.i_star = c.i_star;
  const RichardsonReport rep = self_convergence(cc);
  std::filesystem::create_directories(c.out);
  write_convergence_csv(rep, c.out + "/convergence_" + c.tag + ".csv");
  std::cout << "fitted order (L2 / max): " << rep.fitted_order_l2 << " / "
            << rep.fitted_order_max << "\n";
  return 0;
}

int cmd_probe(RunConfig& c) {
  const int p = c.p >= 1 ? c.p : 2;
  const auto naive = naive_scheme_error(2, 10);
  std::cout << "naive scheme, psi = r, p = 2: pointwise error times i^2:";
  for (int i = 1; i <= 5; ++i)
    std::cout << ' ' << naive[i - 1] * i * i;
  std::cout << "  (exactly 1/i^2)\n";
  const auto probe = probe_generalized_evans(p, 1.0);
  std::cout << "generalized Evans, p=" << p << ":\n"
            << "  h^2 coefficient: fitted " << probe.h2_coeff << ", predicted "
            << probe.h2_predicted << "\n"
            << "  h^4/r^2 coefficient: fitted " << probe.h4_r2_coeff
            << ", predicted " << probe.h4_r2_predicted << "\n";
  Failures f;
  f.check(std::abs(naive[3] - 1.0 / 16) < 1e-12, "naive error is not 1/i^2");
  if (probe.h4_r2_predicted != 0)
    f.check(std::abs(probe.h4_r2_coeff / probe.h4_r2_predicted - 1) < 0.01,
            "h^4/r^2 coefficient off by more than 1%");
  return f.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-stable SBP discretisations of the radial wave system"};
  RunConfig c;
  std::string config_path;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--command", c.command, "weights|verify|evolve|converge|probe");
  app.add_option("--method", c.method, "evans|sbp2|sbp41|sbp42");
  app.add_option("--p", c.p, "effective power p");
  app.add_option("--l", c.l, "spherical-harmonic index (with --n)");
  app.add_option("--n", c.n, "space dimension minus one (with --l)");
  app.add_option("--kind", c.kind, "staggered|centred");
  app.add_option("--M", c.M, "grid parameter (last index; half-steps when staggered)");
  app.add_option("--R", c.R, "outer radius");
  app.add_option("--lambda", c.lambda, "Courant factor dt/h");
  app.add_option("--i-star", c.i_star, "weight-table extent");
  app.add_option("--t-end", c.t_end, "final time");
  app.add_option("--bc-variant", c.bc_variant,
                 "max-dissipative|pi-derivative|psi-derivative");
  app.add_option("--bc-rho", c.bc_rho, "boundary coefficient rho");
  app.add_option("--bc-sigma", c.bc_sigma, "boundary coefficient sigma");
  app.add_option("--bc-mu", c.bc_mu, "boundary coefficient mu");
  app.add_option("--bc-nu", c.bc_nu, "boundary coefficient nu");
  app.add_option("--out", c.out, "output directory");
  app.add_option("--tag", c.tag, "output file tag");
  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      // Flags override the file: re-apply them by parsing into a fresh
      // config first, then the file fills only defaults. Simpler: load the
      // file into a copy and overlay explicitly-given flags.
      RunConfig from_file;
      load_config_file(from_file, config_path);
      auto keep = [&](auto& field, const auto& file_field,
                      const std::string& flag) {
        if (app.count(flag) == 0) field = file_field;
      };
      keep(c.command, from_file.command, "--command");
      keep(c.method, from_file.method, "--method");
      keep(c.p, from_file.p, "--p");
      keep(c.l, from_file.l, "--l");
      keep(c.n, from_file.n, "--n");
      keep(c.kind, from_file.kind, "--kind");
      keep(c.M, from_file.M, "--M");
      keep(c.R, from_file.R, "--R");
      keep(c.lambda, from_file.lambda, "--lambda");
      keep(c.i_star, from_file.i_star, "--i-star");
      keep(c.t_end, from_file.t_end, "--t-end");
      keep(c.bc_variant, from_file.bc_variant, "--bc-variant");
      keep(c.bc_rho, from_file.bc_rho, "--bc-rho");
      keep(c.bc_sigma, from_file.bc_sigma, "--bc-sigma");
      keep(c.bc_mu, from_file.bc_mu, "--bc-mu");
      keep(c.bc_nu, from_file.bc_nu, "--bc-nu");
      keep(c.out, from_file.out, "--out");
      keep(c.tag, from_file.tag, "--tag");
    }

    if (c.command == "weights") return cmd_weights(c);
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "evolve") return cmd_evolve(c);
    if (c.command == "converge") return cmd_converge(c);
    if (c.command == "probe") return cmd_probe(c);
    throw Error("unknown command '" + c.command + "'");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
