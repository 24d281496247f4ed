#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "sbp_radial/table_io.hpp"

using namespace sbpr;
namespace fs = std::filesystem;

namespace {

std::string temp_dir() {
  static int counter = 0;
  const std::string d =
      (fs::temp_directory_path() / ("sbpr_io_test_" +
                                    std::to_string(::getpid()) + "_" +
                                    std::to_string(counter++)))
          .string();
  fs::create_directories(d);
  return d;
}

std::string first_line(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("weight table round-trips bit for bit") {
  const std::string dir = temp_dir();
  for (Method m : {Method::Evans, Method::SBP2}) {
    const WeightTable t = make_weights(m, 3, GridKind::staggered, 41);
    const std::string path = dir + "/t.csv";
    write_weight_table(t, path);
    const WeightTable r = read_weight_table(path);
    CHECK(r.method == t.method);
    CHECK(r.p == t.p);
    CHECK(r.kind == t.kind);
    CHECK(r.i_star == t.i_star);
    CHECK(r.chi == t.chi);
    CHECK(r.indefinite == t.indefinite);
    for (int k = 0; k < t.npoints(); ++k) {
      CHECK(r.wbar[k] == t.wbar[k]);
      CHECK(r.vbar[k] == t.vbar[k]);
      CHECK(r.w[k] == t.w[k]);
      CHECK(r.v[k] == t.v[k]);
    }
  }
  fs::remove_all(dir);
}

TEST_CASE("delta profile round-trips, including NaN origin rows") {
  const std::string dir = temp_dir();
  const WeightTable t = make_weights(Method::SBP2, 2, GridKind::centred, 40);
  const DeltaProfile d = delta_profile(t);
  REQUIRE(std::isnan(d.delta0[0]));  // centred origin row has no condition
  const std::string path = dir + "/d.csv";
  write_delta_profile(t, d, path);
  const DeltaProfile r = read_delta_profile(path);
  CHECK(r.has_delta2 == d.has_delta2);
  CHECK(r.bounded == d.bounded);
  REQUIRE(r.delta0.size() == d.delta0.size());
  CHECK(std::isnan(r.delta0[0]));
  for (int k = 1; k < d.delta0.size(); ++k) {
    CHECK(r.delta0[k] == d.delta0[k]);
    CHECK(r.delta1[k] == d.delta1[k]);
  }
  fs::remove_all(dir);
}

TEST_CASE("read_weight_table rejects corrupt files") {
  const std::string dir = temp_dir();
  const std::string path = dir + "/bad.csv";
  {
    std::ofstream out(path);
    out << "sbp2 2 centred 40 1.0\n0 0.5 0.5\n1 1.5\n";  // truncated row
  }
  CHECK_THROWS_AS(read_weight_table(path), Error);
  CHECK_THROWS_AS(read_weight_table(dir + "/missing.csv"), Error);
  fs::remove_all(dir);
}

TEST_CASE("cached_weights builds on a miss and reloads identically") {
  const std::string dir = temp_dir();
  ::setenv("SBP_RADIAL_DATA", dir.c_str(), 1);
  CHECK(data_directory() == dir);
  const WeightTable a = cached_weights(Method::SBP2, 4, GridKind::centred, 50);
  CHECK(fs::exists(dir + "/weights_sbp2_p4_centred_50.csv"));
  CHECK(fs::exists(dir + "/deltas_sbp2_p4_centred_50.csv"));
  const WeightTable b = cached_weights(Method::SBP2, 4, GridKind::centred, 50);
  for (int k = 0; k < a.npoints(); ++k) {
    CHECK(b.w[k] == a.w[k]);
    CHECK(b.v[k] == a.v[k]);
  }
  REQUIRE(b.delta.has_value());
  CHECK(b.delta->delta1[30] == a.delta->delta1[30]);
  ::unsetenv("SBP_RADIAL_DATA");
  fs::remove_all(dir);
}

TEST_CASE("csv emitters write the documented headers") {
  const std::string dir = temp_dir();
  const GridSpec g = make_grid(GridKind::centred, 16, 1.0, 2);
  const WeightTable t = make_weights(Method::SBP2, 2, GridKind::centred, 20);
  const SbpScheme s = build_scheme(Variant::SBP2, g, t);
  const ValidatedBc bc = validate_bc({BcVariant::PiDerivative, 0, 0, 1, 0});
  EvolutionConfig c;
  c.t_end = 0.25;
  c.snapshot_dt = 0.125;
  const EvolveResult res = evolve(s, bc, c);

  write_fields_csv(g, res.snapshots, dir + "/f.csv");
  CHECK(first_line(dir + "/f.csv") == "t,i,r,pi,psi,pi_scaled,psi_scaled");
  write_energy_csv(res.trace, dir + "/e.csv");
  CHECK(first_line(dir + "/e.csv") == "t,E_hat,E_hat_b,E_pred,boundary_product");

  RichardsonReport rep;
  rep.refinement = 2;
  rep.expected_order = 2;
  rep.rows.push_back({0.5, 1e-3, 2.5e-4, 2e-3, 5e-4, 4.0, 4.0, 2.0, 2.0,
                      1e-3, 1e-3});
  write_convergence_csv(rep, dir + "/c.csv");
  CHECK(first_line(dir + "/c.csv") == "t,norm,e_lo,e_hi,ratio,fitted_order");

  write_scheme_dump(s, dir + "/s.txt");
  CHECK(first_line(dir + "/s.txt").substr(0, 13) == "# scheme sbp2");

  // Row counts: fields has one line per (snapshot, point) plus header.
  std::ifstream in(dir + "/f.csv");
  int lines = 0;
  std::string l;
  while (std::getline(in, l)) ++lines;
  CHECK(lines == 1 + int(res.snapshots.size()) * g.npoints());
  fs::remove_all(dir);
}
