#include "sbp_radial/table_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "delta_internal.hpp"

namespace sbpr {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Method method_from_name(const std::string& name) {
  if (name == "evans") return Method::Evans;
  if (name == "sbp2") return Method::SBP2;
  if (name == "sbp4") return Method::SBP4;
  throw Error("unknown method name '" + name + "'");
}

GridKind kind_from_name(const std::string& name) {
  if (name == "staggered") return GridKind::staggered;
  if (name == "centred") return GridKind::centred;
  throw Error("unknown grid kind '" + name + "'");
}

const char* kind_name(GridKind k) {
  return k == GridKind::centred ? "centred" : "staggered";
}

// Stream extraction rejects "nan"; route doubles through strtod, which
// accepts everything %.17g can produce (the centred origin row of a delta
// profile is NaN).
bool read_double(std::istream& in, double& x) {
  std::string tok;
  if (!(in >> tok)) return false;
  char* end = nullptr;
  x = std::strtod(tok.c_str(), &end);
  return end && *end == '\0' && end != tok.c_str();
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

// Superdiagonal coupling of the W-tilde norm between Psi slots k, k + 1.
double u_at(const WeightTable& t, int k) {
  if (t.kind == GridKind::staggered) return k == 0 ? t.u1 : 0;
  return k == 1 ? t.u32 : k == 2 ? t.u52 : 0;
}

}  // namespace

void write_weight_table(const WeightTable& table, const std::string& path) {
  auto out = open_out(path);
  out << method_name(table.method) << ' ' << table.p << ' '
      << kind_name(table.kind) << ' ' << table.i_star << ' ' << fmt(table.chi)
      << '\n';
  for (int k = 0; k < table.npoints(); ++k) {
    out << fmt(table.index(k)) << ' ' << fmt(table.wbar[k]) << ' '
        << fmt(table.vbar[k]);
    if (table.has_u) out << ' ' << fmt(u_at(table, k));
    out << '\n';
  }
}

WeightTable read_weight_table(const std::string& path) {
  auto in = open_in(path);
  WeightTable t;
  std::string method, kind;
  double chi;
  if (!(in >> method >> t.p >> kind >> t.i_star >> chi))
    throw Error("malformed weight-table header in " + path);
  t.method = method_from_name(method);
  t.kind = kind_from_name(kind);
  t.has_u = t.method == Method::SBP4;

  const int n = t.npoints();
  t.wbar.resize(n);
  t.vbar.resize(n);
  for (int k = 0; k < n; ++k) {
    double i, u = 0;
    if (!read_double(in, i) || !read_double(in, t.wbar[k]) ||
        !read_double(in, t.vbar[k]))
      throw Error("truncated weight table " + path);
    if (t.has_u) {
      if (!read_double(in, u)) throw Error("missing u column in " + path);
      if (t.kind == GridKind::staggered) {
        if (k == 0) t.u1 = u;
      } else {
        if (k == 1) t.u32 = u;
        if (k == 2) t.u52 = u;
      }
    }
    if (i != t.index(k))
      throw Error("unexpected grid index in " + path + ": got " + fmt(i));
  }
  detail::bars_to_values(t);
  if (t.chi != chi)
    throw Error("header chi disagrees with the last vbar row in " + path);
  detail::check_definiteness(t);
  return t;
}

void write_delta_profile(const WeightTable& table, const DeltaProfile& d,
                         const std::string& path) {
  auto out = open_out(path);
  out << d.delta0.size() << ' ' << int(d.has_delta2) << ' ' << int(d.bounded)
      << '\n';
  for (int k = 0; k < d.delta0.size(); ++k) {
    out << fmt(table.index(k)) << ' ' << fmt(d.delta0[k]) << ' '
        << fmt(d.delta1[k]);
    if (d.has_delta2) out << ' ' << fmt(d.delta2[k]);
    out << '\n';
  }
}

DeltaProfile read_delta_profile(const std::string& path) {
  auto in = open_in(path);
  int n, has2, bounded;
  if (!(in >> n >> has2 >> bounded))
    throw Error("malformed delta-profile header in " + path);
  DeltaProfile d;
  d.has_delta2 = has2;
  d.bounded = bounded;
  d.delta0.resize(n);
  d.delta1.resize(n);
  if (has2) d.delta2.resize(n);
  for (int k = 0; k < n; ++k) {
    double i;
    if (!read_double(in, i) || !read_double(in, d.delta0[k]) ||
        !read_double(in, d.delta1[k]))
      throw Error("truncated delta profile " + path);
    if (has2 && !read_double(in, d.delta2[k]))
      throw Error("missing delta2 column in " + path);
  }
  return d;
}

std::string data_directory() {
  const char* env = std::getenv("SBP_RADIAL_DATA");
  return env && *env ? env : "./data";
}

WeightTable cached_weights(Method method, int p, GridKind kind, int i_star) {
  namespace fs = std::filesystem;
  const std::string dir = data_directory();
  std::ostringstream stem;
  stem << "weights_" << method_name(method) << "_p" << p << '_'
       << kind_name(kind) << '_' << i_star;
  const std::string table_path = dir + "/" + stem.str() + ".csv";
  std::string delta_path = dir + "/" + stem.str() + ".csv";
  delta_path.replace(delta_path.rfind("weights_"), 8, "deltas_");

  if (fs::exists(table_path)) {
    WeightTable t = read_weight_table(table_path);
    if (fs::exists(delta_path)) t.delta = read_delta_profile(delta_path);
    return t;
  }
  WeightTable t = make_weights(method, p, kind, i_star);
  fs::create_directories(dir);
  write_weight_table(t, table_path);
  write_delta_profile(t, delta_profile(t), delta_path);
  return t;
}

namespace {

void dump_band(std::ofstream& out, const char* name, const BandOperator& op) {
  out << "# " << name << '\n';
  for (size_t r = 0; r < op.rows.size(); ++r)
    for (int j = 0; j < op.rows[r].coeffs.size(); ++j)
      out << r << ", " << op.rows[r].first + j - int(r) << ", "
          << fmt(op.rows[r].coeffs[j]) << '\n';
}

void dump_norm(std::ofstream& out, const char* name, const NormOperator& op) {
  out << "# " << name << '\n';
  for (int k = 0; k < op.diag.size(); ++k)
    out << k << ", 0, " << fmt(op.diag[k]) << '\n';
  for (const auto& o : op.off) out << o.a << ", " << o.b - o.a << ", "
                                   << fmt(o.value) << '\n';
}

}  // namespace

void write_scheme_dump(const SbpScheme& scheme, const std::string& path) {
  auto out = open_out(path);
  out << "# scheme " << variant_name(scheme.variant) << " p=" << scheme.grid.p
      << ' ' << kind_name(scheme.grid.kind) << " twice_M=" << scheme.grid.twice_M
      << " chi=" << fmt(scheme.chi) << '\n';
  dump_band(out, "D", scheme.D);
  dump_band(out, "Dtilde", scheme.Dtilde);
  dump_norm(out, "W", scheme.W);
  dump_norm(out, "Wtilde", scheme.Wtilde);
}

void write_fields_csv(const GridSpec& grid,
                      const std::vector<Snapshot>& snapshots,
                      const std::string& path) {
  auto out = open_out(path);
  out << "t,i,r,pi,psi,pi_scaled,psi_scaled\n";
  for (const auto& snap : snapshots)
    for (int k = 0; k < grid.npoints(); ++k) {
      const double r = grid.radius(k);
      const double scale = std::pow(r, grid.p / 2.0);
      out << fmt(snap.t) << ',' << fmt(grid.index(k)) << ',' << fmt(r) << ','
          << fmt(snap.state.Pi[k]) << ',' << fmt(snap.state.Psi[k]) << ','
          << fmt(scale * snap.state.Pi[k]) << ','
          << fmt(scale * snap.state.Psi[k]) << '\n';
    }
}

void write_energy_csv(const EnergyTrace& trace, const std::string& path) {
  auto out = open_out(path);
  out << "t,E_hat,E_hat_b,E_pred,boundary_product\n";
  for (size_t j = 0; j < trace.t.size(); ++j)
    out << fmt(trace.t[j]) << ',' << fmt(trace.E_hat[j]) << ','
        << fmt(trace.E_hat_b[j]) << ',' << fmt(trace.E_pred[j]) << ','
        << fmt(trace.boundary_product[j]) << '\n';
}

void write_convergence_csv(const RichardsonReport& report,
                           const std::string& path) {
  auto out = open_out(path);
  out << "t,norm,e_lo,e_hi,ratio,fitted_order\n";
  const double rfk = std::pow(double(report.refinement), report.expected_order);
  for (const auto& row : report.rows) {
    out << fmt(row.t) << ",l2," << fmt(row.e_lo) << ',' << fmt(row.e_hi) << ','
        << fmt(row.ratio_l2) << ',' << fmt(row.order_l2) << '\n';
    out << fmt(row.t) << ",max," << fmt(row.d12_max * rfk * rfk / (rfk - 1))
        << ',' << fmt(row.d01_max * rfk / (rfk - 1)) << ','
        << fmt(row.ratio_max) << ',' << fmt(row.order_max) << '\n';
  }
}

}  // namespace sbpr
