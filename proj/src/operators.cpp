#include "sbp_radial/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbp_radial/detail/stencil.hpp"

namespace sbpr {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::Evans: return "evans";
    case Variant::SBP2: return "sbp2";
    case Variant::SBP41: return "sbp41";
    case Variant::SBP42: return "sbp42";
  }
  return "?";
}

Method variant_method(Variant v) {
  switch (v) {
    case Variant::Evans: return Method::Evans;
    case Variant::SBP2: return Method::SBP2;
    default: return Method::SBP4;
  }
}

int variant_halforder(Variant v) {
  return variant_method(v) == Method::SBP4 ? 2 : 1;
}

Eigen::VectorXd BandOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y(rows.size());
  for (size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    y[k] = r.coeffs.size() == 0
               ? 0.0
               : r.coeffs.dot(x.segment(r.first, r.coeffs.size()));
  }
  return y;
}

Eigen::MatrixXd BandOperator::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows.size(), cols);
  for (size_t k = 0; k < rows.size(); ++k)
    m.block(k, rows[k].first, 1, rows[k].coeffs.size()) =
        rows[k].coeffs.transpose();
  return m;
}

Eigen::VectorXd NormOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = diag.cwiseProduct(x);
  for (const auto& o : off) {
    y[o.a] += o.value * x[o.b];
    y[o.b] += o.value * x[o.a];
  }
  return y;
}

double NormOperator::quad(const Eigen::VectorXd& x) const {
  return x.dot(apply(x));
}

Eigen::MatrixXd NormOperator::dense() const {
  Eigen::MatrixXd m = diag.asDiagonal();
  for (const auto& o : off) {
    m(o.a, o.b) += o.value;
    m(o.b, o.a) += o.value;
  }
  return m;
}

namespace {

// Convert a folded sparse numerator row (doubled indices) to a contiguous
// band row, dividing by `scale`.
BandOperator::Row band_row(const detail::SparseRow<double>& sparse,
                           const WeightTable& table, double scale) {
  BandOperator::Row row;
  if (sparse.empty()) return row;
  int lo = table.npoints(), hi = -1;
  for (const auto& [j2, c] : sparse) {
    const int s = table.slot(j2);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  row.first = lo;
  row.coeffs = Eigen::VectorXd::Zero(hi - lo + 1);
  for (const auto& [j2, c] : sparse) row.coeffs[table.slot(j2) - lo] += c / scale;
  return row;
}

BandOperator::Row literal_row(int first, std::initializer_list<double> cs) {
  BandOperator::Row row;
  row.first = first;
  row.coeffs = Eigen::VectorXd::Zero(cs.size());
  int k = 0;
  for (double c : cs) row.coeffs[k++] = c;
  return row;
}

}  // namespace

SbpScheme build_scheme(Variant variant, const GridSpec& grid,
                       const WeightTable& table) {
  const int N = variant_halforder(variant);
  const int n = grid.npoints();

  if (table.method != variant_method(variant) || table.p != grid.p ||
      table.kind != grid.kind)
    throw TableMismatch(std::string("table (") + method_name(table.method) +
                        ", p=" + std::to_string(table.p) +
                        ") does not match scheme " + variant_name(variant) +
                        ", p=" + std::to_string(grid.p));
  if (table.npoints() < n)
    throw TableMismatch("table covers " + std::to_string(table.npoints()) +
                        " points, grid needs " + std::to_string(n));

  const int min_points = variant == Variant::SBP42  ? 12
                         : variant == Variant::SBP41 ? 10
                                                     : 6;
  if (n < min_points)
    throw GridTooSmall(std::string(variant_name(variant)) + " needs at least " +
                       std::to_string(min_points) + " grid points, got " +
                       std::to_string(n));

  SbpScheme s;
  s.grid = grid;
  s.variant = variant;
  s.table = table;

  const auto& w = table.w;
  const auto& v = table.v;
  const bool centred = grid.kind == GridKind::centred;
  const double denom = detail::stencil_denom(N);

  // Number of outer rows replaced by the boundary closure.
  const int n_bdry = variant == Variant::SBP42  ? 4
                     : variant == Variant::SBP41 ? 2
                                                 : 1;

  auto vfn = [&](int j2) { return v[table.slot(j2)]; };
  std::function<detail::SparseRow<double>(int)> tilde;
  if (table.method == Method::SBP4)
    tilde = detail::sbp4_tilde<double>(grid.kind, vfn, table.u1, table.u32,
                                       table.u52);
  else
    tilde = detail::diag_tilde<double>(vfn, /*include_origin=*/false);

  s.D.cols = s.Dtilde.cols = n;
  s.D.rows.resize(n);
  s.Dtilde.rows.resize(n);
  for (int k = 0; k < n - n_bdry; ++k) {
    const int twice_i = grid.twice_index(k);
    s.D.rows[k] = band_row(detail::folded_d_row<double>(N, twice_i), table, denom);
    s.Dtilde.rows[k] = band_row(detail::folded_dtilde_row<double>(N, twice_i, tilde),
                                table, denom * w[k]);
  }

  const int M = n - 1;  // storage slot of the boundary index
  switch (variant) {
    case Variant::Evans:
    case Variant::SBP2:
      s.D.rows[M] = literal_row(M - 1, {-1, 1});
      s.Dtilde.rows[M] = literal_row(M - 1, {-v[M - 1] / w[M], v[M] / w[M]});
      break;
    case Variant::SBP41:
      s.D.rows[M - 1] = literal_row(M - 3, {1. / 13, -8. / 13, 0, 7. / 13});
      s.D.rows[M] = literal_row(M - 2, {1. / 5, -7. / 5, 6. / 5});
      s.Dtilde.rows[M - 1] =
          literal_row(M - 3, {v[M - 3] / (13 * w[M - 1]),
                              -8 * v[M - 2] / (13 * w[M - 1]), 0,
                              7 * v[M] / (13 * w[M - 1])});
      s.Dtilde.rows[M] =
          literal_row(M - 2, {v[M - 2] / (5 * w[M]), -7 * v[M - 1] / (5 * w[M]),
                              6 * v[M] / (5 * w[M])});
      break;
    case Variant::SBP42:
      s.D.rows[M - 3] =
          literal_row(M - 5, {4. / 49, -32. / 49, 0, 59. / 98, 0, -3. / 98});
      s.D.rows[M - 2] =
          literal_row(M - 4, {4. / 43, -59. / 86, 0, 59. / 86, -4. / 43});
      s.D.rows[M - 1] = literal_row(M - 2, {-1. / 2, 0, 1. / 2});
      s.D.rows[M] = literal_row(M - 3, {3. / 34, 4. / 17, -59. / 34, 24. / 17});
      s.Dtilde.rows[M - 3] = literal_row(
          M - 5, {4 * v[M - 5] / (49 * w[M - 3]),
                  -32 * v[M - 4] / (49 * w[M - 3]), 0,
                  59 * v[M - 2] / (98 * w[M - 3]), 0,
                  -3 * v[M] / (98 * w[M - 3])});
      s.Dtilde.rows[M - 2] = literal_row(
          M - 4, {4 * v[M - 4] / (43 * w[M - 2]),
                  -59 * v[M - 3] / (86 * w[M - 2]), 0,
                  59 * v[M - 1] / (86 * w[M - 2]), -4 * v[M] / (43 * w[M - 2])});
      s.Dtilde.rows[M - 1] = literal_row(
          M - 2, {-v[M - 2] / (2 * w[M - 1]), 0, v[M] / (2 * w[M - 1])});
      s.Dtilde.rows[M] = literal_row(
          M - 3, {3 * v[M - 3] / (34 * w[M]), 4 * v[M - 2] / (17 * w[M]),
                  -59 * v[M - 1] / (34 * w[M]), 24 * v[M] / (17 * w[M])});
      break;
  }

  // Norms. On the centred grid the origin point carries half the extended
  // grid's weight in the energy (it is counted once, not twice, when the
  // sum over -M..M is folded to 0..M), and there is no Psi degree of
  // freedom at r = 0.
  s.W.diag = w.head(n);
  s.Wtilde.diag = v.head(n);
  if (centred) {
    s.W.diag[0] = w[0] / 2;
    s.Wtilde.diag[0] = 0;
  }
  if (table.has_u) {
    if (centred) {
      s.Wtilde.off.push_back({1, 2, table.u32});
      s.Wtilde.off.push_back({2, 3, table.u52});
    } else {
      s.Wtilde.off.push_back({0, 1, table.u1});
    }
  }
  switch (variant) {
    case Variant::Evans:
    case Variant::SBP2:
      s.W.diag[M] /= 2;
      s.Wtilde.diag[M] /= 2;
      break;
    case Variant::SBP41:
      s.W.diag[M - 1] *= 13. / 12;
      s.W.diag[M] *= 5. / 12;
      s.Wtilde.diag[M - 1] *= 13. / 12;
      s.Wtilde.diag[M] *= 5. / 12;
      break;
    case Variant::SBP42: {
      const double mult[4] = {49. / 48, 43. / 48, 59. / 48, 17. / 48};
      for (int j = 0; j < 4; ++j) {
        s.W.diag[M - 3 + j] *= mult[j];
        s.Wtilde.diag[M - 3 + j] *= mult[j];
      }
      break;
    }
  }

  s.b_entry = v[M];
  s.chi = table.vbar[M];
  return s;
}

double verify_sbp(const SbpScheme& s) {
  const Eigen::MatrixXd a = s.W.dense() * s.Dtilde.dense();
  const Eigen::MatrixXd b = (s.Wtilde.dense() * s.D.dense()).transpose();
  Eigen::MatrixXd res = a + b;
  const int M = s.grid.npoints() - 1;
  res(M, M) -= s.b_entry;
  // The table entries grow like i^p, so an absolute residual would be
  // dominated by roundoff in the largest entries; report the residual
  // relative to the size of the terms that cancel.
  const double scale = std::max(
      {a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), std::abs(s.b_entry)});
  return res.cwiseAbs().maxCoeff() / scale;
}

Eigen::VectorXd truncation_scan_dtilde(
    const SbpScheme& s, const std::function<double(double)>& psi,
    const std::function<double(double)>& dpsi) {
  const int n = s.grid.npoints();
  const double h = s.grid.h();
  Eigen::VectorXd Psi(n), err(n);
  for (int k = 0; k < n; ++k) Psi[k] = psi(s.grid.radius(k));
  const Eigen::VectorXd out = s.Dtilde.apply(Psi) / h;
  for (int k = 0; k < n; ++k) {
    const double r = s.grid.radius(k);
    const double target =
        r == 0 ? (1 + s.grid.p) * dpsi(0) : dpsi(r) + s.grid.p * psi(r) / r;
    err[k] = out[k] - target;
  }
  return err;
}

Eigen::VectorXd truncation_scan_d(const SbpScheme& s,
                                  const std::function<double(double)>& pi,
                                  const std::function<double(double)>& dpi) {
  const int n = s.grid.npoints();
  const double h = s.grid.h();
  Eigen::VectorXd Pi(n), err(n);
  for (int k = 0; k < n; ++k) Pi[k] = pi(s.grid.radius(k));
  const Eigen::VectorXd out = s.D.apply(Pi) / h;
  for (int k = 0; k < n; ++k) err[k] = out[k] - dpi(s.grid.radius(k));
  return err;
}

}  // namespace sbpr
