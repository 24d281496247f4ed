#include "sbp_radial/weights.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sbp_radial/detail/stencil.hpp"
#include "delta_internal.hpp"

namespace sbpr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ipow(double base, int e) { return std::pow(base, e); }

double binomial(int n, int k) {
  double r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// Evans wbar_i = [(i+1)^{p+1} - (i-1)^{p+1}] / (2(p+1) i^p) expanded
// binomially; the expanded form has no cancellation at large i.
double evans_wbar(int p, double i) {
  double s = 0;
  for (int k = 1; k <= p + 1; k += 2) s += binomial(p + 1, k) * ipow(i, 1 - k);
  return s / (p + 1);
}

}  // namespace

namespace detail {

// Defined here and in the bar form so that a table reconstructed from its
// file representation reproduces w and v bit for bit. The centred origin
// slot stores the unscaled values.
void bars_to_values(WeightTable& t) {
  const int n = t.npoints();
  t.w.resize(n);
  t.v.resize(n);
  for (int k = 0; k < n; ++k) {
    const double i = t.index(k);
    if (t.kind == GridKind::centred && k == 0) {
      t.w[0] = t.wbar[0];
      t.v[0] = t.vbar[0];
    } else {
      t.w[k] = t.wbar[k] * ipow(i, t.p);
      t.v[k] = t.vbar[k] * ipow(i, t.p);
    }
  }
  t.chi = t.vbar[n - 1];
}

void check_definiteness(WeightTable& t) {
  const int n = t.npoints();
  const int k_start = t.kind == GridKind::centred ? 1 : 0;
  bool pd = true;
  int k_diag = k_start;
  if (t.has_u) {
    // Leading minors of the W-tilde corner block that carries the u
    // couplings; beyond it the matrix is diagonal.
    if (t.kind == GridKind::staggered) {
      pd = t.v[0] > 0 && t.v[0] * t.v[1] - t.u1 * t.u1 > 0;
      k_diag = 2;
    } else {
      const double m2 = t.v[1] * t.v[2] - t.u32 * t.u32;
      const double m3 = t.v[1] * (t.v[2] * t.v[3] - t.u52 * t.u52) -
                        t.u32 * t.u32 * t.v[3];
      pd = t.v[1] > 0 && m2 > 0 && m3 > 0;
      k_diag = 4;
    }
  }
  for (int k = k_diag; k < n && pd; ++k)
    if (t.v[k] <= 0) pd = false;
  for (int k = k_start; k < n && pd; ++k)
    if (t.w[k] <= 0) pd = false;
  t.indefinite = !pd;
}

}  // namespace detail

namespace {

using detail::bars_to_values;

// Exact centred SBP2 sequence and the coefficients a_m of its polynomial
// mode wbar(i) = sum_m a_m i^{-2m}, solved from a rational Vandermonde
// system. The polynomial is exact for i > 0 on the centred grid.
const std::vector<double>& sbp2_poly(int p) {
  static std::map<int, std::vector<double>> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;

  const int K = p / 2;
  const int imax = 12 + K + 2;
  std::vector<mpq_class> w(imax + 1);
  mpq_class w0 = 1;
  for (int j = 2; j <= p; ++j) w0 *= j;
  w0 /= (1 << p);
  w[0] = w0;
  w[1] = (p + 1) * w0;
  for (int i = 1; i < imax; ++i)
    w[i + 1] = (2 * (p + 1) * w[i] + (i - 1) * w[i - 1]) / (i + 1);

  auto wbar = [&](int i) {
    mpq_class ip = 1;
    for (int j = 0; j < p; ++j) ip *= i;
    return mpq_class(w[i] / ip);
  };

  // Vandermonde in x = 1/i^2 at nodes i = 5..5+K; Gaussian elimination.
  const int n = K + 1;
  std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n + 1));
  for (int t = 0; t < n; ++t) {
    const int i = 5 + t;
    mpq_class x = mpq_class(1, i * i), pw = 1;
    for (int m = 0; m < n; ++m) {
      A[t][m] = pw;
      pw *= x;
    }
    A[t][n] = wbar(i);
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (A[piv][c] == 0) ++piv;
    std::swap(A[c], A[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      mpq_class f = A[r][c] / A[c][c];
      for (int m = c; m <= n; ++m) A[r][m] -= f * A[c][m];
    }
  }
  std::vector<mpq_class> a(n);
  for (int m = 0; m < n; ++m) a[m] = A[m][n] / A[m][m];

  // The mode must reproduce the sequence away from the sample nodes and be
  // asymptotically 1.
  if (a[0] != 1) throw Error("sbp2 polynomial mode is not normalised");
  for (int i : {11 + K, 12 + K}) {
    mpq_class x = mpq_class(1, i * i), pw = 1, s = 0;
    for (int m = 0; m < n; ++m) {
      s += a[m] * pw;
      pw *= x;
    }
    if (s != wbar(i)) throw Error("sbp2 polynomial mode check failed");
  }

  std::vector<double> ad(n);
  for (int m = 0; m < n; ++m) ad[m] = a[m].get_d();
  return cache.emplace(p, std::move(ad)).first->second;
}

double eval_inv_sq_poly(const std::vector<double>& a, double i) {
  const double x = 1.0 / (i * i);
  double s = 0;
  for (int m = int(a.size()) - 1; m >= 0; --m) s = s * x + a[m];
  return s;
}

void validate_common(int p, int i_star) {
  if (p < 1) throw Error("p must be >= 1, got " + std::to_string(p));
  if (i_star < 8)
    throw GridTooSmall("weight table needs i_star >= 8, got " +
                       std::to_string(i_star));
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::Evans: return "evans";
    case Method::SBP2: return "sbp2";
    case Method::SBP4: return "sbp4";
  }
  return "?";
}

std::array<double, 3> delta_limits(Method method, int p) {
  const double dp = p;
  switch (method) {
    case Method::Evans:
      // Exact expansion of i^3 c_0 - p i^2 with v = i^p and
      // w = [(i+1)^{p+1} - (i-1)^{p+1}] / (2(p+1)): the i^{-2} terms of
      // numerator and denominator give C(p,3) - p C(p+1,3)/(p+1).
      return {dp * (1 - dp) / 3, dp / 2, 0.0};
    case Method::SBP2:
      return {dp * (1 - dp) / 2, dp / 2, 0.0};
    case Method::SBP4:
      return {-dp * (dp - 1) * (dp - 1), dp * (dp - 1) / 3, -dp / 6};
  }
  return {0, 0, 0};
}

namespace detail {

DeltaProfile delta_from_values(Method method, GridKind kind, int p,
                               const std::vector<double>& v_ext,
                               const std::vector<double>& w, int n_out,
                               double u1, double u32, double u52) {
  const int N = method == Method::SBP4 ? 2 : 1;
  DeltaProfile d;
  d.has_delta2 = N == 2;
  d.delta0.setConstant(n_out, kNaN);
  d.delta1.setConstant(n_out, kNaN);
  if (N == 2) d.delta2.setConstant(n_out, kNaN);

  auto vfn = [&](int j2) -> double {
    return v_ext[kind == GridKind::centred ? j2 / 2 : (j2 - 1) / 2];
  };
  const int k_start = kind == GridKind::centred ? 1 : 0;
  for (int k = k_start; k < n_out; ++k) {
    if (k + N >= int(v_ext.size())) break;
    const int twice_i = kind == GridKind::centred ? 2 * k : 2 * k + 1;
    detail::SparseRow<double> row;
    if (N == 1) {
      // Keep the origin column: the accuracy conditions are stated for
      // the extended rows, where Psi_0 carries coefficient -v_0.
      row = detail::folded_dtilde_row<double>(
          1, twice_i, detail::diag_tilde<double>(vfn, true));
    } else {
      row = detail::folded_dtilde_row<double>(
          2, twice_i, detail::sbp4_tilde<double>(kind, vfn, u1, u32, u52));
    }
    const double i = 0.5 * twice_i;
    const double denom = detail::stencil_denom(N) * w[k];
    const double c0 = detail::row_moment(row, twice_i, 0) / denom;
    if (N == 1) {
      const double c2 = detail::row_moment(row, twice_i, 2) / (2 * denom);
      d.delta0[k] = i * i * (i * c0 - p);
      d.delta1[k] = i * c2;
    } else {
      const double c3 = detail::row_moment(row, twice_i, 3) / (6 * denom);
      const double c4 = detail::row_moment(row, twice_i, 4) / (24 * denom);
      d.delta0[k] = i * i * i * i * (i * c0 - p);
      d.delta1[k] = -i * i * c3;
      d.delta2[k] = i * c4;
    }
  }
  d.bounded = delta_bounded(d);
  return d;
}

bool delta_bounded(const DeltaProfile& d) {
  auto seg_max = [](const Eigen::VectorXd& x, int lo, int hi) {
    double m = 0;
    for (int k = lo; k < hi; ++k)
      if (std::isfinite(x[k])) m = std::max(m, std::abs(x[k]));
    return m;
  };
  auto grows = [&](const Eigen::VectorXd& x) {
    const int n = int(x.size());
    if (n < 40) return false;
    const double tail = seg_max(x, n - n / 20 - 1, n);
    const double mid = seg_max(x, 9 * n / 20, 11 * n / 20);
    return tail > 1.5 * mid + 1.0;
  };
  if (grows(d.delta0) || grows(d.delta1)) return false;
  if (d.has_delta2 && grows(d.delta2)) return false;
  return true;
}

}  // namespace detail

WeightTable evans_weights(int p, GridKind kind, int i_star) {
  validate_common(p, i_star);
  if (kind == GridKind::centred && p % 2 == 1)
    throw OddPOnCentredGrid(
        "Evans weights have w_0 = 0 for odd p on a centred grid (p = " +
        std::to_string(p) + ")");
  WeightTable t;
  t.method = Method::Evans;
  t.p = p;
  t.kind = kind;
  t.i_star = i_star;
  const int n = t.npoints();
  t.wbar.resize(n);
  t.vbar.resize(n);
  std::vector<double> v_ext(n + 1);
  std::vector<double> w_val(n);
  for (int k = 0; k < n; ++k) {
    const double i = t.index(k);
    if (t.kind == GridKind::centred && k == 0) {
      t.wbar[0] = 1.0 / (p + 1);  // (1 - (-1)^{p+1}) / (2(p+1)), p even
      t.vbar[0] = 0;
    } else {
      t.wbar[k] = evans_wbar(p, i);
      t.vbar[k] = 1.0;
    }
  }
  bars_to_values(t);
  for (int k = 0; k < n; ++k) {
    v_ext[k] = t.v[k];
    w_val[k] = t.w[k];
  }
  v_ext[n] = ipow(t.index(n - 1) + 1, p);
  t.delta = detail::delta_from_values(Method::Evans, kind, p, v_ext, w_val, n);
  return t;
}

WeightTable sbp2_weights(int p, GridKind kind, int i_star) {
  validate_common(p, i_star);
  WeightTable t;
  t.method = Method::SBP2;
  t.p = p;
  t.kind = kind;
  t.i_star = i_star;
  const int n = t.npoints();

  // March the three-term recurrence (i+1)w_{i+1} - (i-1)w_{i-1} = 2(p+1)w_i
  // one slot past the table; both characteristic modes have modulus <= 1,
  // so plain double arithmetic is adequate.
  std::vector<double> w(n + 1);
  if (kind == GridKind::centred) {
    double w0 = 1;
    for (int j = 2; j <= p; ++j) w0 *= j;
    w0 /= ipow(2, p);
    w[0] = w0;
    w[1] = (p + 1) * w0;
    for (int i = 1; i + 1 <= n; ++i)
      w[i + 1] = (2 * (p + 1) * w[i] + (i - 1) * w[i - 1]) / (i + 1);
  } else {
    double dfac = 1;  // (p+1)!!
    for (int j = p + 1; j > 0; j -= 2) dfac *= j;
    double wbar_half = dfac * dfac / (p + 1);
    if (p % 2 == 1) wbar_half *= 2 / M_PI;
    w[0] = wbar_half * ipow(0.5, p);
    // Ghost seed w_{-1/2} = w_{1/2}.
    w[1] = (2 * (p + 1) * w[0] - 0.5 * w[0]) / 1.5;
    for (int k = 1; k + 1 <= n; ++k) {
      const double i = k + 0.5;
      w[k + 1] = (2 * (p + 1) * w[k] + (i - 1) * w[k - 1]) / (i + 1);
    }
  }

  t.wbar.resize(n);
  t.vbar.resize(n);
  for (int k = 0; k < n; ++k) {
    const double i = t.index(k);
    if (kind == GridKind::centred && k == 0) {
      // Origin slot stores the unscaled value; v = w holds for the
      // extended rows (the assembled operators never use v_0).
      t.wbar[0] = w[0];
      t.vbar[0] = w[0];
    } else {
      t.wbar[k] = w[k] / ipow(i, p);
      t.vbar[k] = t.wbar[k];
    }
  }
  bars_to_values(t);
  std::vector<double> v_ext(n + 1), w_val(n);
  for (int k = 0; k < n; ++k) {
    v_ext[k] = t.v[k];
    w_val[k] = t.w[k];
  }
  v_ext[n] = w[n];
  t.delta = detail::delta_from_values(Method::SBP2, kind, p, v_ext, w_val, n);
  return t;
}

WeightTable make_weights(Method method, int p, GridKind kind, int i_star) {
  switch (method) {
    case Method::Evans: return evans_weights(p, kind, i_star);
    case Method::SBP2: return sbp2_weights(p, kind, i_star);
    case Method::SBP4: return sbp4_weights(p, kind, i_star);
  }
  throw Error("unknown method");
}

DeltaProfile delta_profile(const WeightTable& t) {
  if (t.delta) return *t.delta;
  // Table loaded from a file without its delta companion: recompute from
  // the stored values. The top N rows cannot be closed and stay NaN, and
  // for SBP4 the double-precision formulas lose accuracy at large i.
  const int n = t.npoints();
  std::vector<double> v_ext(n), w_val(n);
  for (int k = 0; k < n; ++k) {
    v_ext[k] = t.v[k];
    w_val[k] = t.w[k];
  }
  return detail::delta_from_values(t.method, t.kind, t.p, v_ext, w_val, n,
                                   t.u1, t.u32, t.u52);
}

int tail_threshold(Method method, int p) {
  if (method == Method::SBP4) return p <= 10 ? 1000 : 2000;
  return 1;
}

std::pair<double, double> tail_eval(Method method, int p, double i) {
  if (i < tail_threshold(method, p) && !(method != Method::SBP4 && i > 0))
    throw BelowTailThreshold("tail series not certified at i = " +
                             std::to_string(i) + " (threshold " +
                             std::to_string(tail_threshold(method, p)) + ")");
  switch (method) {
    case Method::Evans:
      return {1.0, evans_wbar(p, i)};
    case Method::SBP2: {
      const double wb = eval_inv_sq_poly(sbp2_poly(p), i);
      return {wb, wb};
    }
    case Method::SBP4: {
      const double dp = p;
      const double P4 =
          (2 * dp - 1) * (dp - 1) * dp * (dp + 1) * (dp + 3) / 60;
      const double P6 = (2 * dp - 3) * (dp - 3) * (dp - 2) * (dp - 1) * dp *
                        (dp + 1) * (dp + 3) / 504;
      const double Q4 = (dp - 3) * P4 / (dp + 1) -
                        dp * (dp - 1) * (dp - 2) * (dp - 3) / 30;
      const double Q6 = (dp - 5) * P6 / (dp + 1) -
                        dp * (dp - 1) * (dp - 2) * (dp - 3) * (dp - 4) *
                            (dp - 5) / 252;
      const double i4 = i * i * i * i, i6 = i4 * i * i;
      return {1 + P4 / i4 + P6 / i6, 1 + Q4 / i4 + Q6 / i6};
    }
  }
  throw Error("unknown method");
}

}  // namespace sbpr
