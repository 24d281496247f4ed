#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "sbp_radial/detail/sbp4_solver.hpp"
#include "sbp_radial/weights.hpp"
#include "delta_internal.hpp"

namespace sbpr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// gmpxx assignment keeps the precision of the *target*, so every mpf_class
// in the matching must be born at working precision; scope the default.
struct DefaultPrecGuard {
  mp_bitcnt_t saved;
  explicit DefaultPrecGuard(mp_bitcnt_t p) : saved(mpf_get_default_prec()) {
    mpf_set_default_prec(p);
  }
  ~DefaultPrecGuard() { mpf_set_default_prec(saved); }
};

mpf_class to_mpf(const mpq_class& q, mp_bitcnt_t prec) {
  mpf_class f(0, prec);
  mpf_set_q(f.get_mpf_t(), q.get_mpq_t());
  return f;
}

mpf_class index_mpf(int twice_i, mp_bitcnt_t prec) {
  mpf_class i(twice_i, prec);
  i /= 2;
  return i;
}

mpf_class pow_mpf(const mpf_class& base, int e) {
  mpf_class r(1, base.get_prec());
  for (int j = 0; j < e; ++j) r *= base;
  return r;
}

// vbar tail of the asymptotically constant mode, through i^-6.
mpf_class vbar_tail(int p, const mpf_class& i) {
  const mpq_class P4 =
      mpq_class((2 * p - 1) * (p - 1) * p) * (p + 1) * (p + 3) / 60;
  const mpq_class P6 = mpq_class((2 * p - 3) * (p - 3) * (p - 2)) * (p - 1) *
                       p * (p + 1) * (p + 3) / 504;
  const mp_bitcnt_t prec = i.get_prec();
  mpf_class r(1, prec);
  r += to_mpf(P4, prec) / pow_mpf(i, 4);
  r += to_mpf(P6, prec) / pow_mpf(i, 6);
  return r;
}

}  // namespace

WeightTable sbp4_weights(int p, GridKind kind, int i_star,
                         const Sbp4Options& opts) {
  if (p < 1) throw Error("p must be >= 1, got " + std::to_string(p));
  if (p > 22)
    throw PrecisionExhausted("SBP4 tail series is not validated for p > 22");
  const int need = p <= 10 ? 1000 : 2000;
  if (i_star < need)
    throw PrecisionExhausted("SBP4 matching needs i_star >= " +
                             std::to_string(need) + " for p = " +
                             std::to_string(p) + ", got " +
                             std::to_string(i_star));

  WeightTable t;
  t.method = Method::SBP4;
  t.p = p;
  t.kind = kind;
  t.i_star = i_star;
  t.has_u = true;
  const int n = t.npoints();
  // Two extra slots so every tabulated row (and the top delta rows) can be
  // closed.
  const int nslots = n + 2;

  // Three exact forward solutions with unit seeds in the free parameters.
  std::array<detail::Sbp4Run<mpq_class>, 3> basis;
  for (int r = 0; r < 3; ++r)
    basis[r] = detail::sbp4_run<mpq_class>(p, kind, nslots, mpq_class(r == 0),
                                           mpq_class(r == 1), mpq_class(r == 2));

  // The growing characteristic mode is (4 + sqrt(15))^i ~ 2^{2.98 i}; the
  // matching must resolve components that many orders of magnitude apart.
  int k_top = nslots - 1;
  if (opts.match_at > 0) {
    k_top = kind == GridKind::centred ? opts.match_at : opts.match_at - 1;
    k_top = std::min(std::max(k_top, 8), nslots - 1);
  }
  // All three basis solutions are dominated by the growing characteristic
  // mode (4+sqrt(15))^i, so the matching determinant sits below the matrix
  // scale by the growing-to-constant spread (~2.98 bits per index) plus the
  // growing-to-decaying spread (~5.95 bits per index); budget for both.
  const mp_bitcnt_t prec = mp_bitcnt_t(9 * k_top + 2048);
  DefaultPrecGuard prec_guard(prec);

  // Fix the free parameters by matching vbar against the tail series at
  // the three largest indices: solve sum_r alpha_r vbar_r(i_m) = tail(i_m).
  mpf_class B[3][3], rhs[3], scale[3];
  for (int r = 0; r < 3; ++r) {
    const int twice_top = kind == GridKind::centred ? 2 * k_top : 2 * k_top + 1;
    scale[r] = to_mpf(basis[r].v[k_top], prec) /
               pow_mpf(index_mpf(twice_top, prec), p);
    if (scale[r] == 0)
      throw PrecisionExhausted("degenerate SBP4 basis solution");
  }
  for (int m = 0; m < 3; ++m) {
    const int km = k_top - 2 + m;
    const int twice_i = kind == GridKind::centred ? 2 * km : 2 * km + 1;
    const mpf_class im = index_mpf(twice_i, prec);
    const mpf_class ipw = pow_mpf(im, p);
    for (int r = 0; r < 3; ++r)
      B[m][r] = to_mpf(basis[r].v[km], prec) / ipw / scale[r];
    rhs[m] = vbar_tail(p, im);
  }
  auto det3 = [](mpf_class a[3][3]) -> mpf_class {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const mpf_class det = det3(B);
  if (det == 0) throw PrecisionExhausted("singular SBP4 matching system");
  mpf_class alpha[3];
  for (int r = 0; r < 3; ++r) {
    mpf_class Br[3][3];
    for (int m = 0; m < 3; ++m)
      for (int c = 0; c < 3; ++c) Br[m][c] = c == r ? rhs[m] : B[m][c];
    alpha[r] = det3(Br) / det / scale[r];
  }

  // Combine the basis runs.
  std::vector<mpf_class> v_f(nslots), w_f(nslots - 2);
  for (int k = 0; k < nslots; ++k) {
    mpf_class acc(0, prec);
    for (int r = 0; r < 3; ++r) acc += alpha[r] * to_mpf(basis[r].v[k], prec);
    v_f[k] = acc;
    if (k < nslots - 2) {
      mpf_class accw(0, prec);
      for (int r = 0; r < 3; ++r)
        accw += alpha[r] * to_mpf(basis[r].w[k], prec);
      w_f[k] = accw;
    }
  }
  mpf_class u1_f(0, prec), u32_f(0, prec), u52_f(0, prec);
  for (int r = 0; r < 3; ++r) {
    u1_f += alpha[r] * to_mpf(basis[r].u1, prec);
    u32_f += alpha[r] * to_mpf(basis[r].u32, prec);
    u52_f += alpha[r] * to_mpf(basis[r].u52, prec);
  }

  // Consistency probe at an index not used in the matching: the combined
  // solution must still sit on the tail series there.
  {
    const int kc = k_top - 4;
    const int twice_i = kind == GridKind::centred ? 2 * kc : 2 * kc + 1;
    const mpf_class ic = index_mpf(twice_i, prec);
    mpf_class resid = v_f[kc] / pow_mpf(ic, p) - vbar_tail(p, ic);
    if (abs(resid) > 1e-9)
      throw PrecisionExhausted(
          "SBP4 matching residual too large; recurrence and tail disagree");
  }

  // Tabulate. The centred origin slot stores the unscaled w_0; there is no
  // Psi point at the origin, so v_0 = 0 by convention.
  t.wbar.resize(n);
  t.vbar.resize(n);
  const int k_start = kind == GridKind::centred ? 1 : 0;
  for (int k = 0; k < n; ++k) {
    if (k < k_start) {
      t.wbar[0] = w_f[0].get_d();
      t.vbar[0] = 0;
      continue;
    }
    const int twice_i = kind == GridKind::centred ? 2 * k : 2 * k + 1;
    const mpf_class ipw = pow_mpf(index_mpf(twice_i, prec), p);
    t.wbar[k] = mpf_class(w_f[k] / ipw).get_d();
    t.vbar[k] = mpf_class(v_f[k] / ipw).get_d();
  }
  t.u1 = u1_f.get_d();
  t.u32 = u32_f.get_d();
  t.u52 = u52_f.get_d();
  detail::bars_to_values(t);

  detail::check_definiteness(t);

  // Delta sequences, evaluated in the working precision: the double
  // formulas lose ~4 digits per decade of i to cancellation.
  DeltaProfile d;
  d.has_delta2 = true;
  d.delta0.setConstant(n, kNaN);
  d.delta1.setConstant(n, kNaN);
  d.delta2.setConstant(n, kNaN);
  auto vfn = [&](int j2) -> mpf_class {
    return v_f[kind == GridKind::centred ? j2 / 2 : (j2 - 1) / 2];
  };
  auto tilde = detail::sbp4_tilde<mpf_class>(kind, vfn, u1_f, u32_f, u52_f);
  for (int k = k_start; k < n; ++k) {
    const int twice_i = kind == GridKind::centred ? 2 * k : 2 * k + 1;
    auto row = detail::folded_dtilde_row<mpf_class>(2, twice_i, tilde);
    const mpf_class i = index_mpf(twice_i, prec);
    const mpf_class denom = 12 * w_f[k];
    const mpf_class c0 = detail::row_moment(row, twice_i, 0) / denom;
    const mpf_class c3 = detail::row_moment(row, twice_i, 3) / (6 * denom);
    const mpf_class c4 = detail::row_moment(row, twice_i, 4) / (24 * denom);
    d.delta0[k] = mpf_class(pow_mpf(i, 4) * (i * c0 - p)).get_d();
    d.delta1[k] = mpf_class(-pow_mpf(i, 2) * c3).get_d();
    d.delta2[k] = mpf_class(i * c4).get_d();
  }
  d.bounded = detail::delta_bounded(d);
  t.delta = d;
  return t;
}

}  // namespace sbpr
