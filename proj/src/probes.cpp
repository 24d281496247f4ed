#include "sbp_radial/probes.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace sbpr {

Eigen::VectorXd naive_scheme_error(int p, int npoints) {
  Eigen::VectorXd err(npoints);
  for (int i = 1; i <= npoints; ++i) {
    // psi = r in units of h: Psi_j = j; the h^-1 of the operator cancels.
    const double val = (std::pow(i + 1, p) * (i + 1) -
                        std::pow(i - 1, p) * (i - 1)) /
                       (2 * std::pow(i, p));
    err[i - 1] = val - (1 + p);
  }
  return err;
}

namespace {

// sum over the order-2N minimal stencil of d_j (i+j)^q.
double stencil_sum(int N, int i, int q) {
  const std::vector<std::pair<int, double>> d =
      N == 1 ? std::vector<std::pair<int, double>>{{1, 0.5}, {-1, -0.5}}
             : std::vector<std::pair<int, double>>{
                   {1, 8. / 12}, {-1, -8. / 12}, {2, -1. / 12}, {-2, 1. / 12}};
  double acc = 0;
  for (const auto& [j, c] : d) acc += c * std::pow(double(i + j), q);
  return acc;
}

// Error of the generalized Evans operator on psi = b r^3 at index i is
// b h^2 g_N(i) with
//   g_N(i) = (p+1) S_{p+3} / S_{p+1} - (p+3) i^2.
double g_of_i(int N, int p, int i) {
  return (p + 1) * stencil_sum(N, i, p + 3) / stencil_sum(N, i, p + 1) -
         double(p + 3) * i * i;
}

// Richardson extrapolation in 1/i^2 from samples at i and 2i.
double richardson(double at_i, double at_2i) { return (4 * at_2i - at_i) / 3; }

}  // namespace

GeneralizedEvansProbe probe_generalized_evans(int p, double b) {
  GeneralizedEvansProbe out;
  const int i0 = 40;
  out.h2_predicted = b * (p + 3) * (2 * p + 1) / 3.0;
  out.h2_coeff = b * richardson(g_of_i(1, p, i0), g_of_i(1, p, 2 * i0));
  out.h4_r2_predicted = -2.0 * b * (p + 3) * p * (p - 1) * (2 * p - 1) / 15;
  out.h4_r2_coeff =
      b * richardson(g_of_i(2, p, i0) * double(i0) * i0,
                     g_of_i(2, p, 2 * i0) * double(2 * i0) * (2 * i0));
  return out;
}

}  // namespace sbpr
