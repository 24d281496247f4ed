#ifndef SBP_RADIAL_OPERATORS_HPP
#define SBP_RADIAL_OPERATORS_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sbp_radial/grid.hpp"
#include "sbp_radial/weights.hpp"

namespace sbpr {

/// Concrete scheme variants. Evans and SBP2 are second-order interior
/// methods with a first-order boundary closure; SBP41 and SBP42 share the
/// fourth-order SBP4 interior and differ in the boundary closure (first
/// resp. second order accurate there).
enum class Variant { Evans, SBP2, SBP41, SBP42 };

const char* variant_name(Variant v);
Method variant_method(Variant v);
/// Half the interior accuracy order (N = 1 or 2); the interior stencil has
/// width 2N + 1.
int variant_halforder(Variant v);

/// Band matrix stored row-wise: row k holds contiguous coefficients
/// starting at column slot `first`. The h^-1 scale of the difference
/// operators is applied by the caller at evaluation time.
struct BandOperator {
  struct Row {
    int first = 0;
    Eigen::VectorXd coeffs;
  };
  std::vector<Row> rows;
  int cols = 0;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd dense() const;
};

/// Symmetric norm matrix: diagonal plus a few symmetric off-diagonal
/// couplings (the u entries of the SBP4 W-tilde near the origin).
struct NormOperator {
  Eigen::VectorXd diag;
  struct OffDiag {
    int a, b;
    double value;
  };
  std::vector<OffDiag> off;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// x^t N x
  double quad(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd dense() const;
};

/// Fully assembled discretisation of psi-dot = h^-1 D Pi,
/// pi-dot = h^-1 D-tilde Psi, with the norms of the discrete energy
/// E-hat = (1/2) h^(p+1) (Pi^t W Pi + Psi^t W-tilde Psi) and the boundary
/// operator B = chi M^p at the (M, M) Pi-Psi slot.
struct SbpScheme {
  GridSpec grid;
  Variant variant;
  WeightTable table;

  BandOperator D, Dtilde;
  NormOperator W, Wtilde;
  double chi = 1.0;      // b_entry / M^p, tends to 1 in the continuum limit
  double b_entry = 0.0;  // B_{M,M} = v_M
};

/// Assemble a scheme from a weight table. Interior and near-origin rows
/// come from the folded ghost-point stencils; the outer boundary rows are
/// the closed-form blocks of the respective method. Throws TableMismatch
/// if the table does not cover (method, p, kind, M), GridTooSmall if the
/// boundary block would overlap the origin rows.
SbpScheme build_scheme(Variant variant, const GridSpec& grid,
                       const WeightTable& table);

/// Max-norm residual of the SBP identity W D-tilde + (W-tilde D)^t - B
/// over all physical-index entries, normalised by the largest entry of the
/// cancelling terms (the weights grow like i^p, so an absolute residual
/// would hide behind roundoff of the largest entries for large p).
double verify_sbp(const SbpScheme& scheme);

/// Pointwise truncation error of h^-1 (D-tilde Psi) against
/// psi' + (p/r) psi for a closed-form regular odd field psi. At r = 0 the
/// target is (1 + p) psi'(0).
Eigen::VectorXd truncation_scan_dtilde(const SbpScheme& scheme,
                                       const std::function<double(double)>& psi,
                                       const std::function<double(double)>& dpsi);

/// Pointwise truncation error of h^-1 (D Pi) against pi' for a
/// closed-form regular even field pi.
Eigen::VectorXd truncation_scan_d(const SbpScheme& scheme,
                                  const std::function<double(double)>& pi,
                                  const std::function<double(double)>& dpi);

}  // namespace sbpr

#endif
