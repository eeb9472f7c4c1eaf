#ifndef FADE_PI_QUADRATURE_HPP
#define FADE_PI_QUADRATURE_HPP

#include "fade/fractional.hpp"

#include <span>
#include <vector>

namespace fade {

/// Product-integration weights for the space-fractional Caputo
/// operators on the uniform grid x_j = j/N.
///
/// Writing D_x^eta u(x_r) as the kernel integral of the m-th classical
/// derivative v = u^(m), the rule interpolates v linearly on each cell
/// [x_{j-1}, x_j] and integrates the kernel factor (x_r - s)^{m-1-eta}
/// exactly.  Collecting coefficients of the nodal values v(x_j) gives
/// one weight row per collocation node:
///
///   D_x^eta u(x_r) ~ nu * sum_{j=0}^{r} w_{j,r} v(x_j),  r = 1..N-1,
///
/// with nu = h^{m-eta} / Gamma(m-eta).  The rows satisfy the moment
/// identity sum_j w_{j,r} = r^{m-eta} / (m-eta), and the rule is exact
/// whenever v is affine.
class PIWeightTable {
public:
  /// Builds all rows for a dispersive (m = 2) or advective (m = 1)
  /// order; temporal orders are rejected.  Requires N >= 2.
  PIWeightTable(const FracOrder& eta, int n);

  int grid_size() const { return n_; }
  const FracOrder& order() const { return eta_; }
  double nu() const { return nu_; }

  /// Row r (1 <= r <= N-1), holding w_{0,r} .. w_{r,r}.
  std::span<const double> row(int r) const;

private:
  FracOrder eta_;
  int n_;
  double nu_;
  std::vector<std::vector<double>> rows_;
};

/// The cell moment c_j^e = ((j-1)^e - j^e) / e for j >= 1, e > 0,
/// evaluated through expm1/log1p to avoid cancellation at large j.
/// Always negative.
double pi_cell_moment(int j, double e);

/// Applies row r of the table to nodal samples of the m-th derivative,
/// v(x_0) .. v(x_r) (the span may be longer): returns
/// nu * sum_j w_{j,r} values[j], an approximation of D_x^eta u(x_r).
double apply_pi(const PIWeightTable& table, std::span<const double> values,
                int r);

} // namespace fade

#endif
