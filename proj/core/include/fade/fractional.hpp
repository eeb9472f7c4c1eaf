#ifndef FADE_FRACTIONAL_HPP
#define FADE_FRACTIONAL_HPP

#include <functional>
#include <vector>

namespace fade {

/// Role a fractional order plays in the equation.  The role decides the
/// number of classical derivatives m = ceil(eta) used by every Caputo
/// formula, so it is fixed at construction instead of being recomputed
/// from the floating-point value.
enum class OrderKind { temporal, dispersive, advective };

/// A fractional derivative order together with its role.
///
/// Admissible ranges are open intervals: temporal and advective orders
/// lie in (0,1), dispersive orders in (1,2).  Integer endpoints are
/// rejected because the Caputo kernel degenerates there.
class FracOrder {
public:
  static FracOrder temporal(double value);   ///< alpha in (0,1)
  static FracOrder dispersive(double value); ///< beta in (1,2)
  static FracOrder advective(double value);  ///< gamma in (0,1)

  double value() const { return value_; }
  OrderKind kind() const { return kind_; }

  /// m = ceil(eta), derived from the role: 1 for temporal/advective, 2
  /// for dispersive.
  int derivative_count() const;

private:
  FracOrder(OrderKind kind, double value);

  OrderKind kind_;
  double value_;
};

/// Gamma function for positive real arguments, Lanczos approximation
/// (g = 7, 9 coefficients) with the reflection formula below 0.5.
/// Relative accuracy is ~1e-14 on [0.1, 50].  Throws std::domain_error
/// for x <= 0.
double gamma_real(double x);

/// Coefficients of the L1 discretisation of the Caputo time derivative
/// at time level k (0-based): approximating D_t^alpha u(t_{k+1}) uses
///
///   a_{k,j} = (k+1-j)^{1-alpha} - (k-j)^{1-alpha},  j = 0..k,
///   mu      = 1 / (tau^alpha * Gamma(2-alpha)).
///
/// The weights are positive, strictly increasing in j, end in
/// a_{k,k} = 1, and telescope to sum_j a_{k,j} = (k+1)^{1-alpha}.
struct L1Weights {
  std::vector<double> a; ///< a_{k,0} .. a_{k,k}
  double mu = 0.0;
  int level = 0; ///< the k this row belongs to
};

/// The scale factor mu = 1 / (tau^alpha * Gamma(2-alpha)).
double l1_scale(const FracOrder& alpha, double tau);

/// Weight row for time level k >= 0 and step size tau > 0.
L1Weights l1_weights(const FracOrder& alpha, int k, double tau);

/// Caputo derivative of x^p (integer p >= 0) of order eta at x >= 0:
/// zero when p < ceil(eta), else Gamma(p+1)/Gamma(p+1-eta) * x^(p-eta).
double caputo_monomial(int p, const FracOrder& eta, double x);

/// Caputo time derivative of exp(-t) of order alpha in (0,1):
///
///   D_t^alpha e^{-t} = sum_{k>=1} (-1)^k t^{k-alpha} / Gamma(k+1-alpha),
///
/// evaluated with a term-ratio recurrence.  Terms are added until one
/// falls below 1e-15 of the largest term seen; exceeding 300 terms
/// throws std::runtime_error.
double caputo_exp_decay(const FracOrder& alpha, double t);

/// Caputo derivative of sin(pi x) of order eta (advective, dispersive,
/// or temporal role all admissible) at x in [0,1], via the termwise
/// derivative of the sine series:
///
///   D_x^eta sin(pi x) =
///     sum_{k>=k0} (-1)^k pi^{2k+1} x^{2k+1-eta} / Gamma(2k+2-eta),
///
/// where the series starts at k0 = 0 for m = 1 and k0 = 1 for m = 2
/// (the m = 2 leading term differentiates away).  Same truncation rule
/// as caputo_exp_decay.
double caputo_sin_pi(const FracOrder& eta, double x);

/// Reference Caputo derivative by direct quadrature, used to validate
/// the closed forms above.  `fm` must be the m-th classical derivative
/// of the target function, m = eta.derivative_count().  The integral is
/// evaluated along two independent routes: adaptive Gauss-Kronrod after
/// the substitution u = (x-s)^sigma, sigma = m - eta, which removes the
/// kernel singularity exactly,
///
///   D^eta f(x) = 1/(sigma Gamma(m-eta)) *
///                integral_0^{x^sigma} fm(x - u^{1/sigma}) du,
///
/// and double-exponential quadrature on the original weakly singular
/// form.  Throws std::runtime_error when the two disagree beyond 1e-12
/// (absolute, relative beyond unit magnitude).
double caputo_oracle(const std::function<double(double)>& fm,
                     const FracOrder& eta, double x);

} // namespace fade

#endif
