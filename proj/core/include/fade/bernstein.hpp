#ifndef FADE_BERNSTEIN_HPP
#define FADE_BERNSTEIN_HPP

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

namespace fade {

/// Values of all Bernstein basis polynomials B_{0,N} .. B_{N,N} at
/// x in [0,1], by the de Casteljau-style recurrence (each degree is
/// raised in place from the previous one).  Every intermediate is a
/// convex combination, so the result is non-negative and sums to 1 to
/// machine precision.
std::vector<double> bernstein_all(int degree, double x);

/// B_{i,N}(x); zero for i outside 0..N.
double bernstein_basis(int degree, int i, double x);

/// Coefficients expressing derivatives of B_{i,N} in the same basis:
///
///   B'_{i,N}  = sum_{k=-1..1} d1[k+1][i] B_{i+k,N}
///   B''_{i,N} = sum_{k=-2..2} d2[k+2][i] B_{i+k,N}
///
/// Basis functions with index outside 0..N contribute nothing.  Valid
/// for N >= 2.
struct BernsteinDerivCoeffs {
  int degree = 0;
  /// d1[k+1][i], k = -1..1, i = 0..N
  std::array<std::vector<double>, 3> d1;
  /// d2[k+2][i], k = -2..2, i = 0..N
  std::array<std::vector<double>, 5> d2;
};

BernsteinDerivCoeffs bernstein_deriv_coeffs(int degree);

/// Collocation matrix B of the boundary-respecting trial space
/// span{B_{1,N} .. B_{N-1,N}} at strictly increasing interior nodes:
/// B(r,i) = B_{i+1,N}(nodes[r]).  Shape (#nodes) x (N-1).
Eigen::MatrixXd bernstein_collocation_matrix(int degree,
                                             std::span<const double> nodes);

/// First and second derivative matrices of the same trial space at the
/// given nodes: D1(j,i) = B'_{i+1,N}(nodes[j]), D2 likewise.  Shape
/// (#nodes) x (N-1).
struct BernsteinDerivMatrices {
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;
};

BernsteinDerivMatrices bernstein_derivative_matrices(
    int degree, std::span<const double> nodes,
    const BernsteinDerivCoeffs& coeffs);

/// Evaluates sum_{i=1}^{N-1} coeffs[i-1] B_{i,N}(x); exactly zero at
/// x = 0 and x = 1.
double bernstein_eval_series(std::span<const double> coeffs, double x);

} // namespace fade

#endif
