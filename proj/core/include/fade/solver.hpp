#ifndef FADE_SOLVER_HPP
#define FADE_SOLVER_HPP

#include "fade/bernstein.hpp"
#include "fade/fractional.hpp"
#include "fade/pi_quadrature.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace fade {

/// The initial-boundary value problem on [0,1] x [0,T]:
///
///   D_t^alpha u = kappa1 D_x^beta u - kappa2 D_x^gamma u + h(x,t),
///   u(x,0) = g(x),  u(0,t) = u(1,t) = 0,
///
/// with Caputo derivatives of orders alpha in (0,1), beta in (1,2),
/// gamma in (0,1) and positive coefficients.
struct ProblemSpec {
  FracOrder alpha = FracOrder::temporal(0.5);
  FracOrder beta = FracOrder::dispersive(1.5);
  FracOrder gamma = FracOrder::advective(0.5);
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double horizon = 0.0; ///< final time T
  std::function<double(double)> initial;          ///< g(x)
  std::function<double(double, double)> forcing;  ///< h(x, t)

  /// Throws std::invalid_argument on wrong order roles, negative or
  /// non-finite kappa1/kappa2, non-positive T, missing callables, or g
  /// violating the homogeneous boundary values.
  void validate() const;
};

/// Uniform discretisation: x_j = j h (h = 1/N, j = 0..N) in space and
/// t_k = k tau (tau = T/M, k = 0..M) in time.
struct Grid {
  int n = 0; ///< number of space cells, N >= 2
  int m = 0; ///< number of time steps, M >= 1

  double h() const { return 1.0 / n; }
  double tau(double horizon) const { return horizon / m; }

  void validate() const;
};

/// Time-independent pieces of the collocation system, assembled once
/// and reused for every step: the trial-space value and derivative
/// matrices at the grid nodes, the PI weight tables, and the factored
/// system matrix
///
///   A = mu B - kappa1 W_beta D2 + kappa2 W_gamma D1 .
///
/// B is (N-1)x(N-1) at the interior nodes; D1, D2 are Nx(N-1) at
/// x_0..x_{N-1}; W_beta, W_gamma are (N-1)xN and carry the nu scaling.
struct SystemMatrices {
  Grid grid;
  double mu = 0.0;
  Eigen::MatrixXd collocation;   ///< B
  Eigen::MatrixXd deriv1;        ///< D1
  Eigen::MatrixXd deriv2;        ///< D2
  Eigen::MatrixXd weight_beta;   ///< nu_beta-scaled W rows
  Eigen::MatrixXd weight_gamma;  ///< nu_gamma-scaled W rows
  Eigen::MatrixXd system;        ///< A
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

/// Assembles and factors the system.  Throws std::runtime_error when a
/// pivot of the LU factorisation falls below 1e-12 in magnitude or the
/// assembled matrix is not finite, identifying the parameter set.
SystemMatrices assemble(const ProblemSpec& spec, const Grid& grid);

/// Independent entrywise evaluation of A for cross-checking the matrix
/// assembly: each entry is formed directly from basis values, the
/// derivative coefficient tables, and the PI weight rows.
Eigen::MatrixXd assemble_entrywise(const ProblemSpec& spec, const Grid& grid);

/// Interior nodal values u(x_1..x_{N-1}, t_k) for k = 0..M and the
/// trial-space coefficient vectors for k = 1..M.
struct SolutionHistory {
  Grid grid;
  std::vector<Eigen::VectorXd> node_values; ///< size M+1, each N-1
  std::vector<Eigen::VectorXd> coefficients; ///< size M, each N-1
};

/// Right-hand side for the step to t_{k+1}, built from the L1 history
/// sum and the forcing at the interior nodes:
///
///   f_r = mu ( u_k(x_r) - sum_{j<k} a_{k,j} (u_{j+1}(x_r) - u_j(x_r)) )
///         + h(x_r, t_{k+1}).
Eigen::VectorXd rhs(const ProblemSpec& spec, const SystemMatrices& matrices,
                    const L1Weights& weights, const SolutionHistory& history);

/// Solves A c = f through the stored factorisation and verifies the
/// residual: |A c - f|_inf <= 1e-10 |f|_inf (zero rhs must produce a
/// zero residual).  Throws std::runtime_error otherwise.
Eigen::VectorXd step(const SystemMatrices& matrices, const Eigen::VectorXd& f);

/// Marches the scheme from u(.,0) = g to t = T and returns the full
/// history.
SolutionHistory solve(const ProblemSpec& spec, const Grid& grid);

/// Discrete error norms against a reference solution at t = T over the
/// interior nodes:
///
///   E2   = sqrt( h sum_r e_r^2 ),   Einf = max_r |e_r|.
struct ErrorNorms {
  double e2 = 0.0;
  double einf = 0.0;
};

ErrorNorms error_norms(const SolutionHistory& history,
                       const std::function<double(double, double)>& exact,
                       double horizon);

} // namespace fade

#endif
