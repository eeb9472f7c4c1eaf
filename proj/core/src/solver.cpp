#include "fade/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fade {

namespace {

void require(bool ok, const char* what) {
  if (!ok) {
    throw std::invalid_argument(what);
  }
}

std::string describe(const ProblemSpec& spec, const Grid& grid) {
  std::ostringstream os;
  os << "alpha=" << spec.alpha.value() << " beta=" << spec.beta.value()
     << " gamma=" << spec.gamma.value() << " kappa1=" << spec.kappa1
     << " kappa2=" << spec.kappa2 << " T=" << spec.horizon << " N=" << grid.n
     << " M=" << grid.m;
  return os.str();
}

std::vector<double> interior_nodes(const Grid& grid) {
  std::vector<double> x(static_cast<std::size_t>(grid.n) - 1);
  for (int r = 1; r < grid.n; ++r) {
    x[static_cast<std::size_t>(r) - 1] = r * grid.h();
  }
  return x;
}

std::vector<double> lower_nodes(const Grid& grid) {
  std::vector<double> x(static_cast<std::size_t>(grid.n));
  for (int j = 0; j < grid.n; ++j) {
    x[static_cast<std::size_t>(j)] = j * grid.h();
  }
  return x;
}

Eigen::MatrixXd weight_matrix(const PIWeightTable& table, const Grid& grid) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(grid.n - 1, grid.n);
  for (int r = 1; r < grid.n; ++r) {
    const std::span<const double> row = table.row(r);
    for (int j = 0; j <= r; ++j) {
      w(r - 1, j) = table.nu() * row[static_cast<std::size_t>(j)];
    }
  }
  return w;
}

} // namespace

void ProblemSpec::validate() const {
  require(alpha.kind() == OrderKind::temporal, "alpha must be a temporal order");
  require(beta.kind() == OrderKind::dispersive, "beta must be a dispersive order");
  require(gamma.kind() == OrderKind::advective, "gamma must be an advective order");
  require(std::isfinite(kappa1) && kappa1 >= 0.0,
          "kappa1 must be finite and non-negative");
  require(std::isfinite(kappa2) && kappa2 >= 0.0,
          "kappa2 must be finite and non-negative");
  require(std::isfinite(horizon) && horizon > 0.0, "horizon T must be positive");
  require(static_cast<bool>(initial), "initial condition g is not set");
  require(static_cast<bool>(forcing), "forcing h is not set");
  require(std::abs(initial(0.0)) <= 1e-12 && std::abs(initial(1.0)) <= 1e-12,
          "initial condition must vanish on the boundary");
}

void Grid::validate() const {
  require(n >= 2, "grid needs N >= 2 space cells");
  require(m >= 1, "grid needs M >= 1 time steps");
}

SystemMatrices assemble(const ProblemSpec& spec, const Grid& grid) {
  spec.validate();
  grid.validate();

  SystemMatrices s;
  s.grid = grid;
  s.mu = l1_scale(spec.alpha, grid.tau(spec.horizon));

  const std::vector<double> xi = interior_nodes(grid);
  const std::vector<double> xj = lower_nodes(grid);

  s.collocation = bernstein_collocation_matrix(grid.n, xi);
  const BernsteinDerivCoeffs coeffs = bernstein_deriv_coeffs(grid.n);
  BernsteinDerivMatrices d = bernstein_derivative_matrices(grid.n, xj, coeffs);
  s.deriv1 = std::move(d.d1);
  s.deriv2 = std::move(d.d2);

  const PIWeightTable wbeta(spec.beta, grid.n);
  const PIWeightTable wgamma(spec.gamma, grid.n);
  s.weight_beta = weight_matrix(wbeta, grid);
  s.weight_gamma = weight_matrix(wgamma, grid);

  s.system = s.mu * s.collocation - spec.kappa1 * s.weight_beta * s.deriv2 +
             spec.kappa2 * s.weight_gamma * s.deriv1;

  if (!s.system.allFinite()) {
    throw std::runtime_error("system matrix is not finite for " +
                             describe(spec, grid));
  }

  s.lu.compute(s.system);
  const double min_pivot = s.lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-12)) {
    std::ostringstream os;
    os << "system matrix is numerically singular (|pivot| = " << min_pivot
       << ") for " << describe(spec, grid);
    throw std::runtime_error(os.str());
  }
  return s;
}

Eigen::MatrixXd assemble_entrywise(const ProblemSpec& spec, const Grid& grid) {
  spec.validate();
  grid.validate();

  const int n = grid.n;
  const double mu = l1_scale(spec.alpha, grid.tau(spec.horizon));
  const BernsteinDerivCoeffs coeffs = bernstein_deriv_coeffs(n);
  const PIWeightTable wbeta(spec.beta, n);
  const PIWeightTable wgamma(spec.gamma, n);

  // Basis values at every node x_0..x_N, shared by all entries.
  std::vector<std::vector<double>> basis(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    basis[static_cast<std::size_t>(j)] = bernstein_all(n, j * grid.h());
  }

  const auto deriv_at = [&](int order, int i, int j) {
    const std::vector<double>& bj = basis[static_cast<std::size_t>(j)];
    double v = 0.0;
    if (order == 1) {
      for (int k = -1; k <= 1; ++k) {
        const int idx = i + k;
        if (idx >= 0 && idx <= n) {
          v += coeffs.d1[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(i)] *
               bj[static_cast<std::size_t>(idx)];
        }
      }
    } else {
      for (int k = -2; k <= 2; ++k) {
        const int idx = i + k;
        if (idx >= 0 && idx <= n) {
          v += coeffs.d2[static_cast<std::size_t>(k + 2)][static_cast<std::size_t>(i)] *
               bj[static_cast<std::size_t>(idx)];
        }
      }
    }
    return v;
  };

  Eigen::MatrixXd a(n - 1, n - 1);
  for (int r = 1; r < n; ++r) {
    const std::span<const double> wb = wbeta.row(r);
    const std::span<const double> wg = wgamma.row(r);
    for (int i = 1; i < n; ++i) {
      double disp = 0.0;
      double adv = 0.0;
      for (int j = 0; j <= r; ++j) {
        disp += wb[static_cast<std::size_t>(j)] * deriv_at(2, i, j);
        adv += wg[static_cast<std::size_t>(j)] * deriv_at(1, i, j);
      }
      a(r - 1, i - 1) =
          mu * basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] -
          spec.kappa1 * wbeta.nu() * disp + spec.kappa2 * wgamma.nu() * adv;
    }
  }
  return a;
}

Eigen::VectorXd rhs(const ProblemSpec& spec, const SystemMatrices& matrices,
                    const L1Weights& weights, const SolutionHistory& history) {
  const int k = weights.level;
  if (history.node_values.size() < static_cast<std::size_t>(k) + 1) {
    throw std::invalid_argument("rhs needs the solution history through level k");
  }

  const Grid& grid = matrices.grid;
  const double t_next = (k + 1) * grid.tau(spec.horizon);

  // History sum of the L1 discretisation; the j = k term is split off
  // into mu * u_k so only j < k appears here.
  Eigen::VectorXd hist = Eigen::VectorXd::Zero(grid.n - 1);
  for (int j = 0; j < k; ++j) {
    hist += weights.a[static_cast<std::size_t>(j)] *
            (history.node_values[static_cast<std::size_t>(j) + 1] -
             history.node_values[static_cast<std::size_t>(j)]);
  }

  Eigen::VectorXd f =
      matrices.mu *
      (history.node_values[static_cast<std::size_t>(k)] - hist);
  for (int r = 1; r < grid.n; ++r) {
    f(r - 1) += spec.forcing(r * grid.h(), t_next);
  }
  return f;
}

Eigen::VectorXd step(const SystemMatrices& matrices, const Eigen::VectorXd& f) {
  Eigen::VectorXd c = matrices.lu.solve(f);
  const double fnorm = f.lpNorm<Eigen::Infinity>();
  const double rnorm = (matrices.system * c - f).lpNorm<Eigen::Infinity>();
  const bool ok = fnorm == 0.0 ? rnorm == 0.0 : rnorm <= 1e-10 * fnorm;
  if (!ok) {
    std::ostringstream os;
    os << "collocation solve residual " << rnorm << " exceeds 1e-10 * " << fnorm;
    throw std::runtime_error(os.str());
  }
  return c;
}

SolutionHistory solve(const ProblemSpec& spec, const Grid& grid) {
  const SystemMatrices matrices = assemble(spec, grid);

  SolutionHistory history;
  history.grid = grid;
  history.node_values.reserve(static_cast<std::size_t>(grid.m) + 1);
  history.coefficients.reserve(static_cast<std::size_t>(grid.m));

  Eigen::VectorXd u0(grid.n - 1);
  for (int r = 1; r < grid.n; ++r) {
    u0(r - 1) = spec.initial(r * grid.h());
  }
  history.node_values.push_back(std::move(u0));

  const double tau = grid.tau(spec.horizon);
  for (int k = 0; k < grid.m; ++k) {
    const L1Weights weights = l1_weights(spec.alpha, k, tau);
    const Eigen::VectorXd f = rhs(spec, matrices, weights, history);
    Eigen::VectorXd c = step(matrices, f);
    history.node_values.push_back(matrices.collocation * c);
    history.coefficients.push_back(std::move(c));
  }
  return history;
}

ErrorNorms error_norms(const SolutionHistory& history,
                       const std::function<double(double, double)>& exact,
                       double horizon) {
  const Grid& grid = history.grid;
  const Eigen::VectorXd& u = history.node_values.back();

  ErrorNorms norms;
  double sum = 0.0;
  for (int r = 1; r < grid.n; ++r) {
    const double e = exact(r * grid.h(), horizon) - u(r - 1);
    sum += e * e;
    norms.einf = std::max(norms.einf, std::abs(e));
  }
  norms.e2 = std::sqrt(grid.h() * sum);
  return norms;
}

} // namespace fade
