#include "fade/bernstein.hpp"

#include <stdexcept>

namespace fade {

std::vector<double> bernstein_all(int degree, double x) {
  if (degree < 0) {
    throw std::invalid_argument("bernstein_all requires degree >= 0");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::domain_error("Bernstein basis is evaluated on [0, 1] only");
  }

  std::vector<double> b(static_cast<std::size_t>(degree) + 1, 0.0);
  b[0] = 1.0;
  const double y = 1.0 - x;
  for (int n = 1; n <= degree; ++n) {
    b[static_cast<std::size_t>(n)] = x * b[static_cast<std::size_t>(n) - 1];
    for (int k = n - 1; k >= 1; --k) {
      b[static_cast<std::size_t>(k)] =
          x * b[static_cast<std::size_t>(k) - 1] +
          y * b[static_cast<std::size_t>(k)];
    }
    b[0] = y * b[0];
  }
  return b;
}

double bernstein_basis(int degree, int i, double x) {
  if (i < 0 || i > degree) {
    return 0.0;
  }
  return bernstein_all(degree, x)[static_cast<std::size_t>(i)];
}

BernsteinDerivCoeffs bernstein_deriv_coeffs(int degree) {
  if (degree < 2) {
    throw std::invalid_argument("bernstein_deriv_coeffs requires degree >= 2");
  }
  BernsteinDerivCoeffs c;
  c.degree = degree;
  const double n = degree;
  for (std::vector<double>& v : c.d1) {
    v.resize(static_cast<std::size_t>(degree) + 1);
  }
  for (std::vector<double>& v : c.d2) {
    v.resize(static_cast<std::size_t>(degree) + 1);
  }
  for (int ii = 0; ii <= degree; ++ii) {
    const double i = ii;
    const std::size_t s = static_cast<std::size_t>(ii);
    c.d1[0][s] = n - i + 1.0;
    c.d1[1][s] = -(n - 2.0 * i);
    c.d1[2][s] = -(i + 1.0);

    c.d2[0][s] = (n - i + 2.0) * (n - i + 1.0);
    c.d2[1][s] = -2.0 * (n - i + 1.0) * (n - 2.0 * i + 1.0);
    c.d2[2][s] = n * n - 6.0 * n * i + 6.0 * i * i - n;
    c.d2[3][s] = 2.0 * (i + 1.0) * (n - 2.0 * i - 1.0);
    c.d2[4][s] = (i + 2.0) * (i + 1.0);
  }
  return c;
}

Eigen::MatrixXd bernstein_collocation_matrix(int degree,
                                             std::span<const double> nodes) {
  if (degree < 2) {
    throw std::invalid_argument("collocation matrix requires degree >= 2");
  }
  double prev = 0.0;
  for (double x : nodes) {
    if (!(x > prev) || !(x < 1.0)) {
      throw std::invalid_argument(
          "collocation nodes must be strictly increasing inside (0, 1)");
    }
    prev = x;
  }

  const Eigen::Index rows = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd b(rows, degree - 1);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::vector<double> basis =
        bernstein_all(degree, nodes[static_cast<std::size_t>(r)]);
    for (int i = 1; i < degree; ++i) {
      b(r, i - 1) = basis[static_cast<std::size_t>(i)];
    }
  }
  return b;
}

BernsteinDerivMatrices bernstein_derivative_matrices(
    int degree, std::span<const double> nodes,
    const BernsteinDerivCoeffs& coeffs) {
  if (coeffs.degree != degree) {
    throw std::invalid_argument("derivative coefficients built for a different degree");
  }

  const Eigen::Index rows = static_cast<Eigen::Index>(nodes.size());
  BernsteinDerivMatrices m;
  m.d1 = Eigen::MatrixXd::Zero(rows, degree - 1);
  m.d2 = Eigen::MatrixXd::Zero(rows, degree - 1);

  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::vector<double> basis =
        bernstein_all(degree, nodes[static_cast<std::size_t>(r)]);
    for (int i = 1; i < degree; ++i) {
      const std::size_t s = static_cast<std::size_t>(i);
      double v1 = 0.0;
      for (int k = -1; k <= 1; ++k) {
        const int idx = i + k;
        if (idx >= 0 && idx <= degree) {
          v1 += coeffs.d1[static_cast<std::size_t>(k + 1)][s] *
                basis[static_cast<std::size_t>(idx)];
        }
      }
      double v2 = 0.0;
      for (int k = -2; k <= 2; ++k) {
        const int idx = i + k;
        if (idx >= 0 && idx <= degree) {
          v2 += coeffs.d2[static_cast<std::size_t>(k + 2)][s] *
                basis[static_cast<std::size_t>(idx)];
        }
      }
      m.d1(r, i - 1) = v1;
      m.d2(r, i - 1) = v2;
    }
  }
  return m;
}

double bernstein_eval_series(std::span<const double> coeffs, double x) {
  const int degree = static_cast<int>(coeffs.size()) + 1;
  const std::vector<double> basis = bernstein_all(degree, x);
  double sum = 0.0;
  for (int i = 1; i < degree; ++i) {
    sum += coeffs[static_cast<std::size_t>(i) - 1] *
           basis[static_cast<std::size_t>(i)];
  }
  return sum;
}

} // namespace fade
