#include "fade/pi_quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fade {

double pi_cell_moment(int j, double e) {
  if (j < 1) {
    throw std::invalid_argument("pi_cell_moment requires j >= 1");
  }
  if (j == 1) {
    return -1.0 / e;
  }
  // ((j-1)^e - j^e)/e = j^e * expm1(e * log1p(-1/j)) / e
  const double jd = static_cast<double>(j);
  return std::pow(jd, e) * std::expm1(e * std::log1p(-1.0 / jd)) / e;
}

PIWeightTable::PIWeightTable(const FracOrder& eta, int n) : eta_(eta), n_(n) {
  if (eta.kind() == OrderKind::temporal) {
    throw std::invalid_argument("PI weights are defined for spatial orders only");
  }
  if (n < 2) {
    throw std::invalid_argument("PIWeightTable requires N >= 2");
  }

  const int m = eta.derivative_count();
  const double e = eta.value();
  const double ehi = static_cast<double>(m) + 1.0 - e; // exponent of c in the
  const double elo = static_cast<double>(m) - e;       // two moment families
  const double h = 1.0 / static_cast<double>(n);
  nu_ = std::pow(h, elo) / gamma_real(elo);

  // Shared cell moments c_i^{ehi}, c_i^{elo}, i = 1..N-1.
  std::vector<double> chi(static_cast<std::size_t>(n));
  std::vector<double> clo(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) {
    chi[static_cast<std::size_t>(i)] = pi_cell_moment(i, ehi);
    clo[static_cast<std::size_t>(i)] = pi_cell_moment(i, elo);
  }

  // Each interior cell [x_{j-1}, x_j] contributes the pair
  //   q(i) = c_i^{ehi} - i * c_i^{elo}   to the left endpoint and
  //   p(i) = c_i^{ehi} - (i-1) * c_i^{elo} to the right endpoint,
  // with i the cell's distance from the collocation node; telescoping
  // the per-cell forward differences gives the nodal weights below.
  rows_.resize(static_cast<std::size_t>(n) - 1);
  for (int r = 1; r < n; ++r) {
    std::vector<double>& w = rows_[static_cast<std::size_t>(r) - 1];
    w.resize(static_cast<std::size_t>(r) + 1);
    w[0] = -(chi[static_cast<std::size_t>(r)] -
             (r - 1.0) * clo[static_cast<std::size_t>(r)]);
    for (int j = 1; j < r; ++j) {
      const int a = r - j + 1;
      const int b = r - j;
      w[static_cast<std::size_t>(j)] =
          (chi[static_cast<std::size_t>(a)] -
           static_cast<double>(a) * clo[static_cast<std::size_t>(a)]) -
          (chi[static_cast<std::size_t>(b)] -
           (b - 1.0) * clo[static_cast<std::size_t>(b)]);
    }
    w[static_cast<std::size_t>(r)] = chi[1] - clo[1];
  }
}

std::span<const double> PIWeightTable::row(int r) const {
  if (r < 1 || r >= n_) {
    throw std::invalid_argument("PI weight row index must satisfy 1 <= r <= N-1");
  }
  return rows_[static_cast<std::size_t>(r) - 1];
}

double apply_pi(const PIWeightTable& table, std::span<const double> values,
                int r) {
  const std::span<const double> w = table.row(r);
  if (values.size() < w.size()) {
    throw std::invalid_argument("apply_pi needs nodal values through x_r");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    sum += w[j] * values[j];
  }
  return table.nu() * sum;
}

} // namespace fade
