#include "fade/selftest.hpp"

#include "fade/bernstein.hpp"
#include "fade/fractional.hpp"
#include "fade/manufactured.hpp"
#include "fade/pi_quadrature.hpp"
#include "fade/solver.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

namespace fade {

namespace {

struct SuiteRun {
  std::ostream& out;
  bool all_ok = true;

  void report(const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "[ok]   " : "[FAIL] ") << name;
    if (!detail.empty()) {
      out << ": " << detail;
    }
    out << '\n';
    all_ok = all_ok && ok;
  }
};

std::string worst_str(double worst, double tol) {
  std::ostringstream os;
  os << "worst deviation " << worst << " (tolerance " << tol << ")";
  return os.str();
}

void suite_gamma(SuiteRun& run) {
  // Spot values to 16 digits plus the functional equation on a sweep.
  static const double points[][2] = {
      {1.0, 1.0},
      {0.5, 1.7724538509055160},
      {2.5, 1.3293403881791370},
      {0.1, 9.5135076986687319},
      {10.3, 7.1643068906237524e+05},
      {50.0, 6.0828186403426756e+62},
  };
  double worst = 0.0;
  for (const double* p : points) {
    worst = std::max(worst, std::abs(gamma_real(p[0]) / p[1] - 1.0));
  }
  for (double x = 0.1; x < 49.0; x += 0.37) {
    const double lhs = gamma_real(x + 1.0);
    const double rhs = x * gamma_real(x);
    worst = std::max(worst, std::abs(lhs / rhs - 1.0));
  }
  run.report("gamma function", worst <= 1e-12, worst_str(worst, 1e-12));
}

void suite_l1(SuiteRun& run) {
  double worst = 0.0;
  bool shape_ok = true;
  for (double a = 0.1; a < 0.95; a += 0.2) {
    const FracOrder alpha = FracOrder::temporal(a);
    for (int k : {0, 1, 5, 50, 200}) {
      const L1Weights w = l1_weights(alpha, k, 0.05);
      double sum = 0.0;
      for (int j = 0; j <= k; ++j) {
        const double aj = w.a[static_cast<std::size_t>(j)];
        sum += aj;
        shape_ok = shape_ok && aj > 0.0;
        if (j > 0) {
          shape_ok = shape_ok && aj > w.a[static_cast<std::size_t>(j) - 1];
        }
      }
      shape_ok = shape_ok && w.a.back() == 1.0;
      const double target = std::pow(k + 1.0, 1.0 - a);
      worst = std::max(worst, std::abs(sum / target - 1.0));
    }
  }
  run.report("L1 weight identities", shape_ok && worst <= 1e-12,
             worst_str(worst, 1e-12));
}

void suite_pi(SuiteRun& run) {
  double worst = 0.0;
  for (double value : {1.2, 1.5, 1.8}) {
    for (int n : {2, 8, 33, 128}) {
      const PIWeightTable table(FracOrder::dispersive(value), n);
      const double e = 2.0 - value;
      for (int r = 1; r < n; ++r) {
        double sum = 0.0;
        for (double w : table.row(r)) {
          sum += w;
        }
        const double target = std::pow(static_cast<double>(r), e) / e;
        worst = std::max(worst, std::abs(sum / target - 1.0));
      }
    }
  }
  for (double value : {0.2, 0.5, 0.8}) {
    for (int n : {2, 8, 33, 128}) {
      const PIWeightTable table(FracOrder::advective(value), n);
      const double e = 1.0 - value;
      for (int r = 1; r < n; ++r) {
        double sum = 0.0;
        for (double w : table.row(r)) {
          sum += w;
        }
        const double target = std::pow(static_cast<double>(r), e) / e;
        worst = std::max(worst, std::abs(sum / target - 1.0));
      }
    }
  }

  // Exactness for affine m-th derivatives: feeding the rule the nodal
  // samples u''(x_j) = x_j (u = x^3/6) or u'(x_j) = x_j (u = x^2/2)
  // must reproduce the closed-form Caputo derivative.
  const int n = 16;
  const double h = 1.0 / n;
  std::vector<double> nodes(n + 1);
  for (int j = 0; j <= n; ++j) {
    nodes[static_cast<std::size_t>(j)] = j * h;
  }
  double worst_exact = 0.0;
  {
    const FracOrder beta = FracOrder::dispersive(1.5);
    const PIWeightTable table(beta, n);
    for (int r = 1; r < n; ++r) {
      const double approx = apply_pi(table, nodes, r);
      const double ex = caputo_monomial(3, beta, r * h) / 6.0;
      worst_exact = std::max(worst_exact, std::abs(approx - ex));
    }
  }
  {
    const FracOrder gamma = FracOrder::advective(0.5);
    const PIWeightTable table(gamma, n);
    for (int r = 1; r < n; ++r) {
      const double approx = apply_pi(table, nodes, r);
      const double ex = caputo_monomial(2, gamma, r * h) / 2.0;
      worst_exact = std::max(worst_exact, std::abs(approx - ex));
    }
  }
  worst = std::max(worst, worst_exact);
  run.report("PI weight identities", worst <= 1e-12, worst_str(worst, 1e-12));
}

void suite_bernstein(SuiteRun& run) {
  double worst = 0.0;
  for (int n : {2, 4, 8, 16, 32}) {
    const BernsteinDerivCoeffs coeffs = bernstein_deriv_coeffs(n);
    for (double x = 0.0; x <= 1.0001; x += 0.125) {
      const double xc = std::min(x, 1.0);
      const std::vector<double> b = bernstein_all(n, xc);
      double sum = 0.0;
      for (double v : b) {
        sum += v;
        if (v < 0.0) {
          worst = std::max(worst, -v);
        }
      }
      worst = std::max(worst, std::abs(sum - 1.0));

      // Derivative identities against the degree-reduction forms
      // B'_{i,N} = N (B_{i-1,N-1} - B_{i,N-1}) and its iterate.
      const std::vector<double> blo = bernstein_all(n - 1, xc);
      const std::vector<double> bll =
          n >= 2 ? bernstein_all(n - 2, xc) : std::vector<double>{};
      const auto at = [](const std::vector<double>& v, int i) {
        return i >= 0 && i < static_cast<int>(v.size())
                   ? v[static_cast<std::size_t>(i)]
                   : 0.0;
      };
      for (int i = 0; i <= n; ++i) {
        double d1 = 0.0;
        for (int k = -1; k <= 1; ++k) {
          if (i + k >= 0 && i + k <= n) {
            d1 += coeffs.d1[static_cast<std::size_t>(k + 1)]
                          [static_cast<std::size_t>(i)] *
                  b[static_cast<std::size_t>(i + k)];
          }
        }
        const double ref1 = n * (at(blo, i - 1) - at(blo, i));
        worst = std::max(worst, std::abs(d1 - ref1));

        double d2 = 0.0;
        for (int k = -2; k <= 2; ++k) {
          if (i + k >= 0 && i + k <= n) {
            d2 += coeffs.d2[static_cast<std::size_t>(k + 2)]
                          [static_cast<std::size_t>(i)] *
                  b[static_cast<std::size_t>(i + k)];
          }
        }
        const double ref2 = static_cast<double>(n) * (n - 1.0) *
                            (at(bll, i - 2) - 2.0 * at(bll, i - 1) + at(bll, i));
        worst = std::max(worst, std::abs(d2 - ref2) /
                                    std::max(1.0, std::abs(ref2)));
      }
    }
  }
  run.report("Bernstein basis identities", worst <= 1e-10,
             worst_str(worst, 1e-10));
}

void suite_assembly(SuiteRun& run) {
  double worst = 0.0;
  const double params[][5] = {
      // alpha, beta, gamma, kappa1, kappa2
      {0.4, 1.5, 0.5, 0.001, 2.0},
      {0.5, 1.5, 0.5, 0.1, 5.0},
      {0.2, 1.2, 0.8, 1.0, 1.0},
      {0.8, 1.8, 0.2, 0.01, 0.5},
  };
  for (const double* p : params) {
    ProblemSpec spec;
    spec.alpha = FracOrder::temporal(p[0]);
    spec.beta = FracOrder::dispersive(p[1]);
    spec.gamma = FracOrder::advective(p[2]);
    spec.kappa1 = p[3];
    spec.kappa2 = p[4];
    spec.horizon = 1.0;
    spec.initial = [](double) { return 0.0; };
    spec.forcing = [](double, double) { return 0.0; };
    for (int n : {4, 9, 16}) {
      Grid grid;
      grid.n = n;
      grid.m = 20;
      const SystemMatrices s = assemble(spec, grid);
      const Eigen::MatrixXd direct = assemble_entrywise(spec, grid);
      const double scale = direct.cwiseAbs().maxCoeff();
      worst = std::max(
          worst, (s.system - direct).cwiseAbs().maxCoeff() / scale);
    }
  }
  run.report("assembly cross-check", worst <= 1e-12, worst_str(worst, 1e-12));
}

void suite_manufactured(SuiteRun& run) {
  // build_case already enforces the residual bound; exercise both
  // example constructions at their reference parameters plus one
  // off-reference set.
  std::string detail;
  bool ok = true;
  try {
    build_case("example1", FracOrder::temporal(0.4), FracOrder::dispersive(1.5),
               FracOrder::advective(0.5), 0.001, 2.0, 1.0);
    build_case("example2", FracOrder::temporal(0.5), FracOrder::dispersive(1.5),
               FracOrder::advective(0.5), 0.1, 5.0, 1.0);
    build_case("example1", FracOrder::temporal(0.7), FracOrder::dispersive(1.3),
               FracOrder::advective(0.6), 0.05, 1.5, 2.0);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  run.report("manufactured forcing residuals", ok, detail);
}

} // namespace

bool run_selftest(std::ostream& out) {
  SuiteRun run{out};
  suite_gamma(run);
  suite_l1(run);
  suite_pi(run);
  suite_bernstein(run);
  suite_assembly(run);
  suite_manufactured(run);
  out << (run.all_ok ? "selftest: all suites passed\n"
                     : "selftest: FAILURES detected\n");
  return run.all_ok;
}

} // namespace fade
