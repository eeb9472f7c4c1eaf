#include "fade/manufactured.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fade {

namespace {

const double pi = 3.14159265358979323846;

double sqr(double v) { return v * v; }

/// Classical derivatives of the two exact solutions, used by the
/// residual oracle: index 1 = d/dx, 2 = d^2/dx^2, 0 = du/dt at fixed x.
struct ExactDerivs {
  std::function<double(double, double)> dt;  ///< du/dt (x, t)
  std::function<double(double, double)> dx;  ///< du/dx (x, t)
  std::function<double(double, double)> dxx; ///< d2u/dx2 (x, t)
};

ExactDerivs exact_derivs(const std::string& name) {
  if (name == "example1") {
    return {
        [](double x, double t) { return -sqr(x) * sqr(1.0 - x) * std::exp(-t); },
        [](double x, double t) {
          return (2.0 * x - 6.0 * sqr(x) + 4.0 * x * sqr(x)) * std::exp(-t);
        },
        [](double x, double t) {
          return (2.0 - 12.0 * x + 12.0 * sqr(x)) * std::exp(-t);
        },
    };
  }
  if (name == "example2") {
    return {
        [](double x, double t) { return 2.0 * t * std::sin(pi * x); },
        [](double x, double t) { return pi * std::cos(pi * x) * sqr(t); },
        [](double x, double t) { return -pi * pi * std::sin(pi * x) * sqr(t); },
    };
  }
  throw std::invalid_argument("no residual oracle for case '" + name + "'");
}

void check_residual(const ManufacturedCase& mcase) {
  // 50 samples, deterministically seeded so construction is repeatable.
  std::mt19937 rng(20240915);
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double x = 0.02 + 0.96 * ux(rng);
    const double t = mcase.problem.horizon * (0.02 + 0.98 * ux(rng));
    const double r = pde_residual(mcase, x, t);
    if (!(std::abs(r) <= 1e-8)) {
      std::ostringstream os;
      os << mcase.name << " forcing is inconsistent: residual " << r
         << " at x=" << x << ", t=" << t;
      throw std::runtime_error(os.str());
    }
  }
}

int resolve_workers(int workers, int cells) {
  if (workers < 1) {
    workers = 1;
  }
  return std::min(workers, cells);
}

/// Runs fn(i) for i = 0..count-1 on a bounded pool; the first exception
/// is rethrown on the caller once all threads have joined.
void parallel_cells(int count, int workers,
                    const std::function<void(int)>& fn) {
  workers = resolve_workers(workers, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count || failed.load()) {
          return;
        }
        try {
          fn(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (std::thread& t : pool) {
    t.join();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

} // namespace

ManufacturedCase build_case(const std::string& name, const FracOrder& alpha,
                            const FracOrder& beta, const FracOrder& gamma,
                            double kappa1, double kappa2, double horizon) {
  ManufacturedCase mcase;
  mcase.name = name;
  mcase.problem.alpha = alpha;
  mcase.problem.beta = beta;
  mcase.problem.gamma = gamma;
  mcase.problem.kappa1 = kappa1;
  mcase.problem.kappa2 = kappa2;
  mcase.problem.horizon = horizon;

  if (name == "example1") {
    mcase.exact = [](double x, double t) {
      return sqr(x) * sqr(1.0 - x) * std::exp(-t);
    };
    mcase.problem.initial = [](double x) { return sqr(x) * sqr(1.0 - x); };
    // The space profile is the polynomial x^2 - 2x^3 + x^4, so both
    // space-fractional derivatives are sums of monomial closed forms.
    const auto profile_frac = [](const FracOrder& eta, double x) {
      return caputo_monomial(2, eta, x) - 2.0 * caputo_monomial(3, eta, x) +
             caputo_monomial(4, eta, x);
    };
    mcase.problem.forcing = [=](double x, double t) {
      const double decay = std::exp(-t);
      return sqr(x) * sqr(1.0 - x) * caputo_exp_decay(alpha, t) -
             kappa1 * decay * profile_frac(beta, x) +
             kappa2 * decay * profile_frac(gamma, x);
    };
  } else if (name == "example2") {
    mcase.exact = [](double x, double t) { return std::sin(pi * x) * sqr(t); };
    mcase.problem.initial = [](double) { return 0.0; };
    // D_t^alpha t^2 = 2 t^{2-alpha} / Gamma(3-alpha).
    const double time_scale = 2.0 / gamma_real(3.0 - alpha.value());
    const double time_power = 2.0 - alpha.value();
    mcase.problem.forcing = [=](double x, double t) {
      return std::sin(pi * x) * time_scale * std::pow(t, time_power) -
             kappa1 * sqr(t) * caputo_sin_pi(beta, x) +
             kappa2 * sqr(t) * caputo_sin_pi(gamma, x);
    };
  } else {
    throw std::invalid_argument("unknown case '" + name +
                                "' (expected example1 or example2)");
  }

  mcase.problem.validate();
  check_residual(mcase);
  return mcase;
}

double pde_residual(const ManufacturedCase& mcase, double x, double t) {
  const ExactDerivs d = exact_derivs(mcase.name);
  const ProblemSpec& p = mcase.problem;

  const double ut = caputo_oracle([&](double s) { return d.dt(x, s); },
                                  p.alpha, t);
  const double uxx = caputo_oracle([&](double s) { return d.dxx(s, t); },
                                   p.beta, x);
  const double ux = caputo_oracle([&](double s) { return d.dx(s, t); },
                                  p.gamma, x);
  return ut - p.kappa1 * uxx + p.kappa2 * ux - p.forcing(x, t);
}

ConvergenceReport run_convergence(const ManufacturedCase& mcase, Vary vary,
                                  std::span<const int> levels, int fixed,
                                  double param, int workers) {
  if (levels.size() < 2) {
    throw std::invalid_argument("a convergence study needs at least two levels");
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (levels[i + 1] != 2 * levels[i]) {
      throw std::invalid_argument("convergence levels must double at each step");
    }
  }
  if (fixed < 1) {
    throw std::invalid_argument("the fixed resolution must be positive");
  }

  const int count = static_cast<int>(levels.size());
  std::vector<ErrorNorms> cells(static_cast<std::size_t>(count));
  parallel_cells(count, workers, [&](int i) {
    Grid grid;
    grid.n = vary == Vary::space ? levels[static_cast<std::size_t>(i)] : fixed;
    grid.m = vary == Vary::space ? fixed : levels[static_cast<std::size_t>(i)];
    try {
      const SolutionHistory history = solve(mcase.problem, grid);
      cells[static_cast<std::size_t>(i)] =
          error_norms(history, mcase.exact, mcase.problem.horizon);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << mcase.name << " study cell N=" << grid.n << ", M=" << grid.m
         << " failed: " << e.what();
      throw std::runtime_error(os.str());
    }
  });

  ConvergenceReport report;
  report.rows.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    ConvergenceRow& row = report.rows[static_cast<std::size_t>(i)];
    Grid grid;
    grid.n = vary == Vary::space ? levels[static_cast<std::size_t>(i)] : fixed;
    grid.m = vary == Vary::space ? fixed : levels[static_cast<std::size_t>(i)];
    row.param = param;
    row.h = grid.h();
    row.tau = grid.tau(mcase.problem.horizon);
    row.e2 = cells[static_cast<std::size_t>(i)].e2;
    row.einf = cells[static_cast<std::size_t>(i)].einf;
    if (i > 0) {
      const ErrorNorms& prev = cells[static_cast<std::size_t>(i) - 1];
      row.rate2 = std::log2(prev.e2 / row.e2);
      row.rate_inf = std::log2(prev.einf / row.einf);
    }
  }
  return report;
}

PairedReport run_paired(const ManufacturedCase& mcase,
                        std::span<const std::pair<int, int>> pairs,
                        int workers) {
  if (pairs.empty()) {
    throw std::invalid_argument("the paired study needs at least one (N, M) pair");
  }

  const int count = static_cast<int>(pairs.size());
  std::vector<ErrorNorms> cells(static_cast<std::size_t>(count));
  parallel_cells(count, workers, [&](int i) {
    Grid grid;
    grid.n = pairs[static_cast<std::size_t>(i)].first;
    grid.m = pairs[static_cast<std::size_t>(i)].second;
    try {
      const SolutionHistory history = solve(mcase.problem, grid);
      cells[static_cast<std::size_t>(i)] =
          error_norms(history, mcase.exact, mcase.problem.horizon);
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << mcase.name << " study cell N=" << grid.n << ", M=" << grid.m
         << " failed: " << e.what();
      throw std::runtime_error(os.str());
    }
  });

  PairedReport report;
  report.rows.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    PairedRow& row = report.rows[static_cast<std::size_t>(i)];
    Grid grid;
    grid.n = pairs[static_cast<std::size_t>(i)].first;
    grid.m = pairs[static_cast<std::size_t>(i)].second;
    row.h = grid.h();
    row.tau = grid.tau(mcase.problem.horizon);
    row.e2 = cells[static_cast<std::size_t>(i)].e2;
  }
  return report;
}

std::span<const std::pair<int, int>> paired_levels() {
  static const std::pair<int, int> pairs[] = {{4, 10}, {6, 20}, {8, 30}, {10, 40}};
  return pairs;
}

void write_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "param,h,tau,E2,rate2,Einf,rateInf\n";
  for (const ConvergenceRow& row : report.rows) {
    out << fmt(row.param) << ',' << fmt(row.h) << ',' << fmt(row.tau) << ','
        << fmt(row.e2) << ',' << (row.rate2 ? fmt(*row.rate2) : "") << ','
        << fmt(row.einf) << ',' << (row.rate_inf ? fmt(*row.rate_inf) : "")
        << '\n';
  }
}

void write_csv(const PairedReport& report, std::ostream& out) {
  out << "param,h,tau,E2,rate2,Einf,rateInf\n";
  for (const PairedRow& row : report.rows) {
    out << ',' << fmt(row.h) << ',' << fmt(row.tau) << ',' << fmt(row.e2)
        << ",,,\n";
  }
}

} // namespace fade
