#ifndef FADE_MANUFACTURED_HPP
#define FADE_MANUFACTURED_HPP

#include "fade/solver.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fade {

/// A verification problem with a known exact solution.  The forcing is
/// constructed so the exact solution satisfies the equation:
///
///   example1: u = x^2 (1-x)^2 e^{-t}
///   example2: u = sin(pi x) t^2
///
/// The construction samples the strong residual at 50 deterministically
/// seeded random interior points through the quadrature oracle and
/// refuses (std::runtime_error) if any exceeds 1e-8.
struct ManufacturedCase {
  std::string name;
  ProblemSpec problem;
  std::function<double(double, double)> exact;
};

ManufacturedCase build_case(const std::string& name, const FracOrder& alpha,
                            const FracOrder& beta, const FracOrder& gamma,
                            double kappa1, double kappa2, double horizon);

/// Strong-form residual D_t^alpha u - kappa1 D_x^beta u
/// + kappa2 D_x^gamma u - h at (x, t), with every fractional derivative
/// of the exact solution evaluated by the quadrature oracle.
double pde_residual(const ManufacturedCase& mcase, double x, double t);

/// One resolution level of a convergence study.
struct ConvergenceRow {
  double param = 0.0; ///< the order being varied, echoed into the CSV
  double h = 0.0;
  double tau = 0.0;
  double e2 = 0.0;
  double einf = 0.0;
  std::optional<double> rate2;
  std::optional<double> rate_inf;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
};

enum class Vary { space, time };

/// Runs the solver over a doubling sequence of resolutions and reports
/// errors with successive log2 rates.
///
/// Vary::space: `levels` are cell counts N (each double the previous),
/// `fixed` is the step count M.  Vary::time: `levels` are step counts M,
/// `fixed` is N.  `param` labels the rows (e.g. the order under study);
/// `workers` bounds the number of concurrent solves.  A solver failure
/// aborts the study with the failing cell identified.
ConvergenceReport run_convergence(const ManufacturedCase& mcase,
                                  Vary vary, std::span<const int> levels,
                                  int fixed, double param, int workers = 1);

/// One (h, tau) pairing of the simultaneous-refinement study.
struct PairedRow {
  double h = 0.0;
  double tau = 0.0;
  double e2 = 0.0;
};

struct PairedReport {
  std::vector<PairedRow> rows;
};

/// Solves at each (N, M) pair and reports E2 at t = T.
PairedReport run_paired(const ManufacturedCase& mcase,
                        std::span<const std::pair<int, int>> pairs,
                        int workers = 1);

/// The (N, M) pairs of the reference simultaneous-refinement study:
/// (4,10), (6,20), (8,30), (10,40).
std::span<const std::pair<int, int>> paired_levels();

/// CSV emission, shared header `param,h,tau,E2,rate2,Einf,rateInf`,
/// floats in scientific notation with six significant digits, empty
/// fields where a column does not apply.  Byte-deterministic.
void write_csv(const ConvergenceReport& report, std::ostream& out);
void write_csv(const PairedReport& report, std::ostream& out);

} // namespace fade

#endif
