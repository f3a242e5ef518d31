#pragma once

// Numerical backbone: adaptive Gauss-Kronrod integration on finite and
// semi-infinite domains, a nested 2D integrator used as a brute-force
// oracle, and the polylogarithms Li_1, Li_2, Li_3 that give the mode
// integrals in closed form.

#include <cstddef>
#include <functional>
#include <span>

namespace casimir {

enum class SemiInfiniteMap {
  Exponential,  // x = a - L ln(1 - t); exact for e^{-(x-a)/L}
  Rational,     // x = a + L t / (1 - t); suited to algebraic tails
};

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  SemiInfiniteMap semi_infinite_transform = SemiInfiniteMap::Exponential;

  /// Throws Error(Domain) if a tolerance is non-positive or the budget < 1.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct Interval {
  double lower;
  double upper;
};

/// [lower, inf). `scale` shapes the variable map and never truncates the
/// domain. For an integrand decaying like e^{-x/l}, the exponential map is
/// smooth at infinity when scale >= 2 l.
struct HalfLine {
  double lower = 0.0;
  double scale = 1.0;
};

using Integrand = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;

/// Globally adaptive 21-point Gauss-Kronrod. The rule is open, so endpoint
/// singularities are never sampled. A non-finite sample throws
/// Error(Domain). Budget exhaustion returns converged = false together with
/// the best estimate.
IntegralResult integrate_1d(const Integrand& f, Interval domain,
                            const QuadratureSpec& spec = {});

/// Same as above, seeded with the partition given by `breakpoints` (sorted,
/// at least two entries). Kinks and peaks placed on breakpoints are
/// resolved without bisection search.
IntegralResult integrate_1d(const Integrand& f,
                            std::span<const double> breakpoints,
                            const QuadratureSpec& spec = {});

IntegralResult integrate_1d(const Integrand& f, HalfLine domain,
                            const QuadratureSpec& spec = {});

/// Nested adaptive integration of f(p0, q) over [0, inf)^2: outer in p0,
/// inner in q. No closed forms involved; meant as an independent check.
IntegralResult integrate_2d_oracle(const Integrand2d& f,
                                   const QuadratureSpec& spec = {},
                                   double scale = 1.0);

/// Li_s(y) for s in {1, 2, 3} and y in [0, 1]; (s = 1, y = 1) diverges.
double polylog(int s, double y);

/// First `terms` terms of sum_{k >= 1} y^k / k^s.
double polylog_partial_sum(int s, double y, int terms);

/// int_a^inf u^2 / (e^{2uH} - 1) du in closed form.
double inner_mode_integral(double a, double separation);

/// int_a^inf u ln(1 - e^{-2uH}) du in closed form. This is the
/// H-dependent log-determinant summed over parallel momenta at fixed p0.
double inner_logdet_integral(double a, double separation);

}  // namespace casimir
