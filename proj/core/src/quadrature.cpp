#include "casimir/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

#include "casimir/error.hpp"

namespace casimir {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478416, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double lower;
  double upper;
  double value;
  double error;
  std::size_t order;  // creation index, breaks ties deterministically
};

struct LargerError {
  bool operator()(const Segment& a, const Segment& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.order > b.order;
  }
};

double sample(const Integrand& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = " << x;
    throw Error(ErrorKind::Domain, msg.str());
  }
  return v;
}

Segment gauss_kronrod(const Integrand& f, double lower, double upper,
                      std::size_t order) {
  const double center = 0.5 * (lower + upper);
  const double half = 0.5 * (upper - lower);

  const double fc = sample(f, center);
  double kronrod = fc * kKronrodWeights[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  std::array<double, 10> lo{};
  std::array<double, 10> hi{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[j];
    lo[j] = sample(f, center - dx);
    hi[j] = sample(f, center + dx);
    kronrod += kKronrodWeights[j] * (lo[j] + hi[j]);
    abs_sum += kKronrodWeights[j] * (std::abs(lo[j]) + std::abs(hi[j]));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (lo[j] + hi[j]);
  }

  const double mean = 0.5 * kronrod;
  double asc = kKronrodWeights[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kKronrodWeights[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));
  }

  const double width = std::abs(half);
  const double result = kronrod * half;
  double err = std::abs((kronrod - gauss) * half);
  const double resasc = asc * width;
  const double resabs = abs_sum * width;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  return Segment{lower, upper, result, err, order};
}

IntegralResult adaptive(const Integrand& f, std::span<const double> breaks,
                        const QuadratureSpec& spec) {
  spec.validate();
  if (breaks.size() < 2) {
    throw Error(ErrorKind::Domain, "integration needs at least two breakpoints");
  }
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1]) || !std::isfinite(breaks[i + 1]) ||
        !std::isfinite(breaks[i])) {
      throw Error(ErrorKind::Domain, "breakpoints must be finite and ascending");
    }
  }

  std::priority_queue<Segment, std::vector<Segment>, LargerError> queue;
  std::vector<Segment> frozen;
  std::size_t order = 0;
  std::size_t evaluations = 0;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Segment s = gauss_kronrod(f, breaks[i], breaks[i + 1], order++);
    evaluations += 21;
    total += s.value;
    total_err += s.error;
    queue.push(s);
  }

  auto tolerance = [&spec](double value) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  };

  int subdivisions = 0;
  while (!queue.empty() && total_err > tolerance(total) &&
         subdivisions < spec.max_subdivisions) {
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lower + worst.upper);
    if (!(mid > worst.lower && mid < worst.upper) ||
        (worst.upper - worst.lower) <
            16.0 * kEps * std::max(std::abs(worst.lower), std::abs(worst.upper))) {
      frozen.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod(f, worst.lower, mid, order++);
    const Segment right = gauss_kronrod(f, mid, worst.upper, order++);
    evaluations += 42;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum from scratch so the running updates leave no cancellation residue.
  std::vector<Segment> all = std::move(frozen);
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Segment& a, const Segment& b) { return a.lower < b.lower; });
  IntegralResult out;
  for (const Segment& s : all) {
    out.value += s.value;
    out.error_estimate += s.error;
  }
  out.evaluations = evaluations;
  out.converged = out.error_estimate <= tolerance(out.value);
  return out;
}

// Li_s(e^{-x}) for x > 0 small, via the expansion around y = 1:
//   Li_s(e^mu) = mu^{s-1}/(s-1)! [H_{s-1} - ln(-mu)] + sum_{k != s-1} zeta(s-k) mu^k / k!
// zeta at non-positive integers: zeta(-n) = (-1)^n B_{n+1} / (n+1).
constexpr std::array<double, 24> kZetaNonPositive = {
    -0.5,                 // zeta(0)
    -1.0 / 12.0,          // zeta(-1)
    0.0,                  // zeta(-2)
    1.0 / 120.0,          // zeta(-3)
    0.0,
    -1.0 / 252.0,         // zeta(-5)
    0.0,
    1.0 / 240.0,          // zeta(-7)
    0.0,
    -1.0 / 132.0,         // zeta(-9)
    0.0,
    691.0 / 32760.0,      // zeta(-11)
    0.0,
    -1.0 / 12.0,          // zeta(-13)
    0.0,
    3617.0 / 8160.0,      // zeta(-15)
    0.0,
    -43867.0 / 14364.0,   // zeta(-17)
    0.0,
    174611.0 / 6600.0,    // zeta(-19)
    0.0,
    -77683.0 / 276.0,     // zeta(-21)
    0.0,
    236364091.0 / 65520.0 // zeta(-23)
};

constexpr double kZeta2 = std::numbers::pi * std::numbers::pi / 6.0;
constexpr double kZeta3 = 1.2020569031595942853997381615114;

// Reflection threshold: y > 0.75 uses the log expansion.
const double kLogThreshold = -std::log(0.75);

double series_tail_sum(int s, double mu) {
  // sum_{k >= s} zeta(s - k) mu^k / k!
  double sum = 0.0;
  double power = 1.0;  // mu^k / k!
  for (int k = 1; k <= s; ++k) power *= mu / k;
  for (int k = s; k - s < static_cast<int>(kZetaNonPositive.size()); ++k) {
    if (k > s) power *= mu / k;
    const double term = kZetaNonPositive[k - s] * power;
    sum += term;
    if (term != 0.0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double li_exp_near_one(int s, double x) {
  // x > 0, mu = -x.
  const double mu = -x;
  const double log_x = std::log(x);
  if (s == 2) {
    return kZeta2 + mu * (1.0 - log_x) + series_tail_sum(2, mu);
  }
  return kZeta3 + kZeta2 * mu + 0.5 * mu * mu * (1.5 - log_x) +
         series_tail_sum(3, mu);
}

double li_series(int s, double y) {
  double sum = 0.0;
  double power = 1.0;
  for (int k = 1; k < 400; ++k) {
    power *= y;
    const double kd = static_cast<double>(k);
    const double term = s == 2 ? power / (kd * kd) : power / (kd * kd * kd);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Li_s(e^{-x}) for x >= 0, s in {1, 2, 3}.
double li_exp(int s, double x) {
  if (s == 1) {
    if (x == 0.0) throw Error(ErrorKind::Divergence, "Li_1(1) diverges");
    return -std::log(-std::expm1(-x));
  }
  if (x == 0.0) return s == 2 ? kZeta2 : kZeta3;
  if (x < kLogThreshold) return li_exp_near_one(s, x);
  return li_series(s, std::exp(-x));
}

void require_positive_separation(double separation) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw Error(ErrorKind::Domain, "separation must be positive and finite");
  }
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error(ErrorKind::Domain, "quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw Error(ErrorKind::Domain, "max_subdivisions must be at least 1");
  }
}

IntegralResult integrate_1d(const Integrand& f, Interval domain,
                            const QuadratureSpec& spec) {
  const std::array<double, 2> breaks = {domain.lower, domain.upper};
  return adaptive(f, breaks, spec);
}

IntegralResult integrate_1d(const Integrand& f,
                            std::span<const double> breakpoints,
                            const QuadratureSpec& spec) {
  return adaptive(f, breakpoints, spec);
}

IntegralResult integrate_1d(const Integrand& f, HalfLine domain,
                            const QuadratureSpec& spec) {
  if (!(domain.scale > 0.0) || !std::isfinite(domain.lower)) {
    throw Error(ErrorKind::Domain, "half-line needs a finite lower bound and positive scale");
  }
  const double a = domain.lower;
  const double len = domain.scale;
  Integrand mapped;
  if (spec.semi_infinite_transform == SemiInfiniteMap::Exponential) {
    mapped = [&f, a, len](double t) {
      if (t >= 1.0) return 0.0;
      const double x = a - len * std::log1p(-t);
      const double v = f(x);
      return v == 0.0 ? 0.0 : v * len / (1.0 - t);
    };
  } else {
    mapped = [&f, a, len](double t) {
      if (t >= 1.0) return 0.0;
      const double u = 1.0 - t;
      const double v = f(a + len * t / u);
      return v == 0.0 ? 0.0 : v * len / (u * u);
    };
  }
  return integrate_1d(mapped, Interval{0.0, 1.0}, spec);
}

IntegralResult integrate_2d_oracle(const Integrand2d& f,
                                   const QuadratureSpec& spec, double scale) {
  spec.validate();
  QuadratureSpec inner_spec = spec;
  inner_spec.rel_tol = spec.rel_tol * 0.1;
  inner_spec.abs_tol = spec.abs_tol * 0.1;

  std::size_t inner_evaluations = 0;
  bool inner_converged = true;
  const Integrand outer = [&](double p0) {
    const IntegralResult inner = integrate_1d(
        [&f, p0](double q) { return f(p0, q); }, HalfLine{0.0, scale}, inner_spec);
    inner_evaluations += inner.evaluations;
    inner_converged = inner_converged && inner.converged;
    return inner.value;
  };
  QuadratureSpec outer_spec = spec;
  outer_spec.rel_tol = spec.rel_tol * 0.5;
  outer_spec.abs_tol = spec.abs_tol * 0.5;
  IntegralResult out = integrate_1d(outer, HalfLine{0.0, scale}, outer_spec);
  out.evaluations = inner_evaluations;
  // Every converged inner pass meets its relative tolerance, which bounds the
  // error carried into the outer integral.
  out.error_estimate += inner_spec.rel_tol * std::abs(out.value);
  out.converged = out.converged && inner_converged &&
                  out.error_estimate <= std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
  return out;
}

double polylog(int s, double y) {
  if (s < 1 || s > 3) throw Error(ErrorKind::Domain, "polylog order must be 1, 2 or 3");
  if (!(y >= 0.0 && y <= 1.0)) {
    throw Error(ErrorKind::Domain, "polylog argument must lie in [0, 1]");
  }
  if (s == 1 && y == 1.0) throw Error(ErrorKind::Divergence, "Li_1(1) diverges");
  if (y == 0.0) return 0.0;
  if (s == 1) return -std::log1p(-y);
  if (y > 0.75) return li_exp(s, -std::log(y));
  return li_series(s, y);
}

double polylog_partial_sum(int s, double y, int terms) {
  double sum = 0.0;
  double power = 1.0;
  for (int k = 1; k <= terms; ++k) {
    power *= y;
    sum += power / std::pow(static_cast<double>(k), s);
  }
  return sum;
}

double inner_mode_integral(double a, double separation) {
  require_positive_separation(separation);
  if (!(a >= 0.0)) throw Error(ErrorKind::Domain, "lower limit must be non-negative");
  const double x = 2.0 * a * separation;
  const double inv = 1.0 / (2.0 * separation);
  const double scale = inv * inv * inv;
  if (x == 0.0) return scale * 2.0 * kZeta3;
  if (x > 745.0) return 0.0;
  return scale * (x * x * li_exp(1, x) + 2.0 * x * li_exp(2, x) + 2.0 * li_exp(3, x));
}

double inner_logdet_integral(double a, double separation) {
  require_positive_separation(separation);
  if (!(a >= 0.0)) throw Error(ErrorKind::Domain, "lower limit must be non-negative");
  const double x = 2.0 * a * separation;
  const double inv = 1.0 / (2.0 * separation);
  if (x > 745.0) return 0.0;
  return -inv * inv * (x * li_exp(2, x) + li_exp(3, x));
}

}  // namespace casimir
