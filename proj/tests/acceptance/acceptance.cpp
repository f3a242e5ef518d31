// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only
//
// Exit status is 0 iff every selected criterion passes.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/casimir.hpp"
#include "gsl_oracle.hpp"

using namespace casimir;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[FAILED: " << what << "] ";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

ForceQuery make_query(Medium medium, double h, FieldKind kind = FieldKind::Scalar,
                      BoundaryCondition bc = BoundaryCondition::Field) {
  ForceQuery q;
  q.medium = std::move(medium);
  q.kind = kind;
  q.bc = bc;
  q.separation = h;
  return q;
}

// 1. Ideal scalar limit.
void criterion_1(Verdict& v) {
  double worst = 0.0;
  double slowest = 0.0;
  for (double h : {0.5, 1.0, 2.0, 5.0}) {
    const auto start = std::chrono::steady_clock::now();
    const ForceResult r = force_field_bc(make_query(Medium::vacuum(), h));
    slowest = std::max(slowest, seconds_since(start));
    const double dev = std::abs(r.force_per_area * std::pow(h, 4) / (-kPi2 / 480.0) - 1.0);
    worst = std::max(worst, dev);
    v.require(r.converged, "converged at H=" + std::to_string(h));
  }
  v.require(worst <= 1e-6, "relative deviation <= 1e-6");
  v.require(slowest < 1.0, "runtime < 1 s per point");
  v.detail << "F H^4 vs -pi^2/480 at H in {0.5,1,2,5}: max rel dev " << worst
           << " (tol 1e-6); slowest point " << slowest << " s (limit 1 s)";
}

// 2. Ideal EM limit.
void criterion_2(Verdict& v) {
  const ForceResult em = force_field_bc(make_query(Medium::vacuum(), 1.0, FieldKind::EM));
  const ForceResult scalar = force_field_bc(make_query(Medium::vacuum(), 1.0));
  const double dev = std::abs(em.force_per_area / (-kPi2 / 240.0) - 1.0);
  v.require(dev <= 1e-6, "relative deviation <= 1e-6");
  v.require(em.force_per_area == 2.0 * scalar.force_per_area, "EM == 2 x scalar");
  v.detail << "EM vacuum at H=1: " << em.force_per_area << " vs -pi^2/240 = " << -kPi2 / 240.0
           << ", rel dev " << dev << " (tol 1e-6); EM/scalar = "
           << em.force_per_area / scalar.force_per_area;
}

// 3. Dispersionless scaling law.
void criterion_3(Verdict& v) {
  double worst = 0.0;
  for (double chi0 : {0.25, 1.25, 3.0, 15.0}) {
    for (double h : {0.5, 1.0, 2.0, 5.0}) {
      const double ratio = nondispersive_scaling_check(chi0, FieldKind::Scalar, h);
      const double expected = 1.0 / std::sqrt(1.0 + chi0);
      worst = std::max(worst, std::abs(ratio - expected) / expected);
    }
  }
  v.require(worst <= 1e-6, "relative deviation <= 1e-6");
  v.detail << "F/F_vac vs (1+chi0)^-1/2 for chi0 in {0.25,1.25,3,15} x H in {0.5,1,2,5}: "
           << "max rel dev " << worst << " (tol 1e-6)";
}

// 4. Polylog route against the nested 2D oracle. The oracle integrand is
// coded here from the closed-form susceptibilities, with no polylogs.
void criterion_4(Verdict& v) {
  struct Case {
    const char* label;
    SusceptibilityModel model;
    std::function<double(double)> n2p2;  // n^2 p0^2
  };
  const std::vector<Case> cases = {
      {"lorentz(1,1,0.1)", Lorentz{1.0, 1.0, 0.1},
       [](double p) { return p * p * (1.0 + 1.0 / (1.0 + p * p + 0.1 * p)); }},
      {"drude(1,0.5)", Drude{1.0, 0.5}, [](double p) { return p * p + p / (p + 0.5); }},
  };
  double worst = 0.0;
  double slowest = 0.0;
  for (const auto& c : cases) {
    for (double h : {0.5, 1.0, 2.0}) {
      const auto start = std::chrono::steady_clock::now();
      const ForceResult r = force_field_bc(make_query(Medium::dielectric(c.model), h));
      const IntegralResult oracle = integrate_2d_oracle(
          [&c, h](double p0, double q) {
            const double e = std::sqrt(c.n2p2(p0) + q * q);
            return q * e / std::expm1(2.0 * e * h);
          },
          QuadratureSpec{}, 1.0 / h);
      slowest = std::max(slowest, seconds_since(start));
      const double expected = -oracle.value / (2.0 * kPi2);
      const double dev = std::abs(r.force_per_area / expected - 1.0);
      worst = std::max(worst, dev);
      v.require(r.converged && oracle.converged,
                std::string("converged ") + c.label + " H=" + std::to_string(h));
    }
  }
  v.require(worst <= 1e-6, "relative deviation <= 1e-6");
  v.require(slowest < 10.0, "runtime < 10 s per point");
  v.detail << "Lorentz(1,1,0.1), Drude(1,0.5) at H in {0.5,1,2}: max rel dev " << worst
           << " (tol 1e-6); slowest point incl. oracle " << slowest << " s (limit 10 s)";
}

// 5. Kramers-Kronig closure.
void criterion_5(Verdict& v) {
  double worst = 0.0;
  for (const SusceptibilityModel& model :
       {SusceptibilityModel{Lorentz{1.0, 1.0, 0.1}}, SusceptibilityModel{Drude{1.0, 0.5}}}) {
    for (int i = 0; i < 20; ++i) {
      const double xi = 1e-2 * std::pow(1e4, i / 19.0);
      const double exact = chi_bar(model, xi);
      worst = std::max(worst, std::abs(kk_imaginary_axis(model, xi).value - exact) / exact);
    }
  }
  v.require(worst <= 1e-6, "relative deviation <= 1e-6");
  v.detail << "dispersion integral vs closed form, Lorentz(1,1,0.1) and Drude(1,0.5), "
           << "20-point log grid on [1e-2, 1e2]: max rel dev " << worst << " (tol 1e-6)";
}

// 6. Effective-action route. Run at H = 1, where delta = 1e-3 leaves a
// central-difference error near 3.5e-6 relative; it grows as H^-2.
void criterion_6(Verdict& v) {
  double worst_ratio_dev = 0.0;
  double worst_agreement = 0.0;
  for (const Medium& m : {Medium::vacuum(), Medium::dielectric(Lorentz{1.0, 1.0, 0.1})}) {
    const ForceQuery q = make_query(m, 1.0);
    const double direct = force_field_bc(q).force_per_area;
    const double coarse = force_via_action_fd(q, 1e-2).force_per_area - direct;
    const double fine = force_via_action_fd(q, 1e-3).force_per_area - direct;
    const double ratio = coarse / fine;
    v.require(ratio >= 80.0 && ratio <= 120.0, "error ratio in [80, 120]");
    worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 100.0));
    worst_agreement = std::max(worst_agreement, std::abs(fine / direct));
  }
  v.require(worst_agreement <= 1e-5, "relative agreement at delta=1e-3 <= 1e-5");
  v.detail << "vacuum and Lorentz(1,1,0.1) at H=1: error ratio delta 1e-2 / 1e-3 within "
           << worst_ratio_dev << " of 100 (allowed [80,120]); rel dev at delta=1e-3 "
           << worst_agreement << " (tol 1e-5)";
}

// 7. Dyson resummation.
void criterion_7(Verdict& v) {
  const Medium m = Medium::dielectric(Lorentz{1.0, 1.0, 0.1});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ks(0.0, 4.0);
  std::uniform_real_distribution<double> ws(-3.0, 3.0);
  int tested = 0;
  double worst_bound_ratio = 0.0;
  double worst_limit = 0.0;
  while (tested < 50) {
    const MomentumFrequencyPoint p{ks(rng), ws(rng), Axis::Real};
    const DysonSum probe = dyson_partial_sum(m, p, 0);
    const double r = std::abs(probe.ratio);
    if (!(r < 0.9)) continue;
    ++tested;
    // Closed form, written out: 1 / (k^2 - w^2 (1 + chi) - i eta sgn w).
    const std::complex<double> chi = chi_real_axis(m.electric, p.freq);
    const std::complex<double> exact =
        1.0 / (p.k * p.k - p.freq * p.freq * (1.0 + chi) -
               std::complex<double>(0.0, kDefaultEta * ((p.freq > 0) - (p.freq < 0))));
    const double bare = std::abs(probe.value);
    for (int n = 0; n <= 30; ++n) {
      const double err = std::abs(dyson_partial_sum(m, p, n).value - exact);
      // Rounding allowance: a few ulps per accumulated term.
      const double bound =
          bare * std::pow(r, n + 1) / (1.0 - r) + 64.0 * kEps * (n + 2) * std::abs(exact);
      worst_bound_ratio = std::max(worst_bound_ratio, err / bound);
    }
    int n = 0;
    while (bare * std::pow(r, n + 1) / (1.0 - r) > 1e-11 * std::abs(exact)) ++n;
    worst_limit =
        std::max(worst_limit, std::abs(dyson_partial_sum(m, p, n).value - exact) / std::abs(exact));
  }
  v.require(worst_bound_ratio <= 1.0, "geometric tail bound at every N <= 30");
  v.require(worst_limit <= 1e-10, "converges within 1e-10");
  v.detail << "50 random points, |r| < 0.9: max error / tail bound " << worst_bound_ratio
           << " (must be <= 1); rel error at bound-chosen N " << worst_limit << " (tol 1e-10)";
}

// 8. Matter-only null result.
void criterion_8(Verdict& v) {
  bool all_zero = true;
  for (double w_res : {0.1, 1.0, 10.0}) {
    for (double p0 : {0.0, 0.3, 3.0}) {
      for (double h : {1e-9, 0.5, 1.0, 100.0}) {
        all_zero = all_zero && reservoir_gap_kernel(w_res, p0, h) == 0.0;
      }
    }
  }
  double largest = 0.0;
  for (double h : {0.5, 1.0, 2.0}) largest = std::max(largest, std::abs(matter_only_force(1.0, h)));
  v.require(all_zero, "reservoir gap entry == 0 for H > 0");
  v.require(largest == 0.0, "force exactly 0");
  v.detail << "reservoir gap entry zero on the sampled grid: " << (all_zero ? "yes" : "no")
           << "; largest |F| " << largest;
}

// 9. Polarization boundary condition.
void criterion_9(Verdict& v) {
  const ForceResult none = force_polarization_bc(
      make_query(Medium::vacuum(), 1.0, FieldKind::Scalar, BoundaryCondition::Polarization));
  v.require(none.force_per_area == 0.0, "chi_e = 0 gives 0");
  v.detail << "chi_e=0: F=" << none.force_per_area << "; ";

  struct Case {
    const char* label;
    SusceptibilityModel model;
    std::function<double(double, double)> integrand;  // independent coding, H = 1
  };
  auto lorentz_integrand = [](double p0, double q) {
    const double chi = 1.0 / (1.0 + p0 * p0 + 0.5 * p0);
    const double detune = 1.0 - p0 * p0;
    const double im = 0.5 * p0 / (detune * detune + 0.25 * p0 * p0);
    const double e = std::sqrt((1.0 + chi) * p0 * p0 + q * q);
    return q * chi * chi * e / ((e * im + chi * chi) * std::exp(2.0 * e) - 1.0);
  };
  auto constant_integrand = [](double p0, double q) {
    const double e = std::sqrt(2.0 * p0 * p0 + q * q);
    return q * e / (std::exp(2.0 * e) - 1.0);
  };
  const std::vector<Case> cases = {{"constant(1)", Constant{1.0}, constant_integrand},
                                   {"lorentz(1,1,0.5)", Lorentz{1.0, 1.0, 0.5}, lorentz_integrand}};
  for (const auto& c : cases) {
    const Medium m = Medium::dielectric(c.model);
    const ForceResult ii =
        force_polarization_bc(make_query(m, 1.0, FieldKind::Scalar, BoundaryCondition::Polarization));
    const ForceResult i = force_field_bc(make_query(m, 1.0));
    const double oracle = -oracle::quadrant(c.integrand) / (2.0 * kPi2);
    const double dev = std::abs(ii.force_per_area / oracle - 1.0);
    const std::string label = c.label;
    v.require(ii.force_per_area < 0.0, label + " negative");
    v.require(std::abs(ii.force_per_area) < std::abs(i.force_per_area),
              label + " |F_ii| < |F_i|");
    v.require(dev <= 1e-6, label + " matches oracle to 1e-6");
    v.detail << label << ": F_ii=" << ii.force_per_area << " F_i=" << i.force_per_area
             << " |F_ii|/|F_i|=" << std::abs(ii.force_per_area / i.force_per_area)
             << " oracle rel dev " << dev << "; ";
  }
}

// 10. Special functions.
void criterion_10(Verdict& v) {
  const double li2 = std::abs(polylog(2, 1.0) - kPi2 / 6.0);
  const double li3 = std::abs(polylog(3, 1.0) - 1.2020569031595942854);
  QuadratureSpec spec;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 1e-14;
  // Scale 2 is twice the e^{-x} decay length, keeping the mapped integrand
  // smooth at the far end.
  const IntegralResult bose =
      integrate_1d([](double x) { return x * x * x / std::expm1(x); }, HalfLine{0.0, 2.0}, spec);
  const double integral = std::abs(bose.value - kPi2 * kPi2 / 15.0);
  v.require(li2 <= 1e-12, "Li2(1)");
  v.require(li3 <= 1e-12, "Li3(1)");
  v.require(integral <= 1e-12, "Bose integral");
  v.detail << "|Li2(1) - pi^2/6| = " << li2 << ", |Li3(1) - zeta(3)| = " << li3
           << ", |int x^3/(e^x-1) - pi^4/15| = " << integral << " (tol 1e-12 each)";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
  int only = 0;
  app.add_option("--criterion", only, "Run only this criterion (1-10)")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::function<void(Verdict&)>> criteria = {
      {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
      {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
      {9, criterion_9}, {10, criterion_10}};

  bool all = true;
  for (const auto& [id, run] : criteria) {
    if (only != 0 && id != only) continue;
    Verdict v;
    try {
      run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "[exception: " << e.what() << "]";
    }
    std::printf("criterion %2d: %s  %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.str().c_str());
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
