#include <doctest.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/error.hpp"
#include "casimir/medium.hpp"

using namespace casimir;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorKind kind_of(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected casimir::Error");
  return ErrorKind::Domain;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  }
  return out;
}

// Coupling g(w') whose dispersion integral is the Lorentz closed form.
double lorentz_coupling(const Lorentz& m, double w) {
  const double detune = w * w - m.omega_0 * m.omega_0;
  return (2.0 / kPi) * m.gamma * w * w * m.omega_p * m.omega_p /
         (detune * detune + m.gamma * m.gamma * w * w);
}

TabulatedCoupling sampled_lorentz(const Lorentz& m, double lo, double hi, int points) {
  std::vector<double> w;
  std::vector<double> g;
  for (int i = 0; i < points; ++i) {
    w.push_back(lo + (hi - lo) * i / (points - 1));
    g.push_back(lorentz_coupling(m, w.back()));
  }
  return TabulatedCoupling(w, g);
}

// PV int_{x0}^{xN} g(x) / (x^2 - w^2) dx through GSL's Cauchy-weight rule.
double principal_value_oracle(const TabulatedCoupling& t, double omega) {
  gsl_set_error_handler_off();
  struct Ctx {
    const TabulatedCoupling* t;
    double omega;
  } ctx{&t, omega};
  gsl_function fn{[](double x, void* p) {
                    const auto* c = static_cast<Ctx*>(p);
                    return c->t->coupling(x) / (x + c->omega);
                  },
                  &ctx};
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
  double result = 0.0;
  double err = 0.0;
  gsl_integration_qawc(&fn, t.frequencies().front(), t.frequencies().back(), omega, 0.0,
                       1e-11, 4000, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  return result;
}

}  // namespace

TEST_CASE("chi_bar closed forms") {
  CHECK(chi_bar(Constant{3.0}, 7.0) == 3.0);
  CHECK(chi_bar(SharpResonance{2.0, 1.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(chi_bar(Lorentz{1.0, 2.0, 0.5}, 3.0) == doctest::Approx(1.0 / 14.5).epsilon(1e-15));
  CHECK(chi_bar(Drude{1.0, 0.5}, 2.0) == doctest::Approx(1.0 / 5.0).epsilon(1e-15));
  CHECK(kind_of([] { chi_bar(Drude{1.0, 0.5}, 0.0); }) == ErrorKind::Domain);
  CHECK(kind_of([] { chi_bar(Lorentz{1.0, 1.0, 0.1}, -1.0); }) == ErrorKind::Domain);
}

TEST_CASE("tabulated coupling reproduces the Lorentz dispersion integral") {
  const Lorentz lorentz{1.0, 1.0, 0.1};
  const TabulatedCoupling table = sampled_lorentz(lorentz, 1e-3, 40.0, 40000);
  QuadratureSpec spec;
  spec.max_subdivisions = 100000;
  CHECK(chi_bar(table, 0.5, spec) == doctest::Approx(chi_bar(lorentz, 0.5)).epsilon(1e-4));
}

TEST_CASE("tabulated coupling interpolation and validation") {
  const TabulatedCoupling t({1.0, 2.0, 4.0}, {0.0, 2.0, 0.0});
  CHECK(t.coupling(0.5) == 0.0);
  CHECK(t.coupling(1.5) == doctest::Approx(1.0));
  CHECK(t.coupling(2.0) == 2.0);
  CHECK(t.coupling(3.0) == doctest::Approx(1.0));
  CHECK(t.coupling(4.0) == 0.0);
  CHECK(t.coupling(5.0) == 0.0);

  CHECK(kind_of([] { TabulatedCoupling({1.0}, {1.0}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { TabulatedCoupling({1.0, 2.0}, {1.0}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { TabulatedCoupling({2.0, 1.0}, {1.0, 1.0}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { TabulatedCoupling({0.0, 1.0}, {1.0, 1.0}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { TabulatedCoupling({1.0, 2.0}, {1.0, -1.0}); }) == ErrorKind::InvalidModel);
}

TEST_CASE("validate rejects out-of-range parameters") {
  CHECK(kind_of([] { validate(Constant{-0.1}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { validate(Lorentz{0.0, 1.0, 0.1}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { validate(Lorentz{1.0, 1.0, -0.1}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { validate(Drude{1.0, 0.0}); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { validate(SharpResonance{1.0, -1.0}); }) == ErrorKind::InvalidModel);
  CHECK_NOTHROW(validate(Lorentz{1.0, 1.0, 0.0}));
}

TEST_CASE("absorption on the real axis") {
  CHECK(im_chi_real_axis(Constant{3.0}, 1.0) == 0.0);
  CHECK(im_chi_real_axis(Lorentz{1.0, 1.0, 0.1}, 1.0) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(im_chi_real_axis(Lorentz{1.0, 1.0, 0.1}, 2.0) ==
        doctest::Approx(0.2 / 9.04).epsilon(1e-14));
  CHECK(im_chi_real_axis(SharpResonance{1.0, 2.0}, 1.0) == 0.0);
  CHECK(kind_of([] { im_chi_real_axis(SharpResonance{1.0, 2.0}, 2.0); }) ==
        ErrorKind::UnsupportedDistribution);
  CHECK(kind_of([] { im_chi_real_axis(Lorentz{1.0, 1.0, 0.1}, 0.0); }) == ErrorKind::Domain);
  CHECK(kind_of([] { im_chi_real_axis(Lorentz{1.0, 1.0, 0.1}, -1.0); }) == ErrorKind::Domain);
}

TEST_CASE("the absorption normalization closes the dispersion relation") {
  // Im chi of Lorentz{1,1,0.1} at w = 2 is only meaningful if the KK
  // integral of w Im chi rebuilds chi_bar.
  const Lorentz lorentz{1.0, 1.0, 0.1};
  for (double xi : {0.0, 0.5, 2.0}) {
    const IntegralResult r = kk_imaginary_axis(lorentz, xi);
    CHECK(r.converged);
    CHECK(std::abs(r.value - chi_bar(lorentz, xi)) <= 1e-6 * chi_bar(lorentz, xi));
  }
  CHECK(std::abs(kk_imaginary_axis(Lorentz{1.0, 2.0, 0.5}, 3.0).value - 1.0 / 14.5) <= 1e-6);
}

TEST_CASE("Kramers-Kronig closure on a log grid") {
  const std::vector<SusceptibilityModel> models = {Lorentz{1.0, 1.0, 0.1}, Drude{1.0, 0.5},
                                                   Lorentz{2.0, 0.3, 1.5}, Drude{3.0, 0.05}};
  for (const auto& model : models) {
    for (double xi : log_grid(1e-2, 1e2, 20)) {
      CAPTURE(xi);
      const double exact = chi_bar(model, xi);
      CHECK(std::abs(kk_imaginary_axis(model, xi).value - exact) <= 1e-6 * exact);
    }
  }
}

TEST_CASE("Kramers-Kronig closure for a tabulated coupling") {
  const TabulatedCoupling t({0.5, 1.0, 1.5, 3.0}, {0.0, 2.0, 1.0, 0.0});
  for (double xi : {0.0, 0.3, 4.0}) {
    const double direct = chi_bar(t, xi);
    CHECK(kk_imaginary_axis(t, xi).value == doctest::Approx(direct).epsilon(1e-9));
  }
}

TEST_CASE("dispersion relation preconditions") {
  CHECK(kind_of([] { kk_imaginary_axis(Constant{3.0}, 1.0); }) == ErrorKind::InvalidModel);
  CHECK(kind_of([] { kk_imaginary_axis(Lorentz{1.0, 1.0, 0.0}, 1.0); }) ==
        ErrorKind::InvalidModel);
  CHECK(kind_of([] { kk_imaginary_axis(SharpResonance{1.0, 1.0}, 1.0); }) ==
        ErrorKind::InvalidModel);
  CHECK(kind_of([] { kk_imaginary_axis(Drude{1.0, 0.5}, 0.0); }) == ErrorKind::Domain);
}

TEST_CASE("complex susceptibility on the real axis") {
  const Lorentz lorentz{1.2, 0.8, 0.3};
  for (double w : {0.1, 0.8, 1.7, 5.0}) {
    const auto chi = chi_real_axis(lorentz, w);
    CHECK(chi.imag() == doctest::Approx(im_chi_real_axis(lorentz, w)).epsilon(1e-14));
    const auto mirrored = chi_real_axis(lorentz, -w);
    CHECK(mirrored.real() == doctest::Approx(chi.real()).epsilon(1e-15));
    CHECK(mirrored.imag() == doctest::Approx(-chi.imag()).epsilon(1e-15));
  }
  CHECK(chi_real_axis(Lorentz{1.0, 2.0, 0.0}, 0.0).real() == doctest::Approx(0.25));
  CHECK(chi_real_axis(Constant{3.0}, 9.0).real() == 3.0);
  CHECK(kind_of([] { chi_real_axis(Drude{1.0, 0.5}, 0.0); }) == ErrorKind::Domain);
  CHECK(kind_of([] { chi_real_axis(SharpResonance{1.0, 2.0}, -2.0); }) ==
        ErrorKind::UnsupportedDistribution);
  CHECK(kind_of([] { chi_real_axis(Lorentz{1.0, 2.0, 0.0}, 2.0); }) ==
        ErrorKind::UnsupportedDistribution);
}

TEST_CASE("tabulated real part matches a principal-value oracle") {
  const TabulatedCoupling t({0.5, 1.0, 1.5, 3.0}, {0.3, 2.0, 1.0, 0.2});
  for (double w : {0.2, 0.7, 1.0, 1.2, 2.9, 4.0}) {
    CAPTURE(w);
    const auto chi = chi_real_axis(t, w);
    CHECK(chi.real() == doctest::Approx(principal_value_oracle(t, w)).epsilon(1e-9));
    CHECK(chi.imag() == doctest::Approx(im_chi_real_axis(t, w)).epsilon(1e-15));
  }
  // A jump at a grid end is a genuine logarithmic singularity.
  CHECK(kind_of([&t] { chi_real_axis(t, 0.5); }) == ErrorKind::Pole);
}

TEST_CASE("refractive index") {
  CHECK(refractive_index(Medium::vacuum(), FieldKind::Scalar, 5.0) == 1.0);
  CHECK(refractive_index(Medium::dielectric(Constant{3.0}), FieldKind::Scalar, 0.7) == 2.0);
  const Medium magnetic{Constant{1.0}, Constant{0.5}};
  CHECK(refractive_index(magnetic, FieldKind::EM, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(refractive_index(magnetic, FieldKind::Scalar, 2.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  const Medium unstable{Constant{0.0}, Constant{1.0}};
  CHECK(kind_of([&] { refractive_index(unstable, FieldKind::EM, 1.0); }) ==
        ErrorKind::MediumInstability);
  CHECK_NOTHROW(refractive_index(unstable, FieldKind::Scalar, 1.0));
}

TEST_CASE("mode frequency stays finite for Drude media at zero frequency") {
  const Medium drude = Medium::dielectric(Drude{1.0, 0.5});
  CHECK(mode_frequency_squared(drude, FieldKind::Scalar, 0.0) == 0.0);
  const double p0 = 0.3;
  CHECK(mode_frequency_squared(drude, FieldKind::Scalar, p0) ==
        doctest::Approx(p0 * p0 * (1.0 + chi_bar(Drude{1.0, 0.5}, p0))).epsilon(1e-14));
}

TEST_CASE("chi_bar is positive, non-increasing and decays") {
  const std::vector<SusceptibilityModel> models = {
      Lorentz{1.0, 1.0, 0.1}, Lorentz{0.5, 3.0, 0.0}, Drude{1.0, 0.5}, SharpResonance{2.0, 1.0},
      TabulatedCoupling({0.5, 1.0, 2.0}, {1.0, 3.0, 0.5})};
  for (const auto& model : models) {
    double previous = INFINITY;
    for (double xi : log_grid(1e-3, 1e3, 60)) {
      const double v = chi_bar(model, xi);
      CHECK(std::isfinite(v));
      CHECK(v > 0.0);
      CHECK(v <= previous);
      previous = v;
    }
    const double big = 1e3 * characteristic_frequency(model);
    const double reference = diverges_at_zero_frequency(model) ? chi_bar(model, 1e-3)
                                                               : chi_bar(model, 0.0);
    CHECK(chi_bar(model, big) < 1e-3 * reference);
  }
}

TEST_CASE("sharp resonance is the lossless Lorentz limit") {
  const SharpResonance sharp{1.5, 0.8};
  const Lorentz narrow{1.5, 0.8, 1e-6};
  for (double xi : log_grid(0.1, 100.0, 25)) {
    CHECK(chi_bar(narrow, xi) == doctest::Approx(chi_bar(sharp, xi)).epsilon(1e-4));
  }
}

TEST_CASE("refractive index is non-increasing for dispersive media") {
  const std::vector<Medium> media = {Medium::dielectric(Lorentz{1.0, 1.0, 0.1}),
                                     Medium::dielectric(Drude{1.0, 0.5}),
                                     Medium::dielectric(SharpResonance{2.0, 1.0})};
  for (const auto& medium : media) {
    for (FieldKind kind : {FieldKind::Scalar, FieldKind::EM}) {
      double previous = INFINITY;
      for (double xi : log_grid(1e-3, 1e3, 60)) {
        const double n = refractive_index(medium, kind, xi);
        CHECK(n >= 1.0);
        CHECK(n <= previous);
        previous = n;
      }
    }
  }
}
