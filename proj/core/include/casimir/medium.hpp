#pragma once

// Susceptibility models of a continuum of oscillators coupled to the field.
// Only the ratio g(w') = nu^2(w') / rho is representable; every observable
// depends on the oscillator density through this ratio alone.
//
// Conventions (natural units, hbar = c = 1):
//   chi(w)      = int dw' g(w') / (w'^2 - w^2 - i0+)      real axis
//   chi_bar(xi) = int dw' g(w') / (w'^2 + xi^2)           imaginary axis
//   Im chi(w)   = (pi / 2) g(w) / w                       w > 0

#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "casimir/quadrature.hpp"

namespace casimir {

struct Constant {
  double chi0 = 0.0;
};

struct Lorentz {
  double omega_p;
  double omega_0;
  double gamma;
};

struct Drude {
  double omega_p;
  double gamma;
};

/// Coupling concentrated on one frequency: g(w') = omega_p^2 delta(w' - omega_0).
struct SharpResonance {
  double omega_p;
  double omega_0;
};

/// g(w') sampled on an ascending positive grid; linear in between, zero
/// outside the grid.
class TabulatedCoupling {
 public:
  TabulatedCoupling(std::vector<double> frequencies, std::vector<double> coupling);

  double coupling(double omega) const;
  std::span<const double> frequencies() const { return frequencies_; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> frequencies_;
  std::vector<double> values_;
};

using SusceptibilityModel =
    std::variant<Constant, Lorentz, Drude, SharpResonance, TabulatedCoupling>;

/// Throws Error(InvalidModel) when a parameter violates its sign constraint.
void validate(const SusceptibilityModel& model);

/// Largest frequency parameter of the model (0 for Constant).
double characteristic_frequency(const SusceptibilityModel& model);

/// True when the model has absorption somewhere on the real axis.
bool is_absorptive(const SusceptibilityModel& model);

/// True when chi_bar diverges as xi -> 0 (Drude).
bool diverges_at_zero_frequency(const SusceptibilityModel& model);

/// Susceptibility at imaginary frequency xi >= 0. Drude at xi = 0 throws
/// Error(Domain). Tabulated models are integrated with `quad` and throw
/// IntegrationError when it cannot be met.
double chi_bar(const SusceptibilityModel& model, double xi,
               const QuadratureSpec& quad = {});

/// xi^2 chi_bar(xi), which stays finite at xi = 0 for every model.
double xi_squared_chi_bar(const SusceptibilityModel& model, double xi,
                          const QuadratureSpec& quad = {});

/// Complex susceptibility on the real frequency axis. chi(-w) = conj(chi(w)).
std::complex<double> chi_real_axis(const SusceptibilityModel& model, double omega);

/// Im chi(w) for w > 0.
double im_chi_real_axis(const SusceptibilityModel& model, double omega);

/// chi_bar(xi) rebuilt from the absorption alone:
///   (2/pi) int_0^inf w Im chi(w) / (w^2 + xi^2) dw.
/// Requires an absorptive model. The algebraic tail beyond the model's
/// features is always mapped rationally. Non-convergence throws.
IntegralResult kk_imaginary_axis(const SusceptibilityModel& model, double xi,
                                 const QuadratureSpec& quad = {});

enum class FieldKind { Scalar, EM };

/// Electric and magnetic response of the gap filling. Scalar fields only
/// see the electric model.
struct Medium {
  SusceptibilityModel electric = Constant{0.0};
  SusceptibilityModel magnetic = Constant{0.0};

  static Medium vacuum() { return {}; }
  static Medium dielectric(SusceptibilityModel electric) {
    return Medium{std::move(electric), Constant{0.0}};
  }
};

/// eps_bar(xi) = 1 + chi_bar_e(xi).
double permittivity_bar(const Medium& medium, double xi);

/// mu_bar(xi) = 1 / (1 - chi_bar_m(xi)); throws Error(MediumInstability)
/// once chi_bar_m reaches 1.
double permeability_bar(const Medium& medium, double xi);

/// Scalar: sqrt(eps_bar). EM: sqrt(eps_bar mu_bar).
double refractive_index(const Medium& medium, FieldKind kind, double xi);

/// n^2(p0) p0^2, evaluated so that Drude media stay finite as p0 -> 0.
double mode_frequency_squared(const Medium& medium, FieldKind kind, double p0);

}  // namespace casimir
