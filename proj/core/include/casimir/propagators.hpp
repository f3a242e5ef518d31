#pragma once

// Free and dressed two-point functions in Fourier space, on the real
// frequency axis (retarded, with an explicit shift eta in place of i0+) and
// on the Euclidean axis, plus the gap kernel that couples the two plates.

#include <complex>
#include <string_view>

#include "casimir/medium.hpp"

namespace casimir {

inline constexpr double kDefaultEta = 1e-8;

enum class Axis { Real, Euclidean };

enum class PropagatorKind { G0, Gomega, Gphiphi, GphiP, GphiM, GPP, GMM };

std::string_view to_string(Axis axis);
std::string_view to_string(PropagatorKind kind);

struct MomentumFrequencyPoint {
  double k = 0.0;     // |k| >= 0
  double freq = 0.0;  // omega on the real axis, xi >= 0 on the Euclidean axis
  Axis axis = Axis::Euclidean;
};

struct PropagatorValue {
  std::complex<double> value;
  PropagatorKind kind;
  Axis axis;
};

/// 1 / (k^2 - w^2 - i eta sgn(w)). With eta = 0 a point on the light cone
/// (|k^2 - w^2| <= 1e-12) throws Error(Pole). (k, w) = (0, 0) always throws.
std::complex<double> g0(double k, double omega, double eta = kDefaultEta);

/// Reservoir oscillator propagator 1 / (w_res^2 - w'^2 - i eta); it carries
/// no momentum dependence.
std::complex<double> g_omega(double omega_res, double omega_prime,
                             double eta = kDefaultEta);

/// Dressed field propagator.
///   Real:      1 / (k^2 (1 - chi_m) - w^2 (1 + chi_e) - i eta sgn(w))
///   Euclidean: 1 / (k^2 (1 - chi_bar_m) + xi^2 (1 + chi_bar_e))
/// Scalar fields drop chi_m.
PropagatorValue g_phiphi(const Medium& medium, FieldKind kind,
                         const MomentumFrequencyPoint& point,
                         double eta = kDefaultEta);

struct CrossCorrelators {
  std::complex<double> phi_p;  // i w chi_e G
  std::complex<double> phi_m;  // i |k| w chi_m G
  std::complex<double> pp;     // Im chi_e + w^2 chi_e^2 G
  std::complex<double> mm;     // Im chi_m + |k|^2 chi_m^2 G
};

/// Field-matter correlators on the real axis, built on the EM propagator.
/// The noise terms use Im chi, which is odd in w and zero at w = 0.
CrossCorrelators cross_correlators(const Medium& medium,
                                   const MomentumFrequencyPoint& point,
                                   double eta = kDefaultEta);

struct DysonSum {
  std::complex<double> value;
  std::complex<double> ratio;  // r = w^2 chi_e(w) g0(k, w)
  int order = 0;
  bool convergent = false;     // |r| < 1
};

/// g0 * sum_{n=0}^{order} r^n for the electric coupling. A series with
/// |r| >= 1 is flagged through `convergent` rather than thrown.
DysonSum dyson_partial_sum(const Medium& medium,
                           const MomentumFrequencyPoint& point, int order,
                           double eta = kDefaultEta);

struct GapKernel {
  double energy = 0.0;      // E = sqrt(n^2 p0^2 + q^2)
  double separation = 0.0;
  double value = 0.0;       // e^{-E H} / (2E)
  double multiplier = 1.0;  // mu_bar(p0) for EM, 1 for scalar; H independent
};

GapKernel gap_kernel(const Medium& medium, FieldKind kind, double p0, double q,
                     double separation);

/// Euclidean reservoir propagator 1 / (w_res^2 + p0^2). It is local in
/// space, so its plate-to-plate entry vanishes for every H > 0; at H = 0 the
/// contact weight is returned.
double reservoir_gap_kernel(double omega_res, double p0, double separation);

}  // namespace casimir
