#include "casimir/propagators.hpp"

#include <cmath>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

namespace {

using C = std::complex<double>;

constexpr double kLightConeTolerance = 1e-12;

double sign(double x) { return (x > 0.0) - (x < 0.0); }

void require_point(const MomentumFrequencyPoint& p) {
  if (!(p.k >= 0.0) || !std::isfinite(p.k) || !std::isfinite(p.freq)) {
    throw Error(ErrorKind::Domain, "momentum must be >= 0 and frequency finite");
  }
  if (p.axis == Axis::Euclidean && p.freq < 0.0) {
    throw Error(ErrorKind::Domain, "euclidean frequency must be >= 0");
  }
}

C inverse_or_pole(C denom, double eta, double scale, const char* what) {
  if (eta == 0.0 && std::abs(denom) <= kLightConeTolerance * std::max(1.0, scale)) {
    throw Error(ErrorKind::Pole, what);
  }
  return 1.0 / denom;
}

}  // namespace

std::string_view to_string(Axis axis) {
  return axis == Axis::Real ? "real" : "euclidean";
}

std::string_view to_string(PropagatorKind kind) {
  switch (kind) {
    case PropagatorKind::G0: return "G0";
    case PropagatorKind::Gomega: return "Gomega";
    case PropagatorKind::Gphiphi: return "Gphiphi";
    case PropagatorKind::GphiP: return "GphiP";
    case PropagatorKind::GphiM: return "GphiM";
    case PropagatorKind::GPP: return "GPP";
    case PropagatorKind::GMM: return "GMM";
  }
  return "unknown";
}

C g0(double k, double omega, double eta) {
  if (!(eta >= 0.0)) throw Error(ErrorKind::Domain, "eta must be >= 0");
  if (std::abs(k) <= kLightConeTolerance && std::abs(omega) <= kLightConeTolerance) {
    throw Error(ErrorKind::Pole, "free propagator is singular at k = w = 0");
  }
  const C denom(k * k - omega * omega, -eta * sign(omega));
  return inverse_or_pole(denom, eta, k * k + omega * omega,
                         "free propagator evaluated on the light cone with eta = 0");
}

C g_omega(double omega_res, double omega_prime, double eta) {
  if (!(omega_res > 0.0)) throw Error(ErrorKind::Domain, "reservoir frequency must be > 0");
  if (!(eta >= 0.0)) throw Error(ErrorKind::Domain, "eta must be >= 0");
  const C denom(omega_res * omega_res - omega_prime * omega_prime, -eta);
  return inverse_or_pole(denom, eta, omega_res * omega_res,
                         "reservoir propagator evaluated on resonance with eta = 0");
}

PropagatorValue g_phiphi(const Medium& medium, FieldKind kind,
                         const MomentumFrequencyPoint& point, double eta) {
  require_point(point);
  const double k2 = point.k * point.k;
  const double w = point.freq;
  if (point.axis == Axis::Euclidean) {
    double magnetic = 1.0;
    if (kind == FieldKind::EM) {
      const double chi_m = chi_bar(medium.magnetic, w);
      if (!(chi_m < 1.0)) {
        throw Error(ErrorKind::MediumInstability,
                    "magnetic susceptibility >= 1 on the imaginary axis");
      }
      magnetic = 1.0 - chi_m;
    }
    const double denom = k2 * magnetic + w * w + xi_squared_chi_bar(medium.electric, w);
    if (!(denom > 0.0)) {
      throw Error(ErrorKind::Pole, "euclidean propagator is singular at k = xi = 0");
    }
    return {C(1.0 / denom, 0.0), PropagatorKind::Gphiphi, Axis::Euclidean};
  }

  if (!(eta >= 0.0)) throw Error(ErrorKind::Domain, "eta must be >= 0");
  const C chi_e = chi_real_axis(medium.electric, w);
  const C chi_m = kind == FieldKind::EM ? chi_real_axis(medium.magnetic, w) : C(0.0);
  const C denom = k2 * (1.0 - chi_m) - w * w * (1.0 + chi_e) - C(0.0, eta * sign(w));
  const C value = inverse_or_pole(denom, eta, k2 + w * w,
                                  "dressed propagator evaluated on its pole with eta = 0");
  return {value, PropagatorKind::Gphiphi, Axis::Real};
}

CrossCorrelators cross_correlators(const Medium& medium,
                                   const MomentumFrequencyPoint& point, double eta) {
  if (point.axis != Axis::Real) {
    throw Error(ErrorKind::Domain, "cross correlators are defined on the real axis");
  }
  require_point(point);
  const double w = point.freq;
  const double k = point.k;
  const C g = g_phiphi(medium, FieldKind::EM, point, eta).value;
  const C chi_e = chi_real_axis(medium.electric, w);
  const C chi_m = chi_real_axis(medium.magnetic, w);
  const C i(0.0, 1.0);

  auto noise = [w](const SusceptibilityModel& m) {
    if (w == 0.0) return 0.0;
    const double im = im_chi_real_axis(m, std::abs(w));
    return w > 0.0 ? im : -im;
  };

  CrossCorrelators out;
  out.phi_p = i * w * chi_e * g;
  out.phi_m = i * k * w * chi_m * g;
  out.pp = noise(medium.electric) + w * w * chi_e * chi_e * g;
  out.mm = noise(medium.magnetic) + k * k * chi_m * chi_m * g;
  return out;
}

DysonSum dyson_partial_sum(const Medium& medium, const MomentumFrequencyPoint& point,
                           int order, double eta) {
  if (point.axis != Axis::Real) {
    throw Error(ErrorKind::Domain, "the Dyson series is checked on the real axis");
  }
  if (order < 0) throw Error(ErrorKind::Domain, "series order must be >= 0");
  require_point(point);
  const double w = point.freq;
  const C bare = g0(point.k, w, eta);
  const C r = w == 0.0 ? C(0.0) : w * w * chi_real_axis(medium.electric, w) * bare;

  DysonSum out;
  out.ratio = r;
  out.order = order;
  out.convergent = std::abs(r) < 1.0;
  C term(1.0, 0.0);
  C sum(1.0, 0.0);
  for (int n = 1; n <= order; ++n) {
    term *= r;
    sum += term;
  }
  out.value = bare * sum;
  return out;
}

GapKernel gap_kernel(const Medium& medium, FieldKind kind, double p0, double q,
                     double separation) {
  if (!(p0 >= 0.0) || !(q >= 0.0) || !(separation >= 0.0) || !std::isfinite(separation)) {
    throw Error(ErrorKind::Domain, "gap kernel needs p0, q, H >= 0");
  }
  const double energy = std::sqrt(mode_frequency_squared(medium, kind, p0) + q * q);
  if (!(energy > 0.0)) {
    throw Error(ErrorKind::DegenerateMode, "mode energy vanishes at p0 = q = 0");
  }
  GapKernel out;
  out.energy = energy;
  out.separation = separation;
  out.value = std::exp(-energy * separation) / (2.0 * energy);
  out.multiplier = kind == FieldKind::EM ? permeability_bar(medium, p0) : 1.0;
  return out;
}

double reservoir_gap_kernel(double omega_res, double p0, double separation) {
  if (!(omega_res > 0.0)) throw Error(ErrorKind::Domain, "reservoir frequency must be > 0");
  if (!(separation >= 0.0)) throw Error(ErrorKind::Domain, "separation must be >= 0");
  if (separation > 0.0) return 0.0;
  return 1.0 / (omega_res * omega_res + p0 * p0);
}

}  // namespace casimir
