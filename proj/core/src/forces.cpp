#include "casimir/forces.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "casimir/error.hpp"
#include "casimir/propagators.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

void require_separation(double separation) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw Error(ErrorKind::Domain, "plate separation must be positive and finite");
  }
}

int multiplicity(const ForceQuery& q) {
  const int m = q.polarization_multiplicity;
  if (q.kind == FieldKind::Scalar) {
    if (m != 0 && m != 1) {
      throw Error(ErrorKind::Domain, "a scalar field has exactly one polarization");
    }
    return 1;
  }
  if (m == 0) return 2;
  if (m != 1 && m != 2) {
    throw Error(ErrorKind::Domain, "EM polarization multiplicity must be 1 or 2");
  }
  return m;
}

void validate_medium(const ForceQuery& q) {
  validate(q.medium.electric);
  if (q.kind == FieldKind::EM) {
    validate(q.medium.magnetic);
  }
}

// Lower end of the p0 integration. Media whose chi_bar diverges at zero
// frequency start the open interval a machine-epsilon-scaled step above 0.
double p0_lower_limit(const ForceQuery& q, double scale) {
  const bool divergent =
      diverges_at_zero_frequency(q.medium.electric) ||
      (q.kind == FieldKind::EM && diverges_at_zero_frequency(q.medium.magnetic));
  return divergent ? 64.0 * std::numeric_limits<double>::epsilon() * scale : 0.0;
}

// chi_bar_m is non-increasing, so its largest value sits at the lower limit.
void check_magnetic_stability(const ForceQuery& q, double p0_min) {
  if (q.kind == FieldKind::EM) (void)permeability_bar(q.medium, p0_min);
}

double mode_lower_limit(const ForceQuery& q, double p0) {
  return std::sqrt(mode_frequency_squared(q.medium, q.kind, p0));
}

ForceResult finish(const ForceQuery& q, int m, double prefactor, const IntegralResult& r) {
  ForceResult out;
  out.separation = q.separation;
  out.force_per_area = prefactor * r.value;
  out.error_estimate = std::abs(prefactor) * r.error_estimate;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  out.vacuum_ratio =
      out.force_per_area / (m * vacuum_force_analytic(FieldKind::Scalar, q.separation));
  return out;
}

double logdet_from_entries(double diagonal, double off_diagonal) {
  const double ratio = off_diagonal / diagonal;
  return std::log1p(-ratio * ratio);
}

void require_mode(double energy, double separation) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw Error(ErrorKind::Domain, "mode energy must be positive");
  }
  if (!(separation >= 0.0)) throw Error(ErrorKind::Domain, "separation must be >= 0");
  if (separation == 0.0) {
    throw Error(ErrorKind::DegenerateMode, "gap matrix is singular at H = 0");
  }
}

}  // namespace

double vacuum_force_analytic(FieldKind kind, double separation) {
  require_separation(separation);
  const double h2 = separation * separation;
  const double scalar = -kPi2 / (480.0 * h2 * h2);
  return kind == FieldKind::EM ? 2.0 * scalar : scalar;
}

ForceResult force_field_bc(const ForceQuery& query) {
  require_separation(query.separation);
  if (query.bc != BoundaryCondition::Field) {
    throw Error(ErrorKind::Domain, "force_field_bc needs the field boundary condition");
  }
  validate_medium(query);
  const int m = multiplicity(query);
  const double h = query.separation;
  const double scale = 1.0 / h;
  const double lower = p0_lower_limit(query, scale);
  check_magnetic_stability(query, lower);

  const IntegralResult r = integrate_1d(
      [&query, h](double p0) { return inner_mode_integral(mode_lower_limit(query, p0), h); },
      HalfLine{lower, scale}, query.spec);
  return finish(query, m, -m / (2.0 * kPi2), r);
}

double polarization_absorption(const SusceptibilityModel& electric, double p0) {
  if (p0 == 0.0) return 0.0;
  return im_chi_real_axis(electric, p0);
}

ForceResult force_polarization_bc(const ForceQuery& query) {
  require_separation(query.separation);
  if (query.bc != BoundaryCondition::Polarization) {
    throw Error(ErrorKind::Domain, "force_polarization_bc needs the polarization condition");
  }
  if (query.kind != FieldKind::Scalar) {
    throw Error(ErrorKind::Domain,
                "polarization boundary conditions are defined for the scalar field only");
  }
  validate_medium(query);
  const double h = query.separation;

  // The nested integrator sweeps q at fixed p0; cache the p0-only factors.
  double cached_p0 = -1.0;
  double chi = 0.0;
  double absorption = 0.0;
  double mode_sq = 0.0;
  const Integrand2d integrand = [&](double p0, double q) {
    if (p0 != cached_p0) {
      cached_p0 = p0;
      chi = chi_bar(query.medium.electric, p0, query.spec);
      absorption = chi == 0.0 ? 0.0 : polarization_absorption(query.medium.electric, p0);
      mode_sq = mode_frequency_squared(query.medium, FieldKind::Scalar, p0);
    }
    if (chi == 0.0) return 0.0;
    const double energy = std::sqrt(mode_sq + q * q);
    const double x = 2.0 * energy * h;
    if (x > 700.0) return 0.0;
    const double chi2 = chi * chi;
    const double alpha = energy * absorption + chi2;
    const double alpha_minus_one = energy * absorption + (chi - 1.0) * (chi + 1.0);
    const double denom = alpha * std::expm1(x) + alpha_minus_one;
    if (!(denom > 0.0)) {
      std::ostringstream msg;
      msg << "polarization-condition denominator alpha e^{2EH} - 1 = " << denom
          << " <= 0 at p0 = " << p0 << ", q = " << q;
      throw Error(ErrorKind::InvalidRegime, msg.str());
    }
    return q * chi2 * energy / denom;
  };

  const IntegralResult r = integrate_2d_oracle(integrand, query.spec, 1.0 / h);
  return finish(query, 1, -1.0 / (2.0 * kPi2), r);
}

ForceResult compute_force(const ForceQuery& query) {
  return query.bc == BoundaryCondition::Field ? force_field_bc(query)
                                              : force_polarization_bc(query);
}

ModeLogDet mode_logdet(double energy, double separation) {
  require_mode(energy, separation);
  const double diagonal = 1.0 / (2.0 * energy);
  const double off_diagonal = std::exp(-energy * separation) / (2.0 * energy);
  return {energy, separation, logdet_from_entries(diagonal, off_diagonal)};
}

ModeLogDet mode_logdet_neumann(double energy, double separation) {
  require_mode(energy, separation);
  // -d^2/dz^2 of e^{-E|z|} / (2E) away from z = 0 is -E e^{-E|z|} / 2.
  const double diagonal = -0.5 * energy;
  const double off_diagonal = -0.5 * energy * std::exp(-energy * separation);
  return {energy, separation, logdet_from_entries(diagonal, off_diagonal)};
}

IntegralResult casimir_energy(const ForceQuery& query) {
  require_separation(query.separation);
  validate_medium(query);
  const int m = multiplicity(query);
  const double h = query.separation;
  const double scale = 1.0 / h;
  const double lower = p0_lower_limit(query, scale);
  check_magnetic_stability(query, lower);
  IntegralResult r = integrate_1d(
      [&query, h](double p0) { return inner_logdet_integral(mode_lower_limit(query, p0), h); },
      HalfLine{lower, scale}, query.spec);
  const double prefactor = m / (4.0 * kPi2);
  r.value *= prefactor;
  r.error_estimate *= prefactor;
  return r;
}

ForceResult force_via_action_fd(const ForceQuery& query, double delta) {
  require_separation(query.separation);
  if (query.bc != BoundaryCondition::Field) {
    throw Error(ErrorKind::Domain, "the action route covers the field boundary condition");
  }
  if (!(delta > 0.0) || !(query.separation > delta)) {
    throw Error(ErrorKind::Domain, "finite-difference step must satisfy 0 < delta < H");
  }
  validate_medium(query);
  const int m = multiplicity(query);
  const double h = query.separation;
  const double scale = 1.0 / (h - delta);
  const double lower = p0_lower_limit(query, scale);
  check_magnetic_stability(query, lower);

  const IntegralResult r = integrate_1d(
      [&query, h, delta](double p0) {
        const double a = mode_lower_limit(query, p0);
        return (inner_logdet_integral(a, h + delta) - inner_logdet_integral(a, h - delta)) /
               (2.0 * delta);
      },
      HalfLine{lower, scale}, query.spec);
  return finish(query, m, -m / (4.0 * kPi2), r);
}

double nondispersive_scaling_check(double chi0, FieldKind kind, double separation,
                                   const QuadratureSpec& spec) {
  ForceQuery q;
  q.medium = Medium::dielectric(Constant{chi0});
  q.kind = kind;
  q.separation = separation;
  q.spec = spec;
  const ForceResult r = force_field_bc(q);
  if (!r.converged) {
    throw IntegrationError("scaling check force did not converge", r.error_estimate);
  }
  return r.vacuum_ratio;
}

double matter_only_force(double omega_res, double separation) {
  require_separation(separation);
  const double scale = 1.0 / separation;
  const double delta = 0.5 * separation;
  auto logdet = [omega_res](double p0, double h) {
    return logdet_from_entries(reservoir_gap_kernel(omega_res, p0, 0.0),
                               reservoir_gap_kernel(omega_res, p0, h));
  };
  const IntegralResult r = integrate_1d(
      [&](double p0) {
        return (logdet(p0, separation + delta) - logdet(p0, separation - delta)) /
               (2.0 * delta);
      },
      HalfLine{0.0, scale});
  const double force = -r.value / (4.0 * kPi2);
  return force == 0.0 ? 0.0 : force;
}

}  // namespace casimir
