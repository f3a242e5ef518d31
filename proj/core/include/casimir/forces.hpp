#pragma once

// Casimir force per unit plate area between two ideal conductors enclosing
// a dispersive medium. Forces are negative when attractive and expressed in
// natural units (hbar = c = 1, lengths in the caller's unit).

#include <cstddef>

#include "casimir/medium.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Field: conditions on the field alone, or on field and matter together;
/// both give the same log-determinant and are served by one code path.
/// Polarization: conditions on the polarization field only (scalar).
enum class BoundaryCondition { Field, Polarization };

struct ForceQuery {
  Medium medium;
  FieldKind kind = FieldKind::Scalar;
  BoundaryCondition bc = BoundaryCondition::Field;
  double separation = 1.0;
  QuadratureSpec spec;
  /// 0 selects the default: 2 for EM (two polarizations), 1 for scalar.
  int polarization_multiplicity = 0;
};

struct ForceResult {
  double separation = 0.0;
  double force_per_area = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  double vacuum_ratio = 0.0;
  bool converged = false;
};

/// H-dependent part of ln det Gamma for one Fourier mode.
struct ModeLogDet {
  double energy = 0.0;
  double separation = 0.0;
  double value = 0.0;
};

/// Ideal-vacuum force: -pi^2 / (480 H^4) for a scalar field, twice that
/// for the EM field.
double vacuum_force_analytic(FieldKind kind, double separation);

/// Conditions on the field. With a = n(p0) p0 the parallel momenta are
/// summed in closed form, leaving one adaptive pass over p0:
///   F = -(m / 2 pi^2) int_0^inf dp0 int_a^inf u^2 du / (e^{2uH} - 1).
ForceResult force_field_bc(const ForceQuery& query);

/// Conditions on the polarization field (scalar only):
///   F = -(1 / 2 pi^2) int dp0 int q dq chi_bar^2 E / (alpha e^{2EH} - 1),
///   alpha = E Im chi(p0) + chi_bar^2(p0),
/// integrated on the nested 2D path. A non-positive denominator anywhere
/// on the sampled domain throws Error(InvalidRegime).
ForceResult force_polarization_bc(const ForceQuery& query);

/// Dispatches on query.bc.
ForceResult compute_force(const ForceQuery& query);

/// Absorption entering alpha above: Im chi of the electric model at the
/// real frequency w = p0 (zero at p0 = 0). Kept in one place so another
/// continuation convention can be substituted.
double polarization_absorption(const SusceptibilityModel& electric, double p0);

/// Dirichlet: ln det [[G(0), G(H)], [G(H), G(0)]] minus its H -> inf
/// limit, i.e. ln(1 - e^{-2EH}).
ModeLogDet mode_logdet(double energy, double separation);

/// Neumann: built from -d^2/dz^2 G. The coincident entry diverges, so both
/// entries are normalized by the regular part continued to z = 0+; the
/// surviving ratio is e^{-EH}, which leaves the Dirichlet H dependence.
ModeLogDet mode_logdet_neumann(double energy, double separation);

/// Casimir energy per area, the H-dependent part of the effective action:
///   W(H) = (m / 2) int d^3p / (2 pi)^3 ln(1 - e^{-2EH}).
IntegralResult casimir_energy(const ForceQuery& query);

/// F = -dW/dH by a central difference with step delta, differenced mode by
/// mode inside one quadrature. Requires separation > delta > 0 and the
/// field boundary condition.
ForceResult force_via_action_fd(const ForceQuery& query, double delta);

/// force(Constant{chi0}) / vacuum force; equals 1 / n for a dispersionless
/// medium.
double nondispersive_scaling_check(double chi0, FieldKind kind, double separation,
                                   const QuadratureSpec& spec = {});

/// Force from the reservoir oscillators alone, via the log-determinant of
/// their gap matrix. Their plate-to-plate entry vanishes, so this is 0.
double matter_only_force(double omega_res, double separation);

}  // namespace casimir
