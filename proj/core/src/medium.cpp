#include "casimir/medium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorKind::InvalidModel, message);
}

void require_imaginary_frequency(double xi) {
  if (!(xi >= 0.0) || !std::isfinite(xi)) {
    throw Error(ErrorKind::Domain, "imaginary frequency must be finite and >= 0");
  }
}

double tabulated_chi_bar(const TabulatedCoupling& table, double xi,
                         const QuadratureSpec& quad) {
  const double xi2 = xi * xi;
  const IntegralResult r = integrate_1d(
      [&table, xi2](double w) { return table.coupling(w) / (w * w + xi2); },
      table.frequencies(), quad);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "dispersion integral of tabulated coupling did not converge (error "
        << r.error_estimate << ")";
    throw IntegrationError(msg.str(), r.error_estimate);
  }
  return r.value;
}

// Principal value of int g(x) / (x^2 - w^2) dx over the piecewise-linear
// table, in closed form. The ln|x - w| coefficients are gathered per node so
// that they cancel when w sits on an interior node.
double tabulated_real_part(const TabulatedCoupling& table, double omega) {
  const auto x = table.frequencies();
  const auto g = table.values();
  const std::size_t n = x.size();
  if (omega == 0.0) {
    return tabulated_chi_bar(table, 0.0, QuadratureSpec{});
  }
  std::vector<double> near_coeff(n, 0.0);
  double far_sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double slope = (g[i + 1] - g[i]) / (x[i + 1] - x[i]);
    const double intercept = g[i] - slope * x[i];
    const double c_near = (intercept + slope * omega) / (2.0 * omega);
    const double c_far = (slope * omega - intercept) / (2.0 * omega);
    near_coeff[i + 1] += c_near;
    near_coeff[i] -= c_near;
    far_sum += c_far * (std::log(x[i + 1] + omega) - std::log(x[i] + omega));
  }
  double near_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == omega) {
      if ((i == 0 || i + 1 == n) && g[i] != 0.0) {
        throw Error(ErrorKind::Pole,
                    "coupling table jumps to zero at the requested frequency");
      }
      continue;
    }
    near_sum += near_coeff[i] * std::log(std::abs(x[i] - omega));
  }
  return near_sum + far_sum;
}

}  // namespace

TabulatedCoupling::TabulatedCoupling(std::vector<double> frequencies,
                                     std::vector<double> coupling)
    : frequencies_(std::move(frequencies)), values_(std::move(coupling)) {
  require(frequencies_.size() == values_.size(),
          "tabulated coupling: frequency and value counts differ");
  require(frequencies_.size() >= 2, "tabulated coupling: need at least two samples");
  for (std::size_t i = 0; i < frequencies_.size(); ++i) {
    require(std::isfinite(frequencies_[i]) && frequencies_[i] > 0.0,
            "tabulated coupling: frequencies must be positive");
    require(std::isfinite(values_[i]) && values_[i] >= 0.0,
            "tabulated coupling: coupling values must be >= 0");
    if (i > 0) {
      require(frequencies_[i] > frequencies_[i - 1],
              "tabulated coupling: frequencies must be strictly ascending");
    }
  }
}

double TabulatedCoupling::coupling(double omega) const {
  if (omega < frequencies_.front() || omega > frequencies_.back()) return 0.0;
  const auto it = std::upper_bound(frequencies_.begin(), frequencies_.end(), omega);
  if (it == frequencies_.end()) return values_.back();
  const std::size_t hi = static_cast<std::size_t>(it - frequencies_.begin());
  const std::size_t lo = hi - 1;
  const double t = (omega - frequencies_[lo]) / (frequencies_[hi] - frequencies_[lo]);
  return values_[lo] + t * (values_[hi] - values_[lo]);
}

void validate(const SusceptibilityModel& model) {
  std::visit(
      Overloaded{
          [](const Constant& m) {
            require(std::isfinite(m.chi0) && m.chi0 >= 0.0, "constant: chi0 must be >= 0");
          },
          [](const Lorentz& m) {
            require(std::isfinite(m.omega_p) && m.omega_p > 0.0, "lorentz: omega_p must be > 0");
            require(std::isfinite(m.omega_0) && m.omega_0 > 0.0, "lorentz: omega_0 must be > 0");
            require(std::isfinite(m.gamma) && m.gamma >= 0.0, "lorentz: gamma must be >= 0");
          },
          [](const Drude& m) {
            require(std::isfinite(m.omega_p) && m.omega_p > 0.0, "drude: omega_p must be > 0");
            require(std::isfinite(m.gamma) && m.gamma > 0.0, "drude: gamma must be > 0");
          },
          [](const SharpResonance& m) {
            require(std::isfinite(m.omega_p) && m.omega_p > 0.0,
                    "sharp_resonance: omega_p must be > 0");
            require(std::isfinite(m.omega_0) && m.omega_0 > 0.0,
                    "sharp_resonance: omega_0 must be > 0");
          },
          [](const TabulatedCoupling&) {},  // checked on construction
      },
      model);
}

double characteristic_frequency(const SusceptibilityModel& model) {
  return std::visit(
      Overloaded{
          [](const Constant&) { return 0.0; },
          [](const Lorentz& m) { return std::max({m.omega_p, m.omega_0, m.gamma}); },
          [](const Drude& m) { return std::max(m.omega_p, m.gamma); },
          [](const SharpResonance& m) { return std::max(m.omega_p, m.omega_0); },
          [](const TabulatedCoupling& m) { return m.frequencies().back(); },
      },
      model);
}

bool is_absorptive(const SusceptibilityModel& model) {
  return std::visit(
      Overloaded{
          [](const Constant&) { return false; },
          [](const Lorentz& m) { return m.gamma > 0.0; },
          [](const Drude&) { return true; },
          [](const SharpResonance&) { return false; },
          [](const TabulatedCoupling& m) {
            const auto v = m.values();
            return std::any_of(v.begin(), v.end(), [](double g) { return g > 0.0; });
          },
      },
      model);
}

bool diverges_at_zero_frequency(const SusceptibilityModel& model) {
  return std::holds_alternative<Drude>(model);
}

double chi_bar(const SusceptibilityModel& model, double xi, const QuadratureSpec& quad) {
  require_imaginary_frequency(xi);
  return std::visit(
      Overloaded{
          [](const Constant& m) { return m.chi0; },
          [xi](const Lorentz& m) {
            return m.omega_p * m.omega_p /
                   (m.omega_0 * m.omega_0 + xi * xi + m.gamma * xi);
          },
          [xi](const Drude& m) {
            if (xi == 0.0) {
              throw Error(ErrorKind::Domain, "drude susceptibility diverges at xi = 0");
            }
            return m.omega_p * m.omega_p / (xi * (xi + m.gamma));
          },
          [xi](const SharpResonance& m) {
            return m.omega_p * m.omega_p / (m.omega_0 * m.omega_0 + xi * xi);
          },
          [xi, &quad](const TabulatedCoupling& m) { return tabulated_chi_bar(m, xi, quad); },
      },
      model);
}

double xi_squared_chi_bar(const SusceptibilityModel& model, double xi,
                          const QuadratureSpec& quad) {
  require_imaginary_frequency(xi);
  if (const auto* drude = std::get_if<Drude>(&model)) {
    return drude->omega_p * drude->omega_p * xi / (xi + drude->gamma);
  }
  if (xi == 0.0) return 0.0;
  return xi * xi * chi_bar(model, xi, quad);
}

std::complex<double> chi_real_axis(const SusceptibilityModel& model, double omega) {
  using C = std::complex<double>;
  if (!std::isfinite(omega)) throw Error(ErrorKind::Domain, "frequency must be finite");
  return std::visit(
      Overloaded{
          [](const Constant& m) { return C(m.chi0, 0.0); },
          [omega](const Lorentz& m) {
            const C denom(m.omega_0 * m.omega_0 - omega * omega, -m.gamma * omega);
            if (denom == C(0.0, 0.0)) {
              throw Error(ErrorKind::UnsupportedDistribution,
                          "lossless lorentz model evaluated on resonance");
            }
            return m.omega_p * m.omega_p / denom;
          },
          [omega](const Drude& m) {
            if (omega == 0.0) {
              throw Error(ErrorKind::Domain, "drude susceptibility diverges at w = 0");
            }
            return m.omega_p * m.omega_p / C(-omega * omega, -m.gamma * omega);
          },
          [omega](const SharpResonance& m) {
            if (std::abs(omega) == m.omega_0) {
              throw Error(ErrorKind::UnsupportedDistribution,
                          "sharp resonance evaluated exactly on resonance");
            }
            return C(m.omega_p * m.omega_p / (m.omega_0 * m.omega_0 - omega * omega), 0.0);
          },
          [omega](const TabulatedCoupling& m) {
            const double w = std::abs(omega);
            const double re = tabulated_real_part(m, w);
            const double im = w == 0.0 ? 0.0 : 0.5 * kPi * m.coupling(w) / w;
            return C(re, omega < 0.0 ? -im : im);
          },
      },
      model);
}

double im_chi_real_axis(const SusceptibilityModel& model, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorKind::Domain, "real frequency must be > 0");
  }
  return std::visit(
      Overloaded{
          [](const Constant&) { return 0.0; },
          [omega](const Lorentz& m) {
            const double detune = m.omega_0 * m.omega_0 - omega * omega;
            const double denom = detune * detune + m.gamma * m.gamma * omega * omega;
            if (denom == 0.0) {
              throw Error(ErrorKind::UnsupportedDistribution,
                          "lossless lorentz model evaluated on resonance");
            }
            return m.omega_p * m.omega_p * m.gamma * omega / denom;
          },
          [omega](const Drude& m) {
            return m.omega_p * m.omega_p * m.gamma /
                   (omega * (omega * omega + m.gamma * m.gamma));
          },
          [omega](const SharpResonance& m) {
            if (omega == m.omega_0) {
              throw Error(ErrorKind::UnsupportedDistribution,
                          "absorption of a sharp resonance is a delta function");
            }
            return 0.0;
          },
          [omega](const TabulatedCoupling& m) { return 0.5 * kPi * m.coupling(omega) / omega; },
      },
      model);
}

IntegralResult kk_imaginary_axis(const SusceptibilityModel& model, double xi,
                                 const QuadratureSpec& quad) {
  require_imaginary_frequency(xi);
  if (!is_absorptive(model)) {
    throw Error(ErrorKind::InvalidModel,
                "dispersion relation needs a model with absorption");
  }
  if (diverges_at_zero_frequency(model) && xi == 0.0) {
    throw Error(ErrorKind::Domain, "drude dispersion integral diverges at xi = 0");
  }

  const double xi2 = xi * xi;
  const Integrand integrand = [&model, xi2](double w) {
    return (2.0 / kPi) * w * im_chi_real_axis(model, w) / (w * w + xi2);
  };

  std::vector<double> breaks{0.0};
  double tail_start = 0.0;
  if (const auto* table = std::get_if<TabulatedCoupling>(&model)) {
    // Absorption vanishes outside the table: no tail.
    const auto grid = table->frequencies();
    breaks.assign(grid.begin(), grid.end());
    tail_start = -1.0;
  } else {
    std::vector<double> features{xi};
    if (const auto* l = std::get_if<Lorentz>(&model)) {
      features.insert(features.end(), {l->omega_0 - 4.0 * l->gamma, l->omega_0 - l->gamma,
                                       l->omega_0, l->omega_0 + l->gamma,
                                       l->omega_0 + 4.0 * l->gamma, 2.0 * l->omega_0});
    } else if (const auto* d = std::get_if<Drude>(&model)) {
      features.insert(features.end(), {d->gamma, 4.0 * d->gamma});
    }
    tail_start = 4.0 * std::max(characteristic_frequency(model), xi);
    features.push_back(tail_start);
    std::sort(features.begin(), features.end());
    for (double f : features) {
      if (f > breaks.back() * (1.0 + 1e-12) && f > 0.0 && f <= tail_start) {
        breaks.push_back(f);
      }
    }
  }

  IntegralResult total = integrate_1d(integrand, breaks, quad);
  if (tail_start > 0.0) {
    QuadratureSpec tail_spec = quad;
    tail_spec.semi_infinite_transform = SemiInfiniteMap::Rational;
    const IntegralResult tail =
        integrate_1d(integrand, HalfLine{tail_start, tail_start}, tail_spec);
    total.value += tail.value;
    total.error_estimate += tail.error_estimate;
    total.evaluations += tail.evaluations;
    total.converged = total.converged && tail.converged;
  }
  if (!total.converged) {
    std::ostringstream msg;
    msg << "dispersion integral did not converge (error " << total.error_estimate << ")";
    throw IntegrationError(msg.str(), total.error_estimate);
  }
  return total;
}

double permittivity_bar(const Medium& medium, double xi) {
  return 1.0 + chi_bar(medium.electric, xi);
}

double permeability_bar(const Medium& medium, double xi) {
  const double chi_m = chi_bar(medium.magnetic, xi);
  if (!(chi_m < 1.0)) {
    std::ostringstream msg;
    msg << "magnetic susceptibility reaches " << chi_m << " >= 1 at xi = " << xi;
    throw Error(ErrorKind::MediumInstability, msg.str());
  }
  return 1.0 / (1.0 - chi_m);
}

double refractive_index(const Medium& medium, FieldKind kind, double xi) {
  const double eps = permittivity_bar(medium, xi);
  if (kind == FieldKind::Scalar) return std::sqrt(eps);
  return std::sqrt(eps * permeability_bar(medium, xi));
}

double mode_frequency_squared(const Medium& medium, FieldKind kind, double p0) {
  const double electric = p0 * p0 + xi_squared_chi_bar(medium.electric, p0);
  if (kind == FieldKind::Scalar) return electric;
  return electric * permeability_bar(medium, p0);
}

}  // namespace casimir
