#include "casimir_cli/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "casimir/error.hpp"
#include "casimir/forces.hpp"
#include "casimir/propagators.hpp"
#include "casimir_cli/format.hpp"

namespace casimir::cli {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kSeparations[] = {0.5, 1.0, 2.0, 5.0};

class Report {
 public:
  Report(std::string suite, std::vector<CheckOutcome>& out) : suite_(std::move(suite)), out_(out) {}

  // Runs `measure`, which returns a deviation, and records it against `tol`.
  void add(const std::string& name, double tol, const std::function<double()>& measure) {
    CheckOutcome o{suite_, name, std::numeric_limits<double>::infinity(), tol, false};
    try {
      o.deviation = measure();
      o.pass = o.deviation <= tol;
    } catch (const std::exception&) {
      o.pass = false;
    }
    out_.push_back(o);
  }

 private:
  std::string suite_;
  std::vector<CheckOutcome>& out_;
};

ForceQuery make_query(Medium medium, double h, FieldKind kind, const QuadratureSpec& spec) {
  ForceQuery q;
  q.medium = std::move(medium);
  q.kind = kind;
  q.separation = h;
  q.spec = spec;
  return q;
}

double converged_force(const ForceQuery& q) {
  const ForceResult r = force_field_bc(q);
  if (!r.converged) throw IntegrationError("force did not converge", r.error_estimate);
  return r.force_per_area;
}

void limits(Report& report, const CheckOptions& opt) {
  for (double h : kSeparations) {
    report.add("vacuum_scalar H=" + format_number(h), 1e-6, [&] {
      const double f = converged_force(make_query(Medium::vacuum(), h, FieldKind::Scalar, opt.spec));
      return std::abs(f * 480.0 * std::pow(h, 4) / kPi2 + 1.0);
    });
  }
  report.add("vacuum_em H=1", 1e-6, [&] {
    const double f = converged_force(make_query(Medium::vacuum(), 1.0, FieldKind::EM, opt.spec));
    return std::abs(f / (-kPi2 / 240.0) - 1.0);
  });
  for (double chi0 : {0.25, 1.25, 3.0, 15.0}) {
    report.add("scaling chi0=" + format_number(chi0), 1e-6, [&] {
      double worst = 0.0;
      for (double h : kSeparations) {
        const double ratio = nondispersive_scaling_check(chi0, FieldKind::Scalar, h, opt.spec);
        worst = std::max(worst, std::abs(ratio * std::sqrt(1.0 + chi0) - 1.0));
      }
      return worst;
    });
  }
  report.add("matter_only_force", 0.0, [] {
    double worst = 0.0;
    for (double h : kSeparations) worst = std::max(worst, std::abs(matter_only_force(1.0, h)));
    return worst;
  });
}

void kk(Report& report, const CheckOptions& opt) {
  std::vector<std::pair<std::string, SusceptibilityModel>> models = {
      {"lorentz(1,1,0.1)", Lorentz{1.0, 1.0, 0.1}}, {"drude(1,0.5)", Drude{1.0, 0.5}}};
  if (opt.medium && is_absorptive(opt.medium->electric)) {
    models.emplace_back("medium.electric", opt.medium->electric);
  }
  if (opt.medium && is_absorptive(opt.medium->magnetic)) {
    models.emplace_back("medium.magnetic", opt.medium->magnetic);
  }
  for (const auto& [label, model] : models) {
    report.add("kk_closure " + label, 1e-6, [&] {
      double worst = 0.0;
      for (int i = 0; i < 20; ++i) {
        const double xi = 1e-2 * std::pow(1e4, i / 19.0);
        const double exact = chi_bar(model, xi, opt.spec);
        const double kk_value = kk_imaginary_axis(model, xi, opt.spec).value;
        worst = std::max(worst, std::abs(kk_value - exact) / exact);
      }
      return worst;
    });
  }
}

void dyson(Report& report, const CheckOptions& opt) {
  std::vector<std::pair<std::string, Medium>> media = {
      {"lorentz(1,1,0.1)", Medium::dielectric(Lorentz{1.0, 1.0, 0.1})}};
  if (opt.medium) media.emplace_back("medium", Medium::dielectric(opt.medium->electric));

  for (const auto& [label, medium] : media) {
    // Ratio of the observed partial-sum error to the geometric tail bound
    // (plus a few ulps per term); must stay <= 1.
    double worst_bound = 0.0;
    double worst_limit = 0.0;
    bool ok = true;
    try {
      std::mt19937_64 rng(20260101);
      std::uniform_real_distribution<double> ks(0.0, 4.0);
      std::uniform_real_distribution<double> ws(-3.0, 3.0);
      int tested = 0;
      for (int attempt = 0; tested < 50 && attempt < 100000; ++attempt) {
        const MomentumFrequencyPoint p{ks(rng), ws(rng), Axis::Real};
        DysonSum probe;
        try {
          probe = dyson_partial_sum(medium, p, 0);
        } catch (const Error&) {
          continue;  // model undefined at this frequency
        }
        const double r = std::abs(probe.ratio);
        if (!(r < 0.9)) continue;
        ++tested;
        const auto exact = g_phiphi(medium, FieldKind::Scalar, p).value;
        const double bare = std::abs(probe.value);
        const double eps = std::numeric_limits<double>::epsilon();
        for (int n = 0; n <= 30; ++n) {
          const double err = std::abs(dyson_partial_sum(medium, p, n).value - exact);
          const double bound =
              bare * std::pow(r, n + 1) / (1.0 - r) + 64.0 * eps * (n + 2) * std::abs(exact);
          worst_bound = std::max(worst_bound, err / bound);
        }
        int n = 0;
        while (bare * std::pow(r, n + 1) / (1.0 - r) > 1e-11 * std::abs(exact)) ++n;
        const double err = std::abs(dyson_partial_sum(medium, p, n).value - exact);
        worst_limit = std::max(worst_limit, err / std::abs(exact));
      }
      ok = tested == 50;
    } catch (const std::exception&) {
      ok = false;
    }
    report.add("tail_bound " + label, 1.0, [&] {
      if (!ok) throw std::runtime_error("sampling failed");
      return worst_bound;
    });
    report.add("limit " + label, 1e-10, [&] {
      if (!ok) throw std::runtime_error("sampling failed");
      return worst_limit;
    });
  }
}

void action(Report& report, const CheckOptions& opt) {
  const std::vector<std::pair<std::string, Medium>> media = {
      {"vacuum", Medium::vacuum()},
      {"lorentz(1,1,0.1)", Medium::dielectric(Lorentz{1.0, 1.0, 0.1})}};
  for (const auto& [label, medium] : media) {
    const ForceQuery q = make_query(medium, 1.0, FieldKind::Scalar, opt.spec);
    report.add("fd_order " + label, 20.0, [&] {
      const double direct = converged_force(q);
      const double coarse = force_via_action_fd(q, 1e-2).force_per_area - direct;
      const double fine = force_via_action_fd(q, 1e-3).force_per_area - direct;
      return std::abs(coarse / fine - 100.0);
    });
    report.add("fd_agreement " + label, 1e-5, [&] {
      const double direct = converged_force(q);
      return std::abs(force_via_action_fd(q, 1e-3).force_per_area / direct - 1.0);
    });
  }
}

}  // namespace

std::vector<CheckOutcome> run_check_suite(std::string_view suite, const CheckOptions& options) {
  std::vector<CheckOutcome> out;
  Report report(std::string(suite), out);
  if (suite == "limits") {
    limits(report, options);
  } else if (suite == "kk") {
    kk(report, options);
  } else if (suite == "dyson") {
    dyson(report, options);
  } else if (suite == "action") {
    action(report, options);
  } else {
    throw std::invalid_argument("unknown check suite '" + std::string(suite) + "'");
  }
  return out;
}

}  // namespace casimir::cli
