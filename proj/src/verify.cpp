#include "mshaz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mshaz/csv.hpp"
#include "mshaz/errors.hpp"
#include "mshaz/mc_oracle.hpp"
#include "mshaz/sequential_engine.hpp"

namespace mshaz {

namespace {

constexpr double kDefaultSupTol = 1e-5;
constexpr double kDefaultMicroenvTol = 1e-6;
constexpr double kDefaultRiskTol = 1e-2;

std::vector<Pole> exact_poles_of(const std::vector<StepDistribution>& steps) {
  std::vector<Pole> poles;
  for (const auto& s : steps) {
    const auto pole = s.exact_pole();
    if (!pole) return {};
    poles.push_back({pole->first, pole->second});
  }
  return poles;
}

/// Sup-norm gap between the exact ExpPolyMix density (scaled by `corrupt`)
/// and the trapezoid convolution of the step densities, relative to the
/// numeric peak.
double exact_vs_numeric_gap(const std::vector<StepDistribution>& steps, const ExpPolyMix& exact,
                            const TimeGrid& grid, double corrupt) {
  const auto& t = grid.points();
  auto density_on = [&](const StepDistribution& s) {
    std::vector<double> f(t.size());
    for (size_t i = 0; i < t.size(); ++i) {
      const double v = s.density(t[i]);
      f[i] = std::isfinite(v) ? v : 0.0;
    }
    return f;
  };
  std::vector<double> numeric = density_on(steps[0]);
  for (size_t k = 1; k < steps.size(); ++k) {
    numeric = convolve_numeric(grid, numeric, density_on(steps[k]));
  }
  double peak = 0.0;
  for (double v : numeric) peak = std::max(peak, v);
  double gap = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    gap = std::max(gap, std::fabs(corrupt * exact.density(t[i]) - numeric[i]));
  }
  return gap / std::max(peak, 1e-300);
}

std::string ordering_name(const CascadeSpec& spec, const std::vector<int>& ordering) {
  std::string name;
  for (size_t i = 0; i < ordering.size(); ++i) {
    if (i) name += ">";
    name += spec.components[static_cast<size_t>(ordering[i])];
  }
  return name;
}

void verify_system(const ModelFile& model, const VerifyOptions& opt, const TimeGrid& grid,
                   VerifyReport& report) {
  const double sup_tol = opt.tolerance > 0.0 ? opt.tolerance : kDefaultSupTol;
  const TimeGrid conv_grid = TimeGrid::uniform(0.0, grid.back(), std::max(grid.size(), 4096));
  for (size_t r = 0; r < model.system.routes.size(); ++r) {
    const auto* seq = std::get_if<SequentialRoute>(&model.system.routes[r]);
    if (seq == nullptr || seq->steps.size() < 2) continue;
    const std::vector<Pole> poles = exact_poles_of(seq->steps);
    if (poles.empty()) continue;
    const double gap =
        exact_vs_numeric_gap(seq->steps, gamma_integer_sum(poles), conv_grid, opt.corrupt);
    report.lines.push_back({"route " + std::to_string(r) + " closed form vs numeric convolution",
                            "sup-norm/peak", gap, sup_tol, gap <= sup_tol, false});
  }
  const CurveSet curves = combine_routes(model.system, grid);
  const SampleSet mc = simulate_system(model.system, opt.samples, opt.seed);
  const double ks = ks_statistic_fn(mc.times, [&](double t) {
    return opt.corrupt * interp_linear(curves.grid, curves.F, t);
  });
  const double ks_tol = ks_critical_99(opt.samples);
  report.lines.push_back(
      {"system CDF vs Monte Carlo", "KS", ks, ks_tol, ks <= ks_tol, false});
}

void verify_cascade(const ModelFile& model, const VerifyOptions& opt, const TimeGrid& grid,
                    VerifyReport& report) {
  const double sup_tol = opt.tolerance > 0.0 ? opt.tolerance : kDefaultSupTol;
  const CascadeSpec& spec = model.cascade;
  const std::vector<std::vector<int>> orderings = enumerate_orderings(spec);
  const TimeGrid conv_grid = TimeGrid::uniform(0.0, grid.back(), std::max(grid.size(), 4096));
  for (const auto& ordering : orderings) {
    std::vector<StepDistribution> steps;
    uint32_t failed = 0;
    for (int next : ordering) {
      steps.push_back(spec.law_for(failed, next));
      failed |= 1u << next;
    }
    const std::vector<Pole> poles = exact_poles_of(steps);
    if (poles.empty() || steps.size() < 2) continue;
    const double gap =
        exact_vs_numeric_gap(steps, gamma_integer_sum(poles), conv_grid, opt.corrupt);
    report.lines.push_back({"route " + ordering_name(spec, ordering) +
                                " closed form vs numeric convolution",
                            "sup-norm/peak", gap, sup_tol, gap <= sup_tol, false});
  }

  const CascadeResult analytic = cascade_survival(spec, grid);
  const SampleSet product_mc = simulate_cascade_routeproduct(spec, opt.samples, opt.seed);
  const double ks_tol = ks_critical_99(opt.samples);
  const double ks_product = ks_statistic_fn(product_mc.times, [&](double t) {
    return opt.corrupt * interp_linear(analytic.system.grid, analytic.system.F, t);
  });
  report.lines.push_back({"route-product survival vs route-product Monte Carlo", "KS", ks_product,
                          ks_tol, ks_product <= ks_tol, false});

  const CascadeSamples race = simulate_cascade_race(spec, opt.samples, opt.seed + 1);
  const double ks_race = ks_statistic_fn(race.times, [&](double t) {
    return interp_linear(analytic.system.grid, analytic.system.F, t);
  });
  report.lines.push_back({"race process vs route-product composition (model gap)", "KS", ks_race,
                          ks_tol, ks_race <= ks_tol, true});

  std::vector<int64_t> counts(orderings.size(), 0);
  for (int idx : race.route_index) ++counts[static_cast<size_t>(idx)];
  const auto top = std::max_element(counts.begin(), counts.end());
  const size_t top_idx = static_cast<size_t>(top - counts.begin());
  report.lines.push_back({"dominant race route " + ordering_name(spec, orderings[top_idx]),
                          "mass", static_cast<double>(*top) / static_cast<double>(opt.samples),
                          0.0, true, true});
}

void verify_microenv(const ModelFile& model, const VerifyOptions& opt, const TimeGrid& grid,
                     VerifyReport& report) {
  const double tol = opt.tolerance > 0.0 ? opt.tolerance : kDefaultMicroenvTol;
  const MicroEnvResult result = microenv_pdf(model.microenv, grid);
  const int m = model.microenv.steps();
  if (m <= 3) {
    double worst = 0.0;
    const int checks = 20;
    for (int k = 1; k <= checks; ++k) {
      const int idx = k * (grid.size() - 1) / checks;
      const double t = grid[idx];
      const double oracle = microenv_oracle(model.microenv, t);
      const double value = opt.corrupt * result.density[static_cast<size_t>(idx)];
      worst = std::max(worst, std::fabs(value - oracle) / std::max(std::fabs(oracle), 1e-300));
    }
    report.lines.push_back({"polynomial density vs simplex quadrature", "max-rel", worst, tol,
                            worst <= tol, false});
  } else {
    report.lines.push_back(
        {"simplex quadrature oracle (m > 3)", "unavailable", 0.0, 0.0, true, true});
  }
  bool all_zero_drift = true;
  for (double d : model.microenv.drift_rates) all_zero_drift = all_zero_drift && d == 0.0;
  if (all_zero_drift) {
    std::vector<std::pair<double, double>> flat;
    for (double mu : model.microenv.base_rates) flat.emplace_back(mu, 0.0);
    const PowerLawHazard lead = power_law_sum(flat);
    double worst = 0.0;
    for (int i = 1; i < grid.size(); ++i) {
      const double t = grid[i];
      const double expect = lead.coeff * std::pow(t, lead.exponent);
      worst = std::max(worst, std::fabs(opt.corrupt * result.density[static_cast<size_t>(i)] -
                                        expect) /
                                  std::max(expect, 1e-300));
    }
    report.lines.push_back({"zero-drift reduction to power-law leading term", "max-rel", worst,
                            1e-12, worst <= 1e-12, false});
  }
  if (result.negative_density) {
    report.lines.push_back({"density negative on grid", "flag", 1.0, 0.0, true, true});
  }
}

void verify_risk(const ModelFile& model, const VerifyOptions& opt, VerifyReport& report) {
  const double tol = opt.tolerance > 0.0 ? opt.tolerance : kDefaultRiskTol;
  const LifetimeRisk risk = lifetime_risk(model.risk.mutation_prob, model.risk.divisions,
                                          model.risk.steps, model.risk.cells);
  const double exact = opt.corrupt * risk.exact;
  const double gap = std::fabs(exact - risk.approximation) / std::max(exact, 1e-300);
  const bool in_regime = model.risk.mutation_prob * model.risk.divisions <= 1e-4 &&
                         risk.approximation <= 1e-2;
  report.lines.push_back({"exact risk vs power-law approximation", "rel-gap", gap, tol,
                          gap <= tol, !in_regime});
}

}  // namespace

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& l : lines) {
    if (l.informational) {
      os << "INFO " << l.name << " " << l.metric << "=" << format_g17(l.value);
    } else {
      os << (l.pass ? "PASS " : "FAIL ") << l.name << " " << l.metric << "="
         << format_g17(l.value) << " tol=" << format_g17(l.tol);
    }
    os << "\n";
  }
  os << (all_pass() ? "RESULT PASS" : "RESULT FAIL") << "\n";
  return os.str();
}

VerifyReport verify_model(const ModelFile& model, const VerifyOptions& options) {
  VerifyReport report;
  if (model.kind == ModelFile::Kind::kLifetimeRisk) {
    verify_risk(model, options, report);
    return report;
  }
  const TimeGrid grid = model_grid(model, options.t_max, options.points);
  switch (model.kind) {
    case ModelFile::Kind::kSystem:
      verify_system(model, options, grid, report);
      break;
    case ModelFile::Kind::kCascade:
      verify_cascade(model, options, grid, report);
      break;
    case ModelFile::Kind::kMicroEnv:
      verify_microenv(model, options, grid, report);
      break;
    case ModelFile::Kind::kLifetimeRisk:
      break;
  }
  return report;
}

}  // namespace mshaz
