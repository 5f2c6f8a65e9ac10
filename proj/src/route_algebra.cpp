#include "mshaz/route_algebra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mshaz/errors.hpp"
#include "mshaz/sequential_engine.hpp"

namespace mshaz {

CurveSet route_curves(const RouteSpec& route, const TimeGrid& grid) {
  return std::visit(
      [&](const auto& r) -> CurveSet {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SequentialRoute>) {
          return sum_sequential(r.steps, grid);
        } else if constexpr (std::is_same_v<T, UnorderedRoute>) {
          return unordered_route_survival(r.steps, grid);
        } else if constexpr (std::is_same_v<T, PowerLawRoute>) {
          return powerlaw_cascade(r.terms, grid);
        } else {
          return cascade_survival(r.cascade, grid).system;
        }
      },
      route);
}

CurveSet combine_routes(const SystemSpec& spec, const TimeGrid& grid) {
  if (spec.routes.empty()) throw InvalidParameterError("combine_routes: need at least one route");
  if (spec.multiplicity < 1) {
    throw InvalidParameterError("combine_routes: multiplicity must be >= 1");
  }
  const size_t n = static_cast<size_t>(grid.size());
  std::vector<double> h(n, 0.0);
  std::vector<double> H(n, 0.0);
  bool clamped = false;
  bool negative = false;
  for (size_t r = 0; r < spec.routes.size(); ++r) {
    CurveSet route;
    try {
      route = route_curves(spec.routes[r], grid);
    } catch (const Error& e) {
      throw InvalidArgumentError("route " + std::to_string(r) + ": " + e.what());
    }
    clamped = clamped || route.clamped;
    negative = negative || route.negative;
    for (size_t i = 0; i < n; ++i) {
      h[i] += route.h[i];
      H[i] += route.H[i];
    }
  }
  const double ns = static_cast<double>(spec.multiplicity);
  for (size_t i = 0; i < n; ++i) {
    h[i] *= ns;
    H[i] *= ns;
  }
  CurveSet cs = curves_from_hazard(grid, std::move(h), std::move(H));
  cs.clamped = cs.clamped || clamped;
  cs.negative = negative;
  return cs;
}

CurveSet unordered_route_survival(const std::vector<StepDistribution>& steps,
                                  const TimeGrid& grid) {
  if (steps.empty()) {
    throw InvalidParameterError("unordered_route_survival: need at least one step");
  }
  for (size_t j = 0; j < steps.size(); ++j) {
    if (steps[j].improper()) {
      throw UnsupportedOperationError("unordered_route_survival: step " + std::to_string(j) +
                                      " is improper (" + steps[j].describe() + ")");
    }
  }
  const auto& t = grid.points();
  const size_t n = t.size();
  const size_t m = steps.size();
  std::vector<double> S(n), f(n);
  std::vector<double> Fj(m), fj(m);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      Fj[j] = 1.0 - steps[j].survival(t[i]);
      fj[j] = steps[j].density(t[i]);
    }
    double prod = 1.0;
    for (size_t j = 0; j < m; ++j) prod *= Fj[j];
    S[i] = 1.0 - prod;
    // f = sum_j f_j prod_{k != j} F_k; skip terms with a zero factor so a
    // singular f_j at t = 0 never multiplies 0 into NaN.
    double density = 0.0;
    for (size_t j = 0; j < m; ++j) {
      double partial = 1.0;
      for (size_t k = 0; k < m; ++k) {
        if (k != j) partial *= Fj[k];
      }
      if (partial > 0.0 && std::isfinite(fj[j])) density += fj[j] * partial;
    }
    f[i] = density;
  }
  return curves_from_density_survival(grid, std::move(f), std::move(S));
}

LifetimeRisk lifetime_risk(double mutation_prob, double divisions, int steps, double cells) {
  if (!(mutation_prob > 0.0) || mutation_prob > 1.0 || !std::isfinite(mutation_prob)) {
    throw InvalidParameterError("lifetime_risk: mutation probability must be in (0, 1]");
  }
  if (!(divisions >= 1.0) || !std::isfinite(divisions)) {
    throw InvalidParameterError("lifetime_risk: divisions must be >= 1");
  }
  if (steps < 1) throw InvalidParameterError("lifetime_risk: steps must be >= 1");
  if (!(cells >= 1.0) || !std::isfinite(cells)) {
    throw InvalidParameterError("lifetime_risk: cells must be >= 1");
  }
  // q = 1 - (1-mu)^d, per-step mutation probability over d divisions.
  const double log_survive_one = divisions * std::log1p(-mutation_prob);
  const double q = -std::expm1(log_survive_one);
  const double all_steps = std::exp(steps * std::log(q));  // q^m
  const double exact = -std::expm1(cells * std::log1p(-all_steps));
  const double approx =
      std::exp(std::log(cells) + steps * std::log(mutation_prob * divisions));
  const double gap = exact > 0.0 ? std::fabs(exact - approx) / exact
                                 : (approx > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return {exact, approx, gap};
}

double estimate_horizon(const SystemSpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& route : spec.routes) {
    const double est = std::visit(
        [&](const auto& r) -> double {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, SequentialRoute>) {
            double sum = 0.0;
            for (const auto& s : r.steps) {
              sum += survival_horizon([&](double t) { return s.survival(t); }, 1e-7);
            }
            return sum;
          } else if constexpr (std::is_same_v<T, UnorderedRoute>) {
            double mx = 0.0;
            for (const auto& s : r.steps) {
              mx = std::max(mx, survival_horizon([&](double t) { return s.survival(t); }, 1e-6));
            }
            return mx;
          } else if constexpr (std::is_same_v<T, PowerLawRoute>) {
            return survival_horizon(
                [&](double t) {
                  double H = 0.0;
                  for (const auto& [a, p] : r.terms) H += a * std::pow(t, p);
                  return std::exp(-H);
                },
                1e-6);
          } else {
            return mshaz::estimate_horizon(r.cascade);
          }
        },
        route);
    best = std::min(best, est);
  }
  return best;
}

std::string describe_system(const SystemSpec& spec) {
  std::ostringstream os;
  os << "system(multiplicity=" << spec.multiplicity << ";";
  for (const auto& route : spec.routes) {
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, SequentialRoute>) {
            os << "seq[";
            for (const auto& s : r.steps) os << s.describe() << ",";
            os << "];";
          } else if constexpr (std::is_same_v<T, UnorderedRoute>) {
            os << "unordered[";
            for (const auto& s : r.steps) os << s.describe() << ",";
            os << "];";
          } else if constexpr (std::is_same_v<T, PowerLawRoute>) {
            os.precision(17);
            os << "powerlaw[";
            for (const auto& [a, p] : r.terms) os << "(" << a << "," << p << "),";
            os << "];";
          } else {
            os << "cascade[";
            for (const auto& name : r.cascade.components) os << name << ",";
            os << "laws=" << r.cascade.laws.size() << ";";
            for (const auto& [key, law] : r.cascade.laws) {
              os << key.first << ":" << key.second << ":" << law.describe() << ",";
            }
            os << "];";
          }
        },
        route);
  }
  os << ")";
  return os.str();
}

}  // namespace mshaz
