#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "mshaz/cascade_model.hpp"
#include "mshaz/curves.hpp"
#include "mshaz/step_distribution.hpp"

namespace mshaz {

/// Steps that must occur in order; route failure time is the sum of step times.
struct SequentialRoute {
  std::vector<StepDistribution> steps;
};

/// Steps that must all occur in any order; failure time is the maximum.
struct UnorderedRoute {
  std::vector<StepDistribution> steps;
};

/// Rare-event route with survival exp(-sum a_i t^{p_i}).
struct PowerLawRoute {
  std::vector<std::pair<double, double>> terms;  ///< (a_i > 0, p_i > 0)
};

/// A cascade embedded as one route of a larger system.
struct CascadeRoute {
  CascadeSpec cascade;
};

using RouteSpec = std::variant<SequentialRoute, UnorderedRoute, PowerLawRoute, CascadeRoute>;

/// A full model: competing routes replicated over `multiplicity` equivalent
/// independent units (e.g. stem cells), each carrying all routes.
struct SystemSpec {
  std::vector<RouteSpec> routes;
  int64_t multiplicity = 1;
};

/// Curves of a single route.
CurveSet route_curves(const RouteSpec& route, const TimeGrid& grid);

/// Competing-route composition: S = (prod_i S_i)^multiplicity, so the system
/// hazard and cumulative hazard are the multiplicity-weighted sums of the
/// per-route ones. Route evaluation failures rethrow with the route index.
CurveSet combine_routes(const SystemSpec& spec, const TimeGrid& grid);

/// Survival of a route requiring all steps in any order:
/// S(t) = 1 - prod_j F_j(t). Rejects improper steps.
CurveSet unordered_route_survival(const std::vector<StepDistribution>& steps,
                                  const TimeGrid& grid);

struct LifetimeRisk {
  double exact;          ///< 1 - (1 - (1 - (1-mu)^d)^m)^n
  double approximation;  ///< n (mu d)^m
  double relative_gap;   ///< |exact - approximation| / exact
};

/// Discrete stem-cell lifetime risk for mutation probability mu per
/// division, d divisions, m required mutations, n cells. Evaluated in
/// log1p/expm1 form so n up to 1e9 and mu down to 1e-10 stay exact.
LifetimeRisk lifetime_risk(double mutation_prob, double divisions, int steps, double cells);

/// Horizon estimate for default grids (minimum over routes).
double estimate_horizon(const SystemSpec& spec);

/// Canonical description string (used for Monte Carlo model hashes).
std::string describe_system(const SystemSpec& spec);

}  // namespace mshaz
