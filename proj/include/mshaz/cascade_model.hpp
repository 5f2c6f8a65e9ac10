#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mshaz/curves.hpp"
#include "mshaz/step_distribution.hpp"

namespace mshaz {

/// Components whose waiting-time law depends on which components have
/// already failed. Laws are keyed by (failed set, next component); the law
/// must be total over every pair reachable by some failure ordering.
struct CascadeSpec {
  static constexpr int kMaxComponents = 8;

  std::vector<std::string> components;
  /// (bitmask of failed component indices, next component index) -> law.
  std::map<std::pair<uint32_t, int>, StepDistribution> laws;

  int size() const { return static_cast<int>(components.size()); }

  /// Law for `next` given `failed_mask`; throws ConfigurationError naming
  /// the pair if no entry exists.
  const StepDistribution& law_for(uint32_t failed_mask, int next) const;

  /// Human-readable failed set, e.g. "{wildfire,storm}".
  std::string mask_name(uint32_t failed_mask) const;

  /// Check component names, the size cap, law totality, and properness.
  void validate() const;

  /// All laws depend only on the component, never on history.
  static CascadeSpec history_independent(std::vector<std::string> names,
                                         std::vector<StepDistribution> laws);

  /// Base law per component plus overrides that apply once all components
  /// of `required_failed` have failed; the most specific matching override
  /// (largest required set, later entries breaking ties) wins.
  struct Override {
    std::vector<int> required_failed;
    int component;
    StepDistribution law;
  };
  static CascadeSpec from_base_and_overrides(std::vector<std::string> names,
                                             std::vector<StepDistribution> base,
                                             const std::vector<Override>& overrides);
};

/// All m! failure orderings in lexicographic order (component indices).
std::vector<std::vector<int>> enumerate_orderings(const CascadeSpec& spec);

/// Density of the sum of the ordering's step times (steps independent given
/// the route), each step's law conditioned on the prefix failed set.
CurveSet cascade_route_pdf(const std::vector<int>& ordering, const CascadeSpec& spec,
                           const TimeGrid& grid);

struct CascadeResult {
  CurveSet system;  ///< product of route survivals across all orderings
  std::vector<std::vector<int>> orderings;
  std::vector<CurveSet> routes;  ///< per-ordering curves, aligned with orderings
};

/// System survival composed multiplicatively over all ordering routes,
/// with the per-route decomposition exposed. The product composition
/// treats route clocks as independent; the Monte Carlo race oracle
/// measures how far the physical process deviates.
CascadeResult cascade_survival(const CascadeSpec& spec, const TimeGrid& grid);

/// Rare-event power-law cascade: S = exp(-sum a_i t^{p_i}) with hazard
/// sum a_i p_i t^{p_i - 1}; terms expose early/late power-law crossover.
CurveSet powerlaw_cascade(const std::vector<std::pair<double, double>>& terms,
                          const TimeGrid& grid);

/// Horizon estimate for default grids: smallest over orderings of the
/// summed per-step 1 - 1e-6 quantiles.
double estimate_horizon(const CascadeSpec& spec);

}  // namespace mshaz
