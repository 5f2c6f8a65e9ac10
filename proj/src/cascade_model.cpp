#include "mshaz/cascade_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

#include "mshaz/errors.hpp"
#include "mshaz/sequential_engine.hpp"

namespace mshaz {

const StepDistribution& CascadeSpec::law_for(uint32_t failed_mask, int next) const {
  const auto it = laws.find({failed_mask, next});
  if (it == laws.end()) {
    throw ConfigurationError("CascadeSpec: no law for component '" +
                             components[static_cast<size_t>(next)] + "' given failed set " +
                             mask_name(failed_mask));
  }
  return it->second;
}

std::string CascadeSpec::mask_name(uint32_t failed_mask) const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < size(); ++i) {
    if (failed_mask & (1u << i)) {
      if (!first) out += ",";
      out += components[static_cast<size_t>(i)];
      first = false;
    }
  }
  return out + "}";
}

void CascadeSpec::validate() const {
  const int m = size();
  if (m < 1) throw ConfigurationError("CascadeSpec: need at least one component");
  if (m > kMaxComponents) {
    throw UnsupportedOperationError("CascadeSpec: more than " + std::to_string(kMaxComponents) +
                                    " components (m! routes)");
  }
  std::set<std::string> seen;
  for (const auto& name : components) {
    if (name.empty() || !seen.insert(name).second) {
      throw ConfigurationError("CascadeSpec: component names must be unique and non-empty");
    }
  }
  const uint32_t full = (1u << m) - 1u;
  for (uint32_t mask = 0; mask < full; ++mask) {
    for (int next = 0; next < m; ++next) {
      if (mask & (1u << next)) continue;
      const StepDistribution& law = law_for(mask, next);
      if (law.improper()) {
        throw ConfigurationError("CascadeSpec: law for '" + components[static_cast<size_t>(next)] +
                                 "' given " + mask_name(mask) + " is improper");
      }
    }
  }
}

CascadeSpec CascadeSpec::history_independent(std::vector<std::string> names,
                                             std::vector<StepDistribution> laws) {
  if (names.size() != laws.size()) {
    throw ConfigurationError("CascadeSpec: one law per component required");
  }
  std::vector<Override> none;
  return from_base_and_overrides(std::move(names), std::move(laws), none);
}

CascadeSpec CascadeSpec::from_base_and_overrides(std::vector<std::string> names,
                                                 std::vector<StepDistribution> base,
                                                 const std::vector<Override>& overrides) {
  if (names.size() != base.size()) {
    throw ConfigurationError("CascadeSpec: one base law per component required");
  }
  CascadeSpec spec;
  spec.components = std::move(names);
  const int m = spec.size();
  if (m < 1 || m > kMaxComponents) {
    throw ConfigurationError("CascadeSpec: component count must be in [1, " +
                             std::to_string(kMaxComponents) + "]");
  }
  std::vector<std::pair<uint32_t, const Override*>> masked;
  for (const auto& ov : overrides) {
    uint32_t mask = 0;
    for (int idx : ov.required_failed) {
      if (idx < 0 || idx >= m) throw ConfigurationError("CascadeSpec: override index out of range");
      mask |= 1u << idx;
    }
    if (ov.component < 0 || ov.component >= m) {
      throw ConfigurationError("CascadeSpec: override component out of range");
    }
    if (mask & (1u << ov.component)) {
      throw ConfigurationError("CascadeSpec: override target is in its own required set");
    }
    masked.emplace_back(mask, &ov);
  }
  const uint32_t full = (1u << m) - 1u;
  for (uint32_t mask = 0; mask < full; ++mask) {
    for (int next = 0; next < m; ++next) {
      if (mask & (1u << next)) continue;
      const StepDistribution* chosen = &base[static_cast<size_t>(next)];
      int best_bits = -1;
      for (const auto& [req, ov] : masked) {
        if (ov->component != next) continue;
        if ((mask & req) != req) continue;
        const int bits = std::popcount(req);
        if (bits >= best_bits) {  // later entries win ties
          best_bits = bits;
          chosen = &ov->law;
        }
      }
      spec.laws.emplace(std::make_pair(mask, next), *chosen);
    }
  }
  spec.validate();
  return spec;
}

std::vector<std::vector<int>> enumerate_orderings(const CascadeSpec& spec) {
  const int m = spec.size();
  if (m < 1) throw ConfigurationError("enumerate_orderings: empty cascade");
  if (m > CascadeSpec::kMaxComponents) {
    throw UnsupportedOperationError("enumerate_orderings: m > " +
                                    std::to_string(CascadeSpec::kMaxComponents));
  }
  std::vector<int> perm(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) perm[static_cast<size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CurveSet cascade_route_pdf(const std::vector<int>& ordering, const CascadeSpec& spec,
                           const TimeGrid& grid) {
  if (static_cast<int>(ordering.size()) != spec.size()) {
    throw InvalidArgumentError("cascade_route_pdf: ordering length must equal component count");
  }
  std::vector<StepDistribution> steps;
  steps.reserve(ordering.size());
  uint32_t failed = 0;
  for (int next : ordering) {
    steps.push_back(spec.law_for(failed, next));
    failed |= 1u << next;
  }
  return sum_sequential(steps, grid);
}

CascadeResult cascade_survival(const CascadeSpec& spec, const TimeGrid& grid) {
  CascadeResult result;
  result.orderings = enumerate_orderings(spec);
  result.routes.reserve(result.orderings.size());
  const size_t n = static_cast<size_t>(grid.size());
  std::vector<double> h(n, 0.0);
  std::vector<double> H(n, 0.0);
  bool clamped = false;
  for (const auto& ordering : result.orderings) {
    CurveSet route = cascade_route_pdf(ordering, spec, grid);
    clamped = clamped || route.clamped;
    for (size_t i = 0; i < n; ++i) {
      h[i] += route.h[i];
      H[i] += route.H[i];
    }
    result.routes.push_back(std::move(route));
  }
  result.system = curves_from_hazard(grid, std::move(h), std::move(H));
  result.system.clamped = result.system.clamped || clamped;
  return result;
}

CurveSet powerlaw_cascade(const std::vector<std::pair<double, double>>& terms,
                          const TimeGrid& grid) {
  if (terms.empty()) throw InvalidParameterError("powerlaw_cascade: need at least one term");
  for (const auto& [a, p] : terms) {
    if (!(a > 0.0) || !std::isfinite(a) || !(p > 0.0) || !std::isfinite(p)) {
      throw InvalidParameterError("powerlaw_cascade: require a > 0 and p > 0");
    }
  }
  const auto& t = grid.points();
  std::vector<double> h(t.size(), 0.0);
  std::vector<double> H(t.size(), 0.0);
  bool clamped = false;
  for (size_t i = 0; i < t.size(); ++i) {
    for (const auto& [a, p] : terms) {
      H[i] += a * std::pow(t[i], p);
      double hz;
      if (t[i] == 0.0) {
        hz = p == 1.0 ? a : (p > 1.0 ? 0.0 : std::numeric_limits<double>::infinity());
      } else {
        hz = a * p * std::pow(t[i], p - 1.0);
      }
      if (!std::isfinite(hz)) {  // singular hazard at the origin for p < 1
        hz = 0.0;
        clamped = true;
      }
      h[i] += hz;
    }
  }
  CurveSet cs = curves_from_hazard(grid, std::move(h), std::move(H));
  cs.clamped = cs.clamped || clamped;
  return cs;
}

double estimate_horizon(const CascadeSpec& spec) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& ordering : enumerate_orderings(spec)) {
    double sum = 0.0;
    uint32_t failed = 0;
    for (int next : ordering) {
      const StepDistribution& law = spec.law_for(failed, next);
      sum += survival_horizon([&](double t) { return law.survival(t); }, 1e-6);
      failed |= 1u << next;
    }
    best = std::min(best, sum);
  }
  return best;
}

}  // namespace mshaz
