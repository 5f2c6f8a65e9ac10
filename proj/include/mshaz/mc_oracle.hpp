#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mshaz/cascade_model.hpp"
#include "mshaz/curves.hpp"
#include "mshaz/route_algebra.hpp"

namespace mshaz {

/// Simulated failure times. Reproducible: identical (model, seed, count)
/// yields identical times, independent of thread count, because sample i
/// draws from a stream derived from (seed, i).
struct SampleSet {
  std::vector<double> times;
  uint64_t seed = 0;
  uint64_t model_hash = 0;
};

/// Per-sample cascade outcome of the physical race process: the failure
/// time and the lexicographic index of the realized failure ordering.
struct CascadeSamples {
  std::vector<double> times;
  std::vector<int> route_index;
  uint64_t seed = 0;
  uint64_t model_hash = 0;
};

/// Simulate the full system: each sample is the minimum over all
/// multiplicity replicas and routes of the route failure time (sequential =
/// sum of steps, unordered = max of steps, cascade = race process,
/// power-law = inverse cumulative hazard).
SampleSet simulate_system(const SystemSpec& spec, int64_t count, uint64_t seed);

/// Physical race process: after each failure the surviving components'
/// clocks restart under the law conditioned on the new failed set; the
/// system fails when every component has failed.
CascadeSamples simulate_cascade_race(const CascadeSpec& spec, int64_t count, uint64_t seed);

/// The product-over-routes composition sampled literally: every ordering's
/// route clock (sum of its conditional step laws) runs independently and
/// the earliest completion wins. This is the process whose survival is
/// exactly the product of route survivals; comparing it with the race
/// process measures the composition's approximation error.
SampleSet simulate_cascade_routeproduct(const CascadeSpec& spec, int64_t count, uint64_t seed);

/// Kolmogorov-Smirnov distance between samples and a model CDF given on a
/// grid (linearly interpolated between grid points).
double ks_statistic(const std::vector<double>& samples, const CurveSet& cdf);

/// Same with an exact CDF callable.
double ks_statistic_fn(std::vector<double> samples, const std::function<double(double)>& cdf);

/// 99% critical value 1.63 / sqrt(n) for the one-sample KS test.
double ks_critical_99(int64_t n);

/// FNV-1a hash of a model descriptor string.
uint64_t fnv1a(const std::string& text);

}  // namespace mshaz
