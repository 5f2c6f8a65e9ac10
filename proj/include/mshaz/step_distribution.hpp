#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mshaz/curves.hpp"
#include "mshaz/exp_poly_mix.hpp"
#include "mshaz/grid.hpp"
#include "mshaz/rng.hpp"

namespace mshaz {

/// Constant hazard `rate`.
struct Exponential {
  double rate;
};

/// Gamma(shape, rate) waiting time; shape need not be an integer.
struct Gamma {
  double shape;
  double rate;
};

/// Hazard linear in time: h = b t, S = exp(-b t^2 / 2).
struct Weibull2 {
  double hazard_coeff;
};

/// Improper small-time law f ~ h = coeff * t^exponent, valid while S ~ 1.
/// Not normalized; operations that require a proper density reject it.
struct PowerLawHazard {
  double coeff;
  double exponent;
};

/// Detection of a logistically growing population: hazard proportional to
/// x(t) = 1 / (1 + (N-1) exp(-c t)), with x(0) = 1/N.
struct LogisticDetection {
  double detection_rate;  ///< a
  double growth_rate;     ///< c
  double initial_cells;   ///< N >= 1
};

/// Density given by samples on its own grid (linear interpolation between
/// nodes). `improper` waives the unit-mass requirement.
struct Tabulated {
  TimeGrid grid;
  std::vector<double> density;
  bool improper = false;
};

/// One waiting-time law for a single step. Parameters are validated at
/// construction; all evaluation methods are pure.
class StepDistribution {
 public:
  using Variant =
      std::variant<Exponential, Gamma, Weibull2, PowerLawHazard, LogisticDetection, Tabulated>;

  StepDistribution(Exponential d);          // NOLINT(google-explicit-constructor)
  StepDistribution(Gamma d);                // NOLINT(google-explicit-constructor)
  StepDistribution(Weibull2 d);             // NOLINT(google-explicit-constructor)
  StepDistribution(PowerLawHazard d);       // NOLINT(google-explicit-constructor)
  StepDistribution(LogisticDetection d);    // NOLINT(google-explicit-constructor)
  StepDistribution(Tabulated d);            // NOLINT(google-explicit-constructor)

  const Variant& value() const { return v_; }

  template <typename T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  /// True for laws that are not normalized densities (PowerLawHazard,
  /// improper Tabulated).
  bool improper() const;

  /// f(t). For improper laws this is the small-time identification f ~ h.
  double density(double t) const;
  double survival(double t) const;
  double hazard(double t) const;
  double cumulative_hazard(double t) const;

  /// Pole (rate, shape) when the law is Exponential or integer-shape Gamma,
  /// i.e. when it is exactly convolvable in the ExpPolyMix algebra.
  std::optional<std::pair<double, int>> exact_pole() const;

  /// Short description used in diagnostics and model hashing.
  std::string describe() const;

  /// One draw from the law using the given stream.
  double sample_one(SplitMix64& rng) const;

 private:
  Variant v_;
};

/// Sample f, F, S, h, H on a grid. Improper laws are evaluated through
/// S = exp(-integral of h) and f = h S. Underflowed values clamp to zero
/// with the CurveSet `clamped` flag set; results are never NaN.
CurveSet eval_curves(const StepDistribution& dist, const TimeGrid& grid);
CurveSet eval_curves(const ExpPolyMix& mix, const TimeGrid& grid);

/// Default grid: kDefaultGridPoints uniform points from 0 to the
/// 1 - 1e-6 survival quantile.
TimeGrid default_grid(const StepDistribution& dist, int points = kDefaultGridPoints);
TimeGrid default_grid(const ExpPolyMix& mix, int points = kDefaultGridPoints);

/// `count` deterministic draws; sample i depends only on (dist, seed, i).
std::vector<double> sample_step(const StepDistribution& dist, int64_t count, uint64_t seed);

}  // namespace mshaz
