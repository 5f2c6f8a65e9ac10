#pragma once

#include <variant>

#include "mshaz/curves.hpp"
#include "mshaz/exp_poly_mix.hpp"
#include "mshaz/step_distribution.hpp"

namespace mshaz {

/// Waiting-time law from initiation to detection: logistic clonal growth
/// with detection hazard proportional to population size, a hazard linear
/// in time (Weibull2), or a Gamma-distributed delay.
using DetectionSpec = std::variant<LogisticDetection, Weibull2, Gamma>;

/// Detection-time curves for logistic clonal growth: the hazard is
/// a * x(t) with x(t) = 1/(1 + (N-1)e^{-ct}), integrated so that S(0) = 1.
CurveSet logistic_detection_curves(double detection_rate, double growth_rate, double initial_cells,
                                   const TimeGrid& grid);

/// Density of (exponential initiation, rate a) + (Weibull2 detection,
/// hazard coefficient b), in closed form via the error function with the
/// branch split at t = a/b. Evaluated through the scaled complement erfcx
/// so both branches are stable.
CurveSet weibull_after_exponential(double a, double b, const TimeGrid& grid);

/// Density of (Gamma(p, b) initiation) + (exponential detection, rate a).
/// Closed form through the regularized lower incomplete gamma when b > a;
/// numeric convolution otherwise.
CurveSet exponential_after_gamma(double a, double b, double p, const TimeGrid& grid);

/// Convolve a proper exponential-polynomial initiation density with a
/// detection law, term by term: pure exponential terms with Weibull2 or
/// Gamma detection use the closed forms above, everything else falls back
/// to numeric convolution on a fine grid.
CurveSet detect_after_mixture(const ExpPolyMix& initiation, const DetectionSpec& detection,
                              const TimeGrid& grid);

}  // namespace mshaz
