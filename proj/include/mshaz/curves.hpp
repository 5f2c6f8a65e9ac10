#pragma once

#include <string>
#include <vector>

#include "mshaz/grid.hpp"

namespace mshaz {

/// Sampled density, distribution, survival, hazard, and cumulative hazard
/// on a common grid. Internally consistent: F = 1 - S, H = -log S, f = h * S.
/// Points where exp() underflowed are clamped to zero and `clamped` is set;
/// values are never NaN.
struct CurveSet {
  TimeGrid grid;
  std::vector<double> f;
  std::vector<double> F;
  std::vector<double> S;
  std::vector<double> h;
  std::vector<double> H;
  bool clamped = false;   ///< underflow or singular-origin values were clamped
  bool negative = false;  ///< density was genuinely negative before clamping
};

/// Build a CurveSet from analytic hazard and cumulative hazard samples.
CurveSet curves_from_hazard(const TimeGrid& grid, std::vector<double> hazard,
                            std::vector<double> cumhaz);

/// Build a CurveSet from analytic density and survival samples.
CurveSet curves_from_density_survival(const TimeGrid& grid, std::vector<double> density,
                                      std::vector<double> survival);

/// Build a CurveSet from density samples alone; F is accumulated by the
/// trapezoid rule and the remaining curves derived. Small negative density
/// values (within noise_tol * max|f|) are clamped to zero.
CurveSet curves_from_density(const TimeGrid& grid, std::vector<double> density,
                             double noise_tol = 1e-9);

/// Verify the CurveSet self-consistency contract; returns a list of
/// violations (empty when the set is consistent).
std::vector<std::string> check_curves(const CurveSet& cs);

/// Trapezoid integral of samples y over grid g.
double trapezoid(const TimeGrid& grid, const std::vector<double>& y);

/// Cumulative trapezoid integral; out[i] = integral of y over [t0, ti].
std::vector<double> cumulative_trapezoid(const TimeGrid& grid, const std::vector<double>& y);

/// Piecewise-linear interpolation of samples y on grid at time t,
/// clamped to the end values outside the grid range.
double interp_linear(const TimeGrid& grid, const std::vector<double>& y, double t);

}  // namespace mshaz
