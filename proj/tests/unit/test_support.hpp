#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mshaz/curves.hpp"
#include "mshaz/exp_poly_mix.hpp"
#include "mshaz/grid.hpp"
#include "mshaz/rng.hpp"
#include "mshaz/step_distribution.hpp"

namespace mshaz::test {

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

inline double peak(const std::vector<double>& a) {
  double p = 0.0;
  for (double v : a) p = std::max(p, std::fabs(v));
  return p;
}

inline std::vector<double> density_on(const StepDistribution& dist, const TimeGrid& grid) {
  std::vector<double> f(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const double v = dist.density(grid[i]);
    f[static_cast<size_t>(i)] = std::isfinite(v) ? v : 0.0;
  }
  return f;
}

inline std::vector<double> density_on(const ExpPolyMix& mix, const TimeGrid& grid) {
  std::vector<double> f(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) f[static_cast<size_t>(i)] = mix.density(grid[i]);
  return f;
}

inline std::vector<double> eval_on(const TimeGrid& grid,
                                   const std::function<double(double)>& fn) {
  std::vector<double> out(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) out[static_cast<size_t>(i)] = fn(grid[i]);
  return out;
}

inline double uniform_in(SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform();
}

/// R^2 of the least-squares line through (x_i, y_i).
inline double linear_fit_r2(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double cov = sxy - sx * sy / n;
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  if (vx <= 0.0 || vy <= 0.0) return 1.0;
  return cov * cov / (vx * vy);
}

}  // namespace mshaz::test
