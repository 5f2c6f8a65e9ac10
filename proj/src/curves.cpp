#include "mshaz/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mshaz/errors.hpp"

namespace mshaz {

namespace {

constexpr double kSurvivalFloor = 1e-300;

void require_size(const TimeGrid& grid, const std::vector<double>& v, const char* what) {
  if (static_cast<int>(v.size()) != grid.size()) {
    throw InvalidArgumentError(std::string("CurveSet: ") + what + " length does not match grid");
  }
}

}  // namespace

CurveSet curves_from_hazard(const TimeGrid& grid, std::vector<double> hazard,
                            std::vector<double> cumhaz) {
  require_size(grid, hazard, "hazard");
  require_size(grid, cumhaz, "cumulative hazard");
  const size_t n = hazard.size();
  CurveSet cs{grid, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
              std::move(hazard), std::move(cumhaz)};
  for (size_t i = 0; i < n; ++i) {
    double s = std::exp(-cs.H[i]);
    if (s < kSurvivalFloor) {
      s = 0.0;
      cs.clamped = true;
    }
    cs.S[i] = s;
    cs.F[i] = 1.0 - s;
    cs.f[i] = cs.h[i] * s;
  }
  return cs;
}

CurveSet curves_from_density_survival(const TimeGrid& grid, std::vector<double> density,
                                      std::vector<double> survival) {
  require_size(grid, density, "density");
  require_size(grid, survival, "survival");
  const size_t n = density.size();
  double fmax = 0.0;
  for (double v : density) fmax = std::max(fmax, std::fabs(v));
  bool negative = false;
  for (double& v : density) {
    if (v < 0.0) {
      if (v < -1e-9 * fmax) negative = true;
      v = 0.0;
    }
  }
  CurveSet cs{grid, std::move(density), std::vector<double>(n), std::move(survival),
              std::vector<double>(n), std::vector<double>(n)};
  for (size_t i = 0; i < n; ++i) {
    double s = cs.S[i];
    if (s < kSurvivalFloor) {
      s = 0.0;
      cs.S[i] = 0.0;
      cs.f[i] = 0.0;
      cs.h[i] = 0.0;
      cs.H[i] = std::numeric_limits<double>::infinity();
      cs.clamped = true;
    } else {
      cs.h[i] = cs.f[i] / s;
      cs.H[i] = -std::log(s);
    }
    cs.F[i] = 1.0 - cs.S[i];
  }
  cs.negative = negative;
  return cs;
}

CurveSet curves_from_density(const TimeGrid& grid, std::vector<double> density, double noise_tol) {
  require_size(grid, density, "density");
  double fmax = 0.0;
  for (double v : density) fmax = std::max(fmax, std::fabs(v));
  bool negative = false;
  for (double& v : density) {
    if (v < 0.0) {
      if (v < -noise_tol * fmax) negative = true;
      v = 0.0;
    }
  }
  std::vector<double> F = cumulative_trapezoid(grid, density);
  std::vector<double> S(F.size());
  for (size_t i = 0; i < F.size(); ++i) {
    F[i] = std::min(F[i], 1.0);
    S[i] = 1.0 - F[i];
  }
  CurveSet cs = curves_from_density_survival(grid, std::move(density), std::move(S));
  cs.negative = cs.negative || negative;
  return cs;
}

std::vector<std::string> check_curves(const CurveSet& cs) {
  std::vector<std::string> bad;
  const auto& t = cs.grid.points();
  const size_t n = t.size();
  if (cs.f.size() != n || cs.F.size() != n || cs.S.size() != n || cs.h.size() != n ||
      cs.H.size() != n) {
    bad.push_back("array lengths do not match grid");
    return bad;
  }
  double fmax = 0.0;
  for (double v : cs.f) fmax = std::max(fmax, v);
  if (t[0] == 0.0 && std::fabs(cs.S[0] - 1.0) > 1e-12) {
    bad.push_back("S(0) != 1");
  }
  for (size_t i = 0; i < n; ++i) {
    if (std::isnan(cs.f[i]) || std::isnan(cs.F[i]) || std::isnan(cs.S[i]) || std::isnan(cs.h[i]) ||
        std::isnan(cs.H[i])) {
      bad.push_back("NaN at index " + std::to_string(i));
      break;
    }
  }
  for (size_t i = 1; i < n; ++i) {
    if (cs.S[i] > cs.S[i - 1] + 1e-12) {
      bad.push_back("S not non-increasing at index " + std::to_string(i));
      break;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (std::fabs(cs.F[i] - (1.0 - cs.S[i])) > 1e-12) {
      bad.push_back("F != 1 - S at index " + std::to_string(i));
      break;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (cs.S[i] <= 0.0) continue;  // clamped tail, H carries +inf
    if (std::fabs(cs.H[i] + std::log(cs.S[i])) > 1e-10 * std::max(1.0, std::fabs(cs.H[i]))) {
      bad.push_back("H != -log S at index " + std::to_string(i));
      break;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (std::fabs(cs.f[i] - cs.h[i] * cs.S[i]) > 1e-8 * std::max(fmax, 1e-300)) {
      bad.push_back("f != h * S at index " + std::to_string(i));
      break;
    }
  }
  return bad;
}

double trapezoid(const TimeGrid& grid, const std::vector<double>& y) {
  require_size(grid, y, "integrand");
  const auto& t = grid.points();
  double acc = 0.0;
  for (size_t i = 1; i < y.size(); ++i) {
    acc += 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
  }
  return acc;
}

std::vector<double> cumulative_trapezoid(const TimeGrid& grid, const std::vector<double>& y) {
  require_size(grid, y, "integrand");
  const auto& t = grid.points();
  std::vector<double> out(y.size());
  out[0] = 0.0;
  for (size_t i = 1; i < y.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (y[i] + y[i - 1]) * (t[i] - t[i - 1]);
  }
  return out;
}

double interp_linear(const TimeGrid& grid, const std::vector<double>& y, double t) {
  require_size(grid, y, "samples");
  const auto& x = grid.points();
  if (t <= x.front()) return y.front();
  if (t >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const size_t i = static_cast<size_t>(it - x.begin());
  const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + w * (y[i] - y[i - 1]);
}

}  // namespace mshaz
