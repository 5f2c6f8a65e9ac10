#include "mshaz/grid.hpp"

#include <cmath>
#include <string>

#include "mshaz/errors.hpp"

namespace mshaz {

TimeGrid::TimeGrid(std::vector<double> points, Spacing spacing)
    : points_(std::move(points)), spacing_(spacing) {
  if (points_.size() < 2) {
    throw InvalidParameterError("TimeGrid: need at least 2 points");
  }
  if (!(points_.front() >= 0.0) || !std::isfinite(points_.front())) {
    throw InvalidParameterError("TimeGrid: first point must be finite and >= 0");
  }
  for (size_t i = 1; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || !(points_[i] > points_[i - 1])) {
      throw InvalidParameterError("TimeGrid: points must be finite and strictly increasing (index " +
                                  std::to_string(i) + ")");
    }
  }
}

TimeGrid TimeGrid::uniform(double t0, double t1, int n) {
  if (n < 2) throw InvalidParameterError("TimeGrid::uniform: need n >= 2");
  std::vector<double> pts(static_cast<size_t>(n));
  const double dt = (t1 - t0) / (n - 1);
  for (int i = 0; i < n; ++i) pts[static_cast<size_t>(i)] = t0 + dt * i;
  pts.back() = t1;
  return TimeGrid(std::move(pts), Spacing::kUniform);
}

TimeGrid TimeGrid::logarithmic(double t0, double t1, int n) {
  if (n < 2) throw InvalidParameterError("TimeGrid::logarithmic: need n >= 2");
  if (!(t0 > 0.0)) throw InvalidParameterError("TimeGrid::logarithmic: need t0 > 0");
  std::vector<double> pts(static_cast<size_t>(n));
  const double la = std::log(t0);
  const double lb = std::log(t1);
  for (int i = 0; i < n; ++i) {
    pts[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (n - 1));
  }
  pts.front() = t0;
  pts.back() = t1;
  return TimeGrid(std::move(pts), Spacing::kLogarithmic);
}

double TimeGrid::step() const {
  if (spacing_ != Spacing::kUniform) {
    throw InvalidArgumentError("TimeGrid::step: grid is not uniform");
  }
  return (points_.back() - points_.front()) / (size() - 1);
}

}  // namespace mshaz
