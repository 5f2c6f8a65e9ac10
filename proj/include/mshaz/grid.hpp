#pragma once

#include <vector>

namespace mshaz {

/// Strictly increasing evaluation times t >= 0 with a spacing tag.
class TimeGrid {
 public:
  enum class Spacing { kUniform, kLogarithmic };

  /// Trivial placeholder grid {0, 1}.
  TimeGrid() : points_{0.0, 1.0}, spacing_(Spacing::kUniform) {}

  TimeGrid(std::vector<double> points, Spacing spacing);

  static TimeGrid uniform(double t0, double t1, int n);
  static TimeGrid logarithmic(double t0, double t1, int n);

  const std::vector<double>& points() const { return points_; }
  Spacing spacing() const { return spacing_; }
  int size() const { return static_cast<int>(points_.size()); }
  double operator[](int i) const { return points_[static_cast<size_t>(i)]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

  /// Constant step of a uniform grid.
  double step() const;

  bool operator==(const TimeGrid& other) const {
    return spacing_ == other.spacing_ && points_ == other.points_;
  }

 private:
  std::vector<double> points_;
  Spacing spacing_;
};

/// Default evaluation grid: kDefaultGridPoints uniform points on [0, horizon].
inline constexpr int kDefaultGridPoints = 1024;

/// Smallest t with survival(t) <= target, found by doubling then bisection.
/// `survival` must be non-increasing with survival(0) = 1.
template <typename Fn>
double survival_horizon(Fn&& survival, double target = 1e-6, double t_start = 1.0) {
  double hi = t_start;
  for (int i = 0; i < 400 && survival(hi) > target; ++i) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace mshaz
