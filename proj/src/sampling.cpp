#include <cmath>

#include "mshaz/errors.hpp"
#include "mshaz/step_distribution.hpp"

namespace mshaz {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

double draw_exponential_unit(SplitMix64& rng) { return -std::log(rng.uniform_pos()); }

double draw_normal(SplitMix64& rng) {
  const double u1 = rng.uniform_pos();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Marsaglia-Tsang, exact for all shape > 0 given exact uniforms.
double draw_gamma(SplitMix64& rng, double shape, double rate) {
  if (shape < 1.0) {
    const double boost = std::pow(rng.uniform_pos(), 1.0 / shape);
    return draw_gamma(rng, shape + 1.0, rate) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = draw_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_pos();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

// Invert H(t) = target for a strictly increasing cumulative hazard.
template <typename Fn>
double invert_cumhaz(Fn&& cumhaz, double target, double hi_guess) {
  double hi = hi_guess;
  for (int i = 0; i < 400 && cumhaz(hi) < target; ++i) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cumhaz(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double draw_tabulated(SplitMix64& rng, const Tabulated& tab) {
  const auto& x = tab.grid.points();
  const auto& f = tab.density;
  const double u = rng.uniform();
  double acc = 0.0;
  for (size_t i = 1; i < x.size(); ++i) {
    const double dt = x[i] - x[i - 1];
    const double cell = 0.5 * (f[i] + f[i - 1]) * dt;
    if (acc + cell < u) {
      acc += cell;
      continue;
    }
    // Solve f0*z + slope*z^2/2 = u - acc on this cell (density linear in z).
    const double rem = u - acc;
    const double f0 = f[i - 1];
    const double slope = (f[i] - f[i - 1]) / dt;
    if (std::fabs(slope) * dt < 1e-14 * std::max(f0, 1e-300)) {
      if (f0 <= 0.0) return x[i - 1];
      return x[i - 1] + rem / f0;
    }
    const double disc = std::max(0.0, f0 * f0 + 2.0 * slope * rem);
    const double z = (-f0 + std::sqrt(disc)) / slope;
    return x[i - 1] + std::min(std::max(z, 0.0), dt);
  }
  return x.back();
}

}  // namespace

double StepDistribution::sample_one(SplitMix64& rng) const {
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return draw_exponential_unit(rng) / d.rate;
        } else if constexpr (std::is_same_v<T, Gamma>) {
          return draw_gamma(rng, d.shape, d.rate);
        } else if constexpr (std::is_same_v<T, Weibull2>) {
          return std::sqrt(2.0 * draw_exponential_unit(rng) / d.hazard_coeff);
        } else if constexpr (std::is_same_v<T, PowerLawHazard>) {
          throw UnsupportedOperationError(
              "sample_one: PowerLawHazard is improper; sampling without a truncation horizon is "
              "undefined");
        } else if constexpr (std::is_same_v<T, LogisticDetection>) {
          const double target = draw_exponential_unit(rng);
          // H(t) >= a t - (a/c) log N gives an analytic upper bound.
          const double hi =
              (target + d.detection_rate / d.growth_rate * std::log(d.initial_cells)) /
                  d.detection_rate +
              1.0;
          return invert_cumhaz([&](double t) { return cumulative_hazard(t); }, target, hi);
        } else {
          if (d.improper) {
            throw UnsupportedOperationError("sample_one: improper tabulated density");
          }
          return draw_tabulated(rng, d);
        }
      },
      v_);
}

std::vector<double> sample_step(const StepDistribution& dist, int64_t count, uint64_t seed) {
  if (count < 1) throw InvalidParameterError("sample_step: count must be >= 1");
  std::vector<double> out(static_cast<size_t>(count));
  for (int64_t i = 0; i < count; ++i) {
    SplitMix64 rng = sample_stream(seed, static_cast<uint64_t>(i));
    out[static_cast<size_t>(i)] = dist.sample_one(rng);
  }
  return out;
}

}  // namespace mshaz
