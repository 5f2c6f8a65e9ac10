#include "mshaz/detection_models.hpp"

#include <cmath>

#include "mshaz/errors.hpp"
#include "mshaz/sequential_engine.hpp"
#include "mshaz/special_functions.hpp"

namespace mshaz {

namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidParameterError(std::string(what) + " must be finite and > 0");
  }
}

struct DensitySurvival {
  std::vector<double> f;
  std::vector<double> S;
};

// f and S of Exp(a) + Weibull2(b) on the grid. The bracket
// B(t) = e^{-at} e^{alpha^2} (erf(alpha) + erf(beta)) is evaluated via
// erfcx so no intermediate exceeds the final magnitude:
//   t <  a/b:  B = e^{-b t^2/2} erfcx(-beta) - e^{-a t} erfcx(alpha)
//   t >= a/b:  B = 2 e^{alpha^2 - a t} - e^{-b t^2/2} erfcx(beta) - e^{-a t} erfcx(alpha)
// using alpha^2 - beta^2 - a t = -b t^2 / 2.
DensitySurvival weibull_after_exponential_fs(double a, double b, const TimeGrid& grid) {
  const double alpha = a / std::sqrt(2.0 * b);
  const double scale = std::sqrt(8.0 * std::atan(1.0) / (2.0 * b));  // sqrt(pi/(2b))
  const double seam = a / b;
  const auto& t = grid.points();
  DensitySurvival out{std::vector<double>(t.size()), std::vector<double>(t.size())};
  const double erfcx_alpha = sf::erfcx(alpha);
  for (size_t i = 0; i < t.size(); ++i) {
    const double x = t[i];
    const double beta = std::sqrt(0.5 * b) * (x - seam);
    const double exp_at = std::exp(-a * x);
    const double exp_w = std::exp(-0.5 * b * x * x);
    double bracket;
    if (x < seam) {
      bracket = exp_w * sf::erfcx(-beta) - exp_at * erfcx_alpha;
    } else {
      bracket = 2.0 * std::exp(alpha * alpha - a * x) - exp_w * sf::erfcx(beta) -
                exp_at * erfcx_alpha;
    }
    out.f[i] = a * (exp_at - exp_w) + a * a * scale * bracket;
    out.S[i] = exp_at + a * scale * bracket;
  }
  return out;
}

// Closed form for Gamma(p, b) + Exp(a) when b > a.
DensitySurvival exponential_after_gamma_fs(double a, double b, double p, const TimeGrid& grid) {
  const double ratio_pow = std::exp(p * std::log(b / (b - a)));
  const auto& t = grid.points();
  DensitySurvival out{std::vector<double>(t.size()), std::vector<double>(t.size())};
  for (size_t i = 0; i < t.size(); ++i) {
    const double x = t[i];
    const double core = std::exp(-a * x) * ratio_pow * sf::gamma_p(p, x * (b - a));
    out.f[i] = a * core;
    out.S[i] = sf::gamma_q(p, b * x) + core;
  }
  return out;
}

// Numeric convolution of two step densities, folded on a fine uniform grid
// and resampled onto the requested grid.
DensitySurvival numeric_conv_fs(const StepDistribution& first, const StepDistribution& second,
                                const TimeGrid& grid) {
  const int n_fine = std::max(4 * grid.size(), 4096);
  const TimeGrid fine = TimeGrid::uniform(0.0, grid.back(), n_fine);
  const auto& tf = fine.points();
  auto density_on_fine = [&](const StepDistribution& s) {
    std::vector<double> f(tf.size());
    for (size_t i = 0; i < tf.size(); ++i) {
      const double v = s.density(tf[i]);
      f[i] = std::isfinite(v) ? v : 0.0;
    }
    return f;
  };
  const std::vector<double> conv =
      convolve_numeric(fine, density_on_fine(first), density_on_fine(second));
  const std::vector<double> cum = cumulative_trapezoid(fine, conv);
  DensitySurvival out{std::vector<double>(grid.size()), std::vector<double>(grid.size())};
  for (int i = 0; i < grid.size(); ++i) {
    out.f[static_cast<size_t>(i)] = std::max(0.0, interp_linear(fine, conv, grid[i]));
    out.S[static_cast<size_t>(i)] =
        std::min(1.0, std::max(0.0, 1.0 - interp_linear(fine, cum, grid[i])));
  }
  return out;
}

StepDistribution detection_step(const DetectionSpec& detection) {
  return std::visit([](const auto& d) { return StepDistribution(d); }, detection);
}

}  // namespace

CurveSet logistic_detection_curves(double detection_rate, double growth_rate, double initial_cells,
                                   const TimeGrid& grid) {
  return eval_curves(
      StepDistribution(LogisticDetection{detection_rate, growth_rate, initial_cells}), grid);
}

CurveSet weibull_after_exponential(double a, double b, const TimeGrid& grid) {
  require_positive(a, "weibull_after_exponential: a");
  require_positive(b, "weibull_after_exponential: b");
  DensitySurvival fs = weibull_after_exponential_fs(a, b, grid);
  return curves_from_density_survival(grid, std::move(fs.f), std::move(fs.S));
}

CurveSet exponential_after_gamma(double a, double b, double p, const TimeGrid& grid) {
  require_positive(a, "exponential_after_gamma: a");
  require_positive(b, "exponential_after_gamma: b");
  require_positive(p, "exponential_after_gamma: p");
  DensitySurvival fs;
  if (b > a * (1.0 + 1e-9)) {
    fs = exponential_after_gamma_fs(a, b, p, grid);
  } else {
    fs = numeric_conv_fs(StepDistribution(Gamma{p, b}), StepDistribution(Exponential{a}), grid);
  }
  return curves_from_density_survival(grid, std::move(fs.f), std::move(fs.S));
}

CurveSet detect_after_mixture(const ExpPolyMix& initiation, const DetectionSpec& detection,
                              const TimeGrid& grid) {
  if (!initiation.is_proper(1e-8)) {
    throw InvalidArgumentError("detect_after_mixture: initiation density must be proper");
  }
  const size_t n = static_cast<size_t>(grid.size());
  std::vector<double> f(n, 0.0);
  std::vector<double> S(n, 0.0);
  double mass = 0.0;
  for (const auto& term : initiation.terms()) {
    // c t^k e^{-mu t} = weight * Gamma(k+1, mu) density.
    const double weight =
        term.coeff * sf::factorial(term.power) / std::pow(term.rate, term.power + 1);
    mass += weight;
    DensitySurvival fs;
    const auto* weib = std::get_if<Weibull2>(&detection);
    const auto* gam = std::get_if<Gamma>(&detection);
    if (term.power == 0 && weib != nullptr) {
      fs = weibull_after_exponential_fs(term.rate, weib->hazard_coeff, grid);
    } else if (term.power == 0 && gam != nullptr && gam->rate > term.rate * (1.0 + 1e-9)) {
      fs = exponential_after_gamma_fs(term.rate, gam->rate, gam->shape, grid);
    } else {
      fs = numeric_conv_fs(StepDistribution(Gamma{static_cast<double>(term.power + 1), term.rate}),
                           detection_step(detection), grid);
    }
    for (size_t i = 0; i < n; ++i) {
      f[i] += weight * fs.f[i];
      S[i] += weight * fs.S[i];
    }
  }
  // The term weights sum to the initiation mass (1 up to roundoff);
  // normalizing keeps S(0) = 1 exact.
  for (size_t i = 0; i < n; ++i) {
    f[i] /= mass;
    S[i] = std::min(1.0, std::max(0.0, S[i] / mass));
  }
  return curves_from_density_survival(grid, std::move(f), std::move(S));
}

}  // namespace mshaz
