#include "mshaz/step_distribution.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mshaz/errors.hpp"
#include "mshaz/special_functions.hpp"

namespace mshaz {

namespace {

void require_finite_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidParameterError(std::string(what) + " must be finite and > 0");
  }
}

double logistic_population(double t, const LogisticDetection& d) {
  // x(t) = 1 / (1 + (N-1) e^{-ct}), x(0) = 1/N.
  return 1.0 / (1.0 + (d.initial_cells - 1.0) * std::exp(-d.growth_rate * t));
}

double logistic_cumhaz(double t, const LogisticDetection& d) {
  // a * int_0^t x = (a/c) [ct + log1p((N-1) e^{-ct}) - log N]
  const double a = d.detection_rate;
  const double c = d.growth_rate;
  const double n = d.initial_cells;
  return a / c * (c * t + std::log1p((n - 1.0) * std::exp(-c * t)) - std::log(n));
}

double gamma_density(double t, double shape, double rate) {
  if (t == 0.0) {
    if (shape > 1.0) return 0.0;
    if (shape == 1.0) return rate;
    return std::numeric_limits<double>::infinity();  // integrable singularity
  }
  return std::exp(shape * std::log(rate) + (shape - 1.0) * std::log(t) - rate * t -
                  std::lgamma(shape));
}

double tabulated_cdf(const Tabulated& tab, double t) {
  const auto& x = tab.grid.points();
  const auto& f = tab.density;
  if (t <= x.front()) return 0.0;
  double acc = 0.0;
  for (size_t i = 1; i < x.size(); ++i) {
    if (t >= x[i]) {
      acc += 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
      continue;
    }
    const double dt = t - x[i - 1];
    const double slope = (f[i] - f[i - 1]) / (x[i] - x[i - 1]);
    acc += f[i - 1] * dt + 0.5 * slope * dt * dt;
    return acc;
  }
  return acc;
}

double tabulated_density(const Tabulated& tab, double t) {
  const auto& x = tab.grid.points();
  if (t < x.front() || t > x.back()) return 0.0;
  return interp_linear(tab.grid, tab.density, t);
}

}  // namespace

StepDistribution::StepDistribution(Exponential d) : v_(d) {
  require_finite_positive(d.rate, "Exponential rate");
}

StepDistribution::StepDistribution(Gamma d) : v_(d) {
  require_finite_positive(d.shape, "Gamma shape");
  require_finite_positive(d.rate, "Gamma rate");
}

StepDistribution::StepDistribution(Weibull2 d) : v_(d) {
  require_finite_positive(d.hazard_coeff, "Weibull2 hazard coefficient");
}

StepDistribution::StepDistribution(PowerLawHazard d) : v_(d) {
  require_finite_positive(d.coeff, "PowerLawHazard coefficient");
  if (!std::isfinite(d.exponent) || d.exponent < 0.0) {
    throw InvalidParameterError("PowerLawHazard exponent must be finite and >= 0");
  }
}

StepDistribution::StepDistribution(LogisticDetection d) : v_(d) {
  require_finite_positive(d.detection_rate, "LogisticDetection detection rate");
  require_finite_positive(d.growth_rate, "LogisticDetection growth rate");
  if (!std::isfinite(d.initial_cells) || d.initial_cells < 1.0) {
    throw InvalidParameterError("LogisticDetection initial cells must be >= 1");
  }
}

StepDistribution::StepDistribution(Tabulated d) : v_(std::move(d)) {
  const Tabulated& tab = std::get<Tabulated>(v_);
  if (static_cast<int>(tab.density.size()) != tab.grid.size()) {
    throw InvalidParameterError("Tabulated: density length must match grid");
  }
  for (double v : tab.density) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidParameterError("Tabulated: density values must be finite and >= 0");
    }
  }
  if (!tab.improper) {
    const double mass = trapezoid(tab.grid, tab.density);
    if (std::fabs(mass - 1.0) > 1e-6) {
      throw InvalidParameterError("Tabulated: density mass " + std::to_string(mass) +
                                  " differs from 1 by more than 1e-6 (flag improper to allow)");
    }
  }
}

bool StepDistribution::improper() const {
  if (std::holds_alternative<PowerLawHazard>(v_)) return true;
  if (const auto* tab = std::get_if<Tabulated>(&v_)) return tab->improper;
  return false;
}

double StepDistribution::density(double t) const {
  if (!(t >= 0.0)) throw InvalidArgumentError("density: t must be >= 0");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return d.rate * std::exp(-d.rate * t);
        } else if constexpr (std::is_same_v<T, Gamma>) {
          return gamma_density(t, d.shape, d.rate);
        } else if constexpr (std::is_same_v<T, Weibull2>) {
          return d.hazard_coeff * t * std::exp(-0.5 * d.hazard_coeff * t * t);
        } else if constexpr (std::is_same_v<T, PowerLawHazard>) {
          return hazard(t);  // improper identification f ~ h
        } else if constexpr (std::is_same_v<T, LogisticDetection>) {
          return hazard(t) * survival(t);
        } else {
          return tabulated_density(d, t);
        }
      },
      v_);
}

double StepDistribution::survival(double t) const {
  if (!(t >= 0.0)) throw InvalidArgumentError("survival: t must be >= 0");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return std::exp(-d.rate * t);
        } else if constexpr (std::is_same_v<T, Gamma>) {
          return sf::gamma_q(d.shape, d.rate * t);
        } else if constexpr (std::is_same_v<T, Weibull2>) {
          return std::exp(-0.5 * d.hazard_coeff * t * t);
        } else if constexpr (std::is_same_v<T, PowerLawHazard>) {
          return std::exp(-cumulative_hazard(t));
        } else if constexpr (std::is_same_v<T, LogisticDetection>) {
          return std::exp(-logistic_cumhaz(t, d));
        } else {
          return std::max(0.0, 1.0 - tabulated_cdf(d, t));
        }
      },
      v_);
}

double StepDistribution::hazard(double t) const {
  if (!(t >= 0.0)) throw InvalidArgumentError("hazard: t must be >= 0");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return d.rate;
        } else if constexpr (std::is_same_v<T, Weibull2>) {
          return d.hazard_coeff * t;
        } else if constexpr (std::is_same_v<T, PowerLawHazard>) {
          if (t == 0.0 && d.exponent == 0.0) return d.coeff;
          return d.coeff * std::pow(t, d.exponent);
        } else if constexpr (std::is_same_v<T, LogisticDetection>) {
          return d.detection_rate * logistic_population(t, d);
        } else {
          const double s = survival(t);
          if (s <= 0.0) return 0.0;
          return density(t) / s;
        }
      },
      v_);
}

double StepDistribution::cumulative_hazard(double t) const {
  if (!(t >= 0.0)) throw InvalidArgumentError("cumulative_hazard: t must be >= 0");
  return std::visit(
      [&](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return d.rate * t;
        } else if constexpr (std::is_same_v<T, Weibull2>) {
          return 0.5 * d.hazard_coeff * t * t;
        } else if constexpr (std::is_same_v<T, PowerLawHazard>) {
          return d.coeff * std::pow(t, d.exponent + 1.0) / (d.exponent + 1.0);
        } else if constexpr (std::is_same_v<T, LogisticDetection>) {
          return logistic_cumhaz(t, d);
        } else {
          const double s = survival(t);
          if (s <= 0.0) return std::numeric_limits<double>::infinity();
          return -std::log(s);
        }
      },
      v_);
}

std::optional<std::pair<double, int>> StepDistribution::exact_pole() const {
  if (const auto* e = std::get_if<Exponential>(&v_)) {
    return std::make_pair(e->rate, 1);
  }
  if (const auto* g = std::get_if<Gamma>(&v_)) {
    const double rounded = std::round(g->shape);
    if (rounded >= 1.0 && std::fabs(g->shape - rounded) <= 1e-12 * std::max(1.0, g->shape)) {
      return std::make_pair(g->rate, static_cast<int>(rounded));
    }
  }
  return std::nullopt;
}

std::string StepDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          os << "exponential(rate=" << d.rate << ")";
        } else if constexpr (std::is_same_v<T, Gamma>) {
          os << "gamma(shape=" << d.shape << ",rate=" << d.rate << ")";
        } else if constexpr (std::is_same_v<T, Weibull2>) {
          os << "weibull2(b=" << d.hazard_coeff << ")";
        } else if constexpr (std::is_same_v<T, PowerLawHazard>) {
          os << "powerlaw_hazard(coeff=" << d.coeff << ",exponent=" << d.exponent << ")";
        } else if constexpr (std::is_same_v<T, LogisticDetection>) {
          os << "logistic_detection(a=" << d.detection_rate << ",c=" << d.growth_rate
             << ",cells=" << d.initial_cells << ")";
        } else {
          os << "tabulated(n=" << d.grid.size() << ",improper=" << d.improper << ")";
        }
      },
      v_);
  return os.str();
}

CurveSet eval_curves(const StepDistribution& dist, const TimeGrid& grid) {
  const auto& t = grid.points();
  const size_t n = t.size();
  if (dist.improper() || std::holds_alternative<LogisticDetection>(dist.value()) ||
      std::holds_alternative<Exponential>(dist.value()) ||
      std::holds_alternative<Weibull2>(dist.value())) {
    // Hazard and cumulative hazard are the analytically clean pair here.
    std::vector<double> h(n), H(n);
    for (size_t i = 0; i < n; ++i) {
      h[i] = dist.hazard(t[i]);
      H[i] = dist.cumulative_hazard(t[i]);
    }
    return curves_from_hazard(grid, std::move(h), std::move(H));
  }
  std::vector<double> f(n), S(n);
  bool clamped = false;
  for (size_t i = 0; i < n; ++i) {
    double v = dist.density(t[i]);
    if (!std::isfinite(v)) {  // singular origin of Gamma with shape < 1
      v = 0.0;
      clamped = true;
    }
    f[i] = v;
    S[i] = dist.survival(t[i]);
  }
  CurveSet cs = curves_from_density_survival(grid, std::move(f), std::move(S));
  cs.clamped = cs.clamped || clamped;
  return cs;
}

CurveSet eval_curves(const ExpPolyMix& mix, const TimeGrid& grid) {
  const auto& t = grid.points();
  const size_t n = t.size();
  std::vector<double> f(n), S(n);
  for (size_t i = 0; i < n; ++i) {
    f[i] = mix.density(t[i]);
    S[i] = mix.survival(t[i]);
  }
  return curves_from_density_survival(grid, std::move(f), std::move(S));
}

TimeGrid default_grid(const StepDistribution& dist, int points) {
  const double horizon = survival_horizon([&](double t) { return dist.survival(t); });
  return TimeGrid::uniform(0.0, horizon, points);
}

TimeGrid default_grid(const ExpPolyMix& mix, int points) {
  const double horizon = survival_horizon([&](double t) { return mix.survival(t); });
  return TimeGrid::uniform(0.0, horizon, points);
}

}  // namespace mshaz
