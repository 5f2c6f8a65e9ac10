#include "mshaz/sequential_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mshaz/errors.hpp"
#include "mshaz/quadrature.hpp"
#include "mshaz/special_functions.hpp"

namespace mshaz {

std::vector<Pole> merge_nearby_rates(std::vector<Pole> poles, double rel_tol) {
  if (!(rel_tol > 0.0) || rel_tol > 1e-3) {
    throw InvalidParameterError("merge_nearby_rates: tolerance must be in (0, 1e-3]");
  }
  for (const auto& p : poles) {
    if (!(p.rate > 0.0) || !std::isfinite(p.rate)) {
      throw InvalidParameterError("merge_nearby_rates: rates must be finite and > 0");
    }
    if (p.multiplicity < 1) {
      throw InvalidParameterError("merge_nearby_rates: multiplicities must be >= 1");
    }
  }
  if (poles.empty()) return poles;
  std::sort(poles.begin(), poles.end(),
            [](const Pole& a, const Pole& b) { return a.rate < b.rate; });
  const double abs_tol = rel_tol * poles.back().rate;
  std::vector<Pole> out;
  out.push_back(poles.front());
  double prev_rate = poles.front().rate;
  for (size_t i = 1; i < poles.size(); ++i) {
    if (poles[i].rate - prev_rate <= abs_tol) {
      out.back().multiplicity += poles[i].multiplicity;
    } else {
      out.push_back(poles[i]);
    }
    prev_rate = poles[i].rate;
  }
  return out;
}

std::vector<Residue> partial_fractions(const std::vector<Pole>& poles) {
  if (poles.empty()) throw InvalidArgumentError("partial_fractions: need at least one pole");
  for (const auto& p : poles) {
    if (!(p.rate > 0.0) || !std::isfinite(p.rate)) {
      throw InvalidParameterError("partial_fractions: rates must be finite and > 0");
    }
    if (p.multiplicity < 1) {
      throw InvalidParameterError("partial_fractions: multiplicities must be >= 1");
    }
  }
  for (size_t i = 0; i < poles.size(); ++i) {
    for (size_t j = i + 1; j < poles.size(); ++j) {
      if (poles[i].rate == poles[j].rate) {
        throw InvalidArgumentError(
            "partial_fractions: duplicate rates; merge multiplicities first");
      }
    }
  }
  std::vector<Residue> out;
  for (size_t i = 0; i < poles.size(); ++i) {
    const double mu_i = poles[i].rate;
    const int p_i = poles[i].multiplicity;
    // Taylor coefficients D_n of g(s) = prod_{j != i} (s + mu_j)^{-p_j}
    // around s = -mu_i, via g' = (g'/g) g with the logarithmic derivative's
    // coefficients known in closed form.
    std::vector<double> d(static_cast<size_t>(p_i));
    double d0 = 1.0;
    for (size_t j = 0; j < poles.size(); ++j) {
      if (j == i) continue;
      d0 *= std::pow(poles[j].rate - mu_i, -poles[j].multiplicity);
    }
    d[0] = d0;
    if (p_i > 1) {
      std::vector<double> logd(static_cast<size_t>(p_i - 1));
      for (int n = 0; n < p_i - 1; ++n) {
        double sum = 0.0;
        for (size_t j = 0; j < poles.size(); ++j) {
          if (j == i) continue;
          sum += poles[j].multiplicity / std::pow(poles[j].rate - mu_i, n + 1);
        }
        logd[static_cast<size_t>(n)] = (n % 2 == 0 ? -1.0 : 1.0) * sum;
      }
      for (int n = 0; n < p_i - 1; ++n) {
        double acc = 0.0;
        for (int m = 0; m <= n; ++m) {
          acc += logd[static_cast<size_t>(m)] * d[static_cast<size_t>(n - m)];
        }
        d[static_cast<size_t>(n + 1)] = acc / (n + 1);
      }
    }
    for (int k = 1; k <= p_i; ++k) {
      out.push_back({mu_i, k, d[static_cast<size_t>(p_i - k)]});
    }
  }
  return out;
}

ExpPolyMix moolgavkar_exact(const std::vector<double>& rates) {
  if (rates.empty()) throw InvalidParameterError("moolgavkar_exact: need at least one rate");
  std::vector<Pole> poles;
  poles.reserve(rates.size());
  for (double r : rates) poles.push_back({r, 1});
  poles = merge_nearby_rates(std::move(poles));
  bool simple = true;
  for (const auto& p : poles) simple = simple && p.multiplicity == 1;
  if (!simple) return gamma_integer_sum(poles);

  double rate_product = 1.0;
  for (const auto& p : poles) rate_product *= p.rate;
  std::vector<ExpPolyTerm> terms;
  terms.reserve(poles.size());
  for (size_t i = 0; i < poles.size(); ++i) {
    double chi = 1.0;
    for (size_t j = 0; j < poles.size(); ++j) {
      if (j != i) chi /= poles[j].rate - poles[i].rate;
    }
    terms.push_back({rate_product * chi, 0, poles[i].rate});
  }
  return ExpPolyMix(std::move(terms));
}

ExpPolyMix gamma_integer_sum(const std::vector<Pole>& components) {
  if (components.empty()) {
    throw InvalidParameterError("gamma_integer_sum: need at least one component");
  }
  const std::vector<Pole> poles = merge_nearby_rates(components);
  double norm = 1.0;
  for (const auto& p : poles) norm *= std::pow(p.rate, p.multiplicity);
  std::vector<ExpPolyTerm> terms;
  for (const auto& r : partial_fractions(poles)) {
    terms.push_back({norm * r.value / sf::factorial(r.order - 1), r.order - 1, r.rate});
  }
  return ExpPolyMix(std::move(terms));
}

PowerLawHazard power_law_sum(const std::vector<std::pair<double, double>>& components) {
  if (components.empty()) {
    throw InvalidParameterError("power_law_sum: need at least one component");
  }
  double log_coeff = 0.0;
  double exp_sum = 0.0;
  for (const auto& [coeff, expo] : components) {
    if (!(coeff > 0.0) || !std::isfinite(coeff)) {
      throw InvalidParameterError("power_law_sum: coefficients must be finite and > 0");
    }
    if (!(expo >= 0.0) || !std::isfinite(expo)) {
      throw InvalidParameterError("power_law_sum: exponents must be finite and >= 0");
    }
    log_coeff += std::log(coeff) + std::lgamma(1.0 + expo);
    exp_sum += expo;
  }
  const double m = static_cast<double>(components.size());
  log_coeff -= std::lgamma(m + exp_sum);
  return PowerLawHazard{std::exp(log_coeff), m - 1.0 + exp_sum};
}

std::vector<double> convolve_numeric(const TimeGrid& grid, const std::vector<double>& f1,
                                     const std::vector<double>& f2) {
  if (grid.spacing() != TimeGrid::Spacing::kUniform) {
    throw InvalidArgumentError("convolve_numeric: grid must be uniform");
  }
  const size_t n = static_cast<size_t>(grid.size());
  if (f1.size() != n || f2.size() != n) {
    throw InvalidArgumentError("convolve_numeric: sample lengths must match the grid");
  }
  if (grid.front() != 0.0) {
    throw InvalidArgumentError("convolve_numeric: grid must start at 0");
  }
  const double dt = grid.step();
  std::vector<double> out(n, 0.0);
  for (size_t i = 1; i < n; ++i) {
    // Trapezoid over [0, t_i]: half weights at the two endpoints.
    double sum = 0.5 * (f1[0] * f2[i] + f1[i] * f2[0]);
    double comp = 0.0;
    for (size_t j = 1; j < i; ++j) {
      const double v = f1[j] * f2[i - j];
      const double s = sum + v;
      if (std::fabs(sum) >= std::fabs(v)) {
        comp += (sum - s) + v;
      } else {
        comp += (v - s) + sum;
      }
      sum = s;
    }
    out[i] = (sum + comp) * dt;
  }
  return out;
}

std::vector<double> convolve_numeric(const CurveSet& c1, const CurveSet& c2) {
  if (!(c1.grid == c2.grid)) {
    throw InvalidArgumentError("convolve_numeric: the two curve sets use different grids");
  }
  return convolve_numeric(c1.grid, c1.f, c2.f);
}

namespace {

std::vector<Pole> poles_of(const std::vector<StepDistribution>& steps) {
  std::vector<Pole> poles;
  poles.reserve(steps.size());
  for (const auto& s : steps) {
    const auto pole = s.exact_pole();
    if (!pole) return {};
    poles.push_back({pole->first, pole->second});
  }
  return poles;
}

}  // namespace

CurveSet sum_sequential(const std::vector<StepDistribution>& steps, const TimeGrid& grid) {
  if (steps.empty()) throw InvalidParameterError("sum_sequential: need at least one step");
  for (size_t i = 0; i < steps.size(); ++i) {
    if (steps[i].improper()) {
      throw UnsupportedOperationError("sum_sequential: step " + std::to_string(i) +
                                      " is improper (" + steps[i].describe() + ")");
    }
  }
  if (steps.size() == 1) return eval_curves(steps[0], grid);

  if (const std::vector<Pole> poles = poles_of(steps); !poles.empty()) {
    return eval_curves(gamma_integer_sum(poles), grid);
  }

  // Numeric path: fold densities on a fine uniform grid, then resample.
  const int n_fine = std::max(4 * grid.size(), 4096);
  const TimeGrid fine = TimeGrid::uniform(0.0, grid.back(), n_fine);
  const auto& tf = fine.points();
  auto density_on_fine = [&](const StepDistribution& s) {
    std::vector<double> f(tf.size());
    for (size_t i = 0; i < tf.size(); ++i) {
      const double v = s.density(tf[i]);
      f[i] = std::isfinite(v) ? v : 0.0;  // clamp a singular origin
    }
    return f;
  };
  std::vector<double> acc = density_on_fine(steps[0]);
  for (size_t k = 1; k < steps.size(); ++k) {
    acc = convolve_numeric(fine, acc, density_on_fine(steps[k]));
  }
  const std::vector<double> cum = cumulative_trapezoid(fine, acc);
  const size_t n = static_cast<size_t>(grid.size());
  std::vector<double> f(n), S(n);
  for (size_t i = 0; i < n; ++i) {
    const double t = grid[static_cast<int>(i)];
    f[i] = std::max(0.0, interp_linear(fine, acc, t));
    S[i] = std::min(1.0, std::max(0.0, 1.0 - interp_linear(fine, cum, t)));
  }
  return curves_from_density_survival(grid, std::move(f), std::move(S));
}

double general_integral_eval(const std::vector<StepDistribution>& steps, double t) {
  const size_t m = steps.size();
  if (m == 0) throw InvalidParameterError("general_integral_eval: need at least one step");
  if (m > 4) {
    throw UnsupportedOperationError(
        "general_integral_eval: m > 4 not supported (nested quadrature cost)");
  }
  if (!(t >= 0.0)) throw InvalidArgumentError("general_integral_eval: t must be >= 0");
  if (m == 1) return steps[0].density(t);
  if (t == 0.0) return 0.0;

  constexpr double kTol = 1e-9;
  const auto f = [&](size_t j, double arg) { return steps[j].density(arg); };
  switch (m) {
    case 2:
      return t * adaptive_gauss_legendre(
                     [&](double y1) { return f(0, t * y1) * f(1, t * (1.0 - y1)); }, 0.0, 1.0,
                     kTol);
    case 3:
      return t * t *
             adaptive_gauss_legendre(
                 [&](double y2) {
                   const double inner = adaptive_gauss_legendre(
                       [&](double y1) {
                         return f(0, t * y1 * y2) * f(1, t * (1.0 - y1) * y2) *
                                f(2, t * (1.0 - y2));
                       },
                       0.0, 1.0, kTol);
                   return y2 * inner;
                 },
                 0.0, 1.0, kTol);
    default:
      return t * t * t *
             adaptive_gauss_legendre(
                 [&](double y3) {
                   const double mid = adaptive_gauss_legendre(
                       [&](double y2) {
                         const double inner = adaptive_gauss_legendre(
                             [&](double y1) {
                               return f(0, t * y1 * y2 * y3) * f(1, t * (1.0 - y1) * y2 * y3) *
                                      f(2, t * (1.0 - y2) * y3) * f(3, t * (1.0 - y3));
                             },
                             0.0, 1.0, kTol);
                         return y2 * inner;
                       },
                       0.0, 1.0, kTol);
                   return y3 * y3 * mid;
                 },
                 0.0, 1.0, kTol);
  }
}

SchwingerCheck schwinger_identity_check(const std::vector<double>& rates,
                                        const std::vector<double>& powers, double s) {
  const size_t m = rates.size();
  if (m == 0 || powers.size() != m) {
    throw InvalidArgumentError("schwinger_identity_check: rates/powers must be non-empty and match");
  }
  if (m > 3) {
    throw UnsupportedOperationError("schwinger_identity_check: m > 3 not supported");
  }
  for (size_t i = 0; i < m; ++i) {
    if (!(rates[i] > 0.0)) throw InvalidParameterError("schwinger_identity_check: rates must be > 0");
    if (!(powers[i] >= 1.0)) {
      throw InvalidParameterError("schwinger_identity_check: powers must be >= 1");
    }
  }
  if (!(s >= 0.0)) throw InvalidParameterError("schwinger_identity_check: s must be >= 0");

  double lhs = 1.0;
  for (size_t i = 0; i < m; ++i) lhs *= std::pow(s + rates[i], -powers[i]);

  double rhs = lhs;
  if (m >= 2) {
    double power_sum = 0.0;
    double log_prefactor = 0.0;
    for (double p : powers) {
      power_sum += p;
      log_prefactor -= std::lgamma(p);
    }
    log_prefactor += std::lgamma(power_sum);
    const double prefactor = std::exp(log_prefactor);
    constexpr double kTol = 1e-11;
    if (m == 2) {
      rhs = prefactor *
            adaptive_gauss_legendre(
                [&](double y1) {
                  const double denom = s + rates[0] * y1 + rates[1] * (1.0 - y1);
                  return std::pow(y1, powers[0] - 1.0) * std::pow(1.0 - y1, powers[1] - 1.0) *
                         std::pow(denom, -power_sum);
                },
                0.0, 1.0, kTol);
    } else {
      rhs = prefactor *
            adaptive_gauss_legendre(
                [&](double y2) {
                  const double inner = adaptive_gauss_legendre(
                      [&](double y1) {
                        const double denom = s + rates[0] * y1 * y2 +
                                             rates[1] * (1.0 - y1) * y2 + rates[2] * (1.0 - y2);
                        return std::pow(y1 * y2, powers[0] - 1.0) *
                               std::pow((1.0 - y1) * y2, powers[1] - 1.0) *
                               std::pow(1.0 - y2, powers[2] - 1.0) * std::pow(denom, -power_sum);
                      },
                      0.0, 1.0, kTol);
                  return y2 * inner;
                },
                0.0, 1.0, kTol);
    }
  }
  return {lhs, rhs, std::fabs(lhs - rhs)};
}

}  // namespace mshaz
