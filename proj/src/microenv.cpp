#include "mshaz/microenv.hpp"

#include <cmath>

#include "mshaz/errors.hpp"
#include "mshaz/quadrature.hpp"
#include "mshaz/special_functions.hpp"

namespace mshaz {

void MicroEnvModel::validate() const {
  if (base_rates.empty() || base_rates.size() != drift_rates.size()) {
    throw InvalidParameterError(
        "MicroEnvModel: need matching non-empty base and drift rate lists");
  }
  for (double mu : base_rates) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
      throw InvalidParameterError("MicroEnvModel: base rates must be finite and > 0");
    }
  }
  for (double d : drift_rates) {
    if (!std::isfinite(d)) {
      throw InvalidParameterError("MicroEnvModel: drift rates must be finite");
    }
  }
}

MicroEnvCoeffs microenv_coeffs(const MicroEnvModel& model) {
  model.validate();
  const int m = model.steps();
  MicroEnvCoeffs out;
  out.leading = 1.0;
  for (double mu : model.base_rates) out.leading *= mu;
  out.corrections.resize(static_cast<size_t>(m));
  for (int j = 1; j <= m; ++j) {
    double a = 1.0;
    for (int k = 1; k < j; ++k) a *= model.base_rates[static_cast<size_t>(k - 1)];
    for (int k = j; k <= m; ++k) a *= model.drift_rates[static_cast<size_t>(k - 1)];
    out.corrections[static_cast<size_t>(j - 1)] = a;
  }
  return out;
}

double microenv_joint_product(const MicroEnvModel& model, const std::vector<double>& step_times) {
  model.validate();
  const int m = model.steps();
  if (static_cast<int>(step_times.size()) != m) {
    throw InvalidArgumentError("microenv_joint_product: need one time per step");
  }
  double prod = 1.0;
  double elapsed = 0.0;
  for (int j = 0; j < m; ++j) {
    elapsed += step_times[static_cast<size_t>(j)];
    prod *= model.base_rates[static_cast<size_t>(j)] +
            model.drift_rates[static_cast<size_t>(j)] * elapsed;
  }
  return prod;
}

double microenv_joint_polynomial(const MicroEnvModel& model,
                                 const std::vector<double>& step_times) {
  const int m = model.steps();
  if (static_cast<int>(step_times.size()) != m) {
    throw InvalidArgumentError("microenv_joint_polynomial: need one time per step");
  }
  const MicroEnvCoeffs coeffs = microenv_coeffs(model);
  double value = coeffs.leading;
  for (int j = 1; j <= m; ++j) {
    value += coeffs.corrections[static_cast<size_t>(j - 1)] *
             std::pow(step_times[static_cast<size_t>(j - 1)], m - j + 1);
  }
  return value;
}

MicroEnvResult microenv_pdf(const MicroEnvModel& model, const TimeGrid& grid) {
  const MicroEnvCoeffs coeffs = microenv_coeffs(model);
  const int m = model.steps();
  const auto& t = grid.points();
  const size_t n = t.size();

  MicroEnvResult result;
  result.density.resize(n);
  result.negative_density = false;
  result.correction_dominates = false;
  result.declining = false;

  std::vector<double> hazard(n), cumhaz(n);
  const double lead_norm = sf::factorial(m - 1);  // Gamma(m)
  for (size_t i = 0; i < n; ++i) {
    const double x = t[i];
    const double leading = coeffs.leading * std::pow(x, m - 1) / lead_norm;
    double correction = 0.0;
    double correction_H = 0.0;
    for (int j = 1; j <= m; ++j) {
      const double factor = sf::factorial(m - j + 1) / sf::factorial(2 * m - j);
      const double a = coeffs.corrections[static_cast<size_t>(j - 1)];
      correction += a * factor * std::pow(x, 2 * m - j);
      correction_H += a * factor * std::pow(x, 2 * m - j + 1) / (2 * m - j + 1);
    }
    result.density[i] = leading + correction;
    hazard[i] = result.density[i];
    cumhaz[i] = coeffs.leading * std::pow(x, m) / (m * lead_norm) + correction_H;
    if (result.density[i] < 0.0) result.negative_density = true;
    if (x > 0.0 && std::fabs(correction) >= leading) result.correction_dominates = true;
    if (i > 0 && result.density[i] < result.density[i - 1] * (1.0 - 1e-12)) {
      result.declining = true;
    }
  }
  result.curves = curves_from_hazard(grid, std::move(hazard), std::move(cumhaz));
  result.curves.negative = result.negative_density;
  return result;
}

double microenv_oracle(const MicroEnvModel& model, double t) {
  model.validate();
  const int m = model.steps();
  if (m > 3) throw UnsupportedOperationError("microenv_oracle: m > 3 not supported");
  if (!(t >= 0.0)) throw InvalidArgumentError("microenv_oracle: t must be >= 0");
  if (m == 1) return microenv_joint_polynomial(model, {t});
  if (t == 0.0) return 0.0;
  constexpr double kTol = 1e-10;
  if (m == 2) {
    return adaptive_gauss_legendre(
        [&](double t1) { return microenv_joint_polynomial(model, {t1, t - t1}); }, 0.0, t, kTol);
  }
  return adaptive_gauss_legendre(
      [&](double t1) {
        return adaptive_gauss_legendre(
            [&](double t2) { return microenv_joint_polynomial(model, {t1, t2, t - t1 - t2}); },
            0.0, t - t1, kTol);
      },
      0.0, t, kTol);
}

}  // namespace mshaz
