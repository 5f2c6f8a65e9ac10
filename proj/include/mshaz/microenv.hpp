#pragma once

#include <vector>

#include "mshaz/curves.hpp"

namespace mshaz {

/// Per-step rates that drift linearly with the elapsed time at which the
/// step becomes at risk: rate_j(t) = base_rates[j] + drift_rates[j] * t.
struct MicroEnvModel {
  std::vector<double> base_rates;   ///< mu_j0 > 0
  std::vector<double> drift_rates;  ///< mu_j1, any sign

  int steps() const { return static_cast<int>(base_rates.size()); }
  void validate() const;
};

/// Coefficients of the perturbed joint density ansatz
/// a0 + sum_j a_j t_j^{m-j+1}: a0 is the product of base rates and
/// a_j = prod_{k<j} base_k * prod_{k>=j} drift_k.
struct MicroEnvCoeffs {
  double leading;                   ///< a0
  std::vector<double> corrections;  ///< a_j for j = 1..m
};

MicroEnvCoeffs microenv_coeffs(const MicroEnvModel& model);

/// The raw product prod_j (base_j + drift_j * sum_{k<=j} t_k) at a point of
/// step times; used to measure the residual of the polynomial ansatz.
double microenv_joint_product(const MicroEnvModel& model, const std::vector<double>& step_times);

/// The polynomial ansatz a0 + sum_j a_j t_j^{m-j+1} at the same point.
double microenv_joint_polynomial(const MicroEnvModel& model,
                                 const std::vector<double>& step_times);

struct MicroEnvResult {
  CurveSet curves;              ///< small-t regime curves with h = polynomial density
  std::vector<double> density;  ///< the polynomial density itself, per grid point
  bool negative_density;        ///< density dips below zero somewhere on the grid
  bool correction_dominates;    ///< a correction term exceeds the leading term somewhere
  bool declining;               ///< density decreases somewhere (negative drift regime)
};

/// Incidence density in the perturbed small-t regime:
/// f(t) = a0 t^{m-1}/Gamma(m) + sum_j a_j Gamma(m-j+2)/Gamma(2m-j+1) t^{2m-j}.
/// The polynomial is improper (f ~ h while S ~ 1); the returned CurveSet
/// uses it as the hazard with S = exp(-int h). Negative density and
/// regime-violation conditions are flagged, never silently dropped.
MicroEnvResult microenv_pdf(const MicroEnvModel& model, const TimeGrid& grid);

/// Independent oracle for m <= 3: direct quadrature of the polynomial joint
/// density over the simplex sum t_j = t, validating the Laplace-transform
/// integration step to relative ~1e-8.
double microenv_oracle(const MicroEnvModel& model, double t);

}  // namespace mshaz
