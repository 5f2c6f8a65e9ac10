#pragma once

#include <utility>
#include <vector>

#include "mshaz/curves.hpp"
#include "mshaz/exp_poly_mix.hpp"
#include "mshaz/step_distribution.hpp"

namespace mshaz {

/// A Laplace-domain pole 1/(s + rate)^multiplicity.
struct Pole {
  double rate;
  int multiplicity;
};

/// One piece value/(s + rate)^order of a partial-fraction decomposition.
struct Residue {
  double rate;
  int order;
  double value;
};

/// Coalesce poles whose rates agree within rel_tol * max rate, summing
/// multiplicities. The coalesced density approaches the separated one
/// smoothly as the gap closes, while separated near-equal rates are
/// numerically catastrophic in the residue formulas.
std::vector<Pole> merge_nearby_rates(std::vector<Pole> poles,
                                     double rel_tol = ExpPolyMix::kRateMergeTol);

/// Decompose prod_i 1/(s + rate_i)^{mult_i} into sum residue/(s + rate)^order.
/// Rates must be pairwise distinct (callers coalesce first). Residues of
/// high-multiplicity poles come from exact Taylor recurrences of the
/// complementary factor, not numerical differentiation.
std::vector<Residue> partial_fractions(const std::vector<Pole>& poles);

/// Density of a sum of exponential waiting times with distinct rates:
/// f(t) = (prod rates) * sum_i chi_i exp(-rate_i t),
/// chi_i = prod_{j != i} 1/(rate_j - rate_i).
/// Near-duplicate rates are coalesced first (falling back to the
/// multiple-pole solver), never cancelled raw.
ExpPolyMix moolgavkar_exact(const std::vector<double>& rates);

/// Exact density of a sum of Gamma variables with integer shapes:
/// components are (rate, shape) poles. Equal (or near-equal) rates reduce to
/// the single-Gamma form with summed shape.
ExpPolyMix gamma_integer_sum(const std::vector<Pole>& components);

/// Power-law (improper) approximation for the sum of steps with
/// h_i = coeff_i t^{exp_i}: returns coefficient and exponent of the
/// resulting improper density f ~ h.
PowerLawHazard power_law_sum(const std::vector<std::pair<double, double>>& components);

/// Density of sum of independent step times on a grid. Dispatches to the
/// exact ExpPolyMix pipeline when every step is exponential or
/// integer-shape Gamma, otherwise folds densities with numeric convolution
/// on an internal fine grid.
CurveSet sum_sequential(const std::vector<StepDistribution>& steps, const TimeGrid& grid);

/// Trapezoid discretization of (f1 * f2)(t) = int_0^t f1(u) f2(t-u) du on a
/// uniform grid; second-order accurate. Serves as the numerical oracle for
/// every exact convolution in the library.
std::vector<double> convolve_numeric(const TimeGrid& grid, const std::vector<double>& f1,
                                     const std::vector<double>& f2);
std::vector<double> convolve_numeric(const CurveSet& c1, const CurveSet& c2);

/// Density of the sum of <= 4 step times at a single t, by the nested
/// definite-integral representation (t^{m-1} times an (m-1)-dimensional
/// integral over the unit cube with measure y_2 y_3^2 ...), evaluated with
/// adaptive Gauss-Legendre quadrature per dimension.
double general_integral_eval(const std::vector<StepDistribution>& steps, double t);

struct SchwingerCheck {
  double lhs;
  double rhs;
  double abs_diff;
};

/// Check the generalized Schwinger/Feynman parameterisation: compares
/// prod_i (s + a_i)^{-p_i} against its representation as an (m-1)-fold
/// integral over the unit cube (m <= 3), evaluated by quadrature.
SchwingerCheck schwinger_identity_check(const std::vector<double>& rates,
                                        const std::vector<double>& powers, double s);

}  // namespace mshaz
