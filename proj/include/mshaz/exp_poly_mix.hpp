#pragma once

#include <vector>

#include "mshaz/grid.hpp"

namespace mshaz {

/// One term c * t^power * exp(-rate * t) of an exponential-polynomial mixture.
struct ExpPolyTerm {
  double coeff;
  int power;
  double rate;
};

/// Density in the class f(t) = sum_i c_i t^{k_i} exp(-mu_i t).
///
/// The class is closed under convolution, which is what makes the exact
/// pipeline work: every closed-form solution for sums of exponential and
/// integer-shape-Gamma step times lives here. Terms are kept canonical:
/// rates within a relative tolerance of each other are coalesced (near-equal
/// rates cause catastrophic cancellation in the partial-fraction residues,
/// while the coalesced limit is smooth), and no two terms share a
/// (power, rate) pair.
class ExpPolyMix {
 public:
  static constexpr double kRateMergeTol = 1e-9;

  ExpPolyMix() = default;
  explicit ExpPolyMix(std::vector<ExpPolyTerm> terms, double rate_merge_tol = kRateMergeTol);

  static ExpPolyMix exponential(double rate);
  /// Gamma density with integer shape >= 1: rate^p t^{p-1} e^{-rate t} / (p-1)!.
  static ExpPolyMix gamma_integer(int shape, double rate);

  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// f(t). Uses a centered power-series evaluation when the rate spread times
  /// t is small, which avoids the cancellation that dominates the naive sum
  /// near t = 0 (the leading Taylor terms of the mixture cancel exactly).
  double density(double t) const;

  /// S(t) = integral of f over (t, inf), exact term-by-term.
  double survival(double t) const;

  /// F(t) = integral of f over [0, t], exact term-by-term (stable near 0).
  double cdf(double t) const;

  /// Integral over [0, inf): sum c_i k_i! / mu_i^{k_i+1}.
  double total_mass() const;

  bool is_proper(double tol = 1e-10) const;

  double min_rate() const;
  double max_rate() const;

  /// Exact convolution (density of the sum of the two variables).
  ExpPolyMix convolve(const ExpPolyMix& other) const;

  /// Multiply all coefficients by a scalar.
  ExpPolyMix scaled(double factor) const;

 private:
  std::vector<ExpPolyTerm> terms_;
};

/// Exact convolution; alias of ExpPolyMix::convolve.
ExpPolyMix convolve_exact(const ExpPolyMix& f1, const ExpPolyMix& f2);

}  // namespace mshaz
