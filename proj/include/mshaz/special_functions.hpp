#pragma once

namespace mshaz::sf {

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Series expansion for x < a + 1, Lentz continued fraction otherwise;
/// absolute accuracy ~1e-14 for a in (0, 1e6).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Scaled complementary error function exp(x^2) * erfc(x) for x >= 0.
/// Direct product up to x = 25, asymptotic series beyond.
double erfcx(double x);

/// Exact factorial as a double for small n (n <= 170).
double factorial(int n);

/// Binomial coefficient as a double, exact for small arguments.
double binomial(int n, int k);

}  // namespace mshaz::sf
