#pragma once

#include <functional>

namespace mshaz {

/// Adaptive Gauss-Legendre integration of f over [a, b]: panels are
/// bisected until the GL7/GL15 discrepancy meets the tolerance
/// max(abs_tol, rel_tol * |whole-interval estimate|), split evenly
/// across subintervals.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-9, double abs_tol = 0.0);

}  // namespace mshaz
