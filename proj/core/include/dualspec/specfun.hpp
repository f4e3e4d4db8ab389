#pragma once

#include <functional>
#include <vector>

// Special-function and small-numerics building blocks: Jacobi polynomials,
// real cubic roots, and central finite differences. Everything here is pure
// and thread-safe.
namespace dualspec::specfun {

// Jacobi polynomial P_n^{(a,b)}(z) evaluated by the standard upward
// three-term recurrence. Valid for any real (a, b, z) for which the
// recurrence denominators stay nonzero; throws std::invalid_argument on
// negative order or non-finite arguments, std::domain_error if the
// recurrence degenerates for the given (a, b).
double jacobi_p(int n, double a, double b, double z);

// Coefficients of c3*s^3 + c2*s^2 + c1*s + c0.
struct CubicCoeffs {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
};

// All real roots of the cubic, sorted ascending, listed with multiplicity:
// the result has either one or three entries. Roots are located by the
// trigonometric method (three real roots) or Cardano's formula (one real
// root) on the depressed cubic, then polished by Newton steps on the
// original polynomial so that |p(s)| <= 1e-12 * max(1, |s|^3 * |c3|).
// Throws std::invalid_argument when c3 == 0 (degenerate cubic) or on
// non-finite coefficients.
std::vector<double> solve_cubic_real(const CubicCoeffs& coeffs);

// Central O(h^2) finite-difference approximation of the order-th derivative
// (order in {1, 2, 3}) of f at x with explicit step h > 0.
double finite_diff(const std::function<double(double)>& f, double x, int order, double h);

// Same, with the default step h = eps^(1/(order+2)) * max(1, |x|), which
// balances truncation against rounding for each stencil.
double finite_diff(const std::function<double(double)>& f, double x, int order);

} // namespace dualspec::specfun
