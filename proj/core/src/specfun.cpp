#include "dualspec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dualspec::specfun {

namespace {

double cubic_value(const CubicCoeffs& c, double s) {
    return ((c.c3 * s + c.c2) * s + c.c1) * s + c.c0;
}

double cubic_derivative(const CubicCoeffs& c, double s) {
    return (3.0 * c.c3 * s + 2.0 * c.c2) * s + c.c1;
}

// A few guarded Newton steps on the original polynomial; each step is kept
// only if it does not increase |p(s)|.
double polish_root(const CubicCoeffs& c, double s) {
    double best = s;
    double best_abs = std::abs(cubic_value(c, best));
    for (int iter = 0; iter < 3; ++iter) {
        const double deriv = cubic_derivative(c, best);
        if (deriv == 0.0) break;
        const double candidate = best - cubic_value(c, best) / deriv;
        if (!std::isfinite(candidate)) break;
        const double cand_abs = std::abs(cubic_value(c, candidate));
        if (cand_abs >= best_abs) break;
        best = candidate;
        best_abs = cand_abs;
    }
    return best;
}

} // namespace

double jacobi_p(int n, double a, double b, double z) {
    if (n < 0) throw std::invalid_argument("jacobi_p: order must be non-negative");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(z))
        throw std::invalid_argument("jacobi_p: arguments must be finite");

    if (n == 0) return 1.0;
    double prev = 1.0;
    double curr = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * z;
    for (int k = 2; k <= n; ++k) {
        const double t = 2.0 * k + a + b;
        const double denom = 2.0 * k * (k + a + b) * (t - 2.0);
        if (denom == 0.0)
            throw std::domain_error("jacobi_p: recurrence degenerates for these (a, b)");
        const double mid = (t - 1.0) * (t * (t - 2.0) * z + a * a - b * b);
        const double low = 2.0 * (k + a - 1.0) * (k + b - 1.0) * t;
        const double next = (mid * curr - low * prev) / denom;
        prev = curr;
        curr = next;
    }
    return curr;
}

std::vector<double> solve_cubic_real(const CubicCoeffs& coeffs) {
    if (!std::isfinite(coeffs.c3) || !std::isfinite(coeffs.c2) || !std::isfinite(coeffs.c1) ||
        !std::isfinite(coeffs.c0))
        throw std::invalid_argument("solve_cubic_real: coefficients must be finite");
    if (coeffs.c3 == 0.0)
        throw std::invalid_argument("solve_cubic_real: leading coefficient is zero (degenerate cubic)");

    // Normalize and depress: s = t - p2/3 turns s^3 + p2 s^2 + p1 s + p0
    // into t^3 + p t + q.
    const double p2 = coeffs.c2 / coeffs.c3;
    const double p1 = coeffs.c1 / coeffs.c3;
    const double p0 = coeffs.c0 / coeffs.c3;
    const double shift = p2 / 3.0;
    const double p = p1 - p2 * p2 / 3.0;
    const double q = p0 - p2 * p1 / 3.0 + 2.0 * p2 * p2 * p2 / 27.0;

    std::vector<double> roots;
    const double discriminant = -4.0 * p * p * p - 27.0 * q * q;
    // The discriminant of a multiple root is exactly zero only in exact
    // arithmetic; rounding in p and q smears it over a band proportional to
    // the magnitudes of its two terms. Inside that band the root pair is
    // numerically coincident and is reported with multiplicity.
    const double disc_noise = 1024.0 * std::numeric_limits<double>::epsilon() *
                              (4.0 * std::abs(p * p * p) + 27.0 * q * q);
    if (discriminant > disc_noise) {
        // Three distinct real roots (this branch implies p < 0): the
        // trigonometric method avoids complex arithmetic entirely.
        const double radius = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * radius), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        constexpr double two_thirds_pi = 2.0 * std::numbers::pi / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.push_back(radius * std::cos(theta - two_thirds_pi * k) - shift);
    } else if (discriminant < -disc_noise) {
        // One real root: Cardano, choosing the larger-magnitude cube to
        // dodge cancellation.
        const double surd = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double u3 = (q <= 0.0) ? (-q / 2.0 + surd) : (-q / 2.0 - surd);
        const double u = std::cbrt(u3);
        const double t = (u == 0.0) ? 0.0 : u - p / (3.0 * u);
        roots.push_back(t - shift);
    } else {
        // Zero discriminant: a multiple root.
        if (p == 0.0) {
            roots.assign(3, -shift);  // triple root
        } else {
            const double dbl = -1.5 * q / p;  // double root of the depressed cubic
            roots = {dbl - shift, dbl - shift, -2.0 * dbl - shift};
        }
    }

    for (double& s : roots) s = polish_root(coeffs, s);
    std::sort(roots.begin(), roots.end());
    return roots;
}

double finite_diff(const std::function<double(double)>& f, double x, int order, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::invalid_argument("finite_diff: step must be positive and finite");
    switch (order) {
        case 1:
            return (f(x + h) - f(x - h)) / (2.0 * h);
        case 2:
            return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        case 3:
            return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
                   (2.0 * h * h * h);
        default:
            throw std::invalid_argument("finite_diff: order must be 1, 2, or 3");
    }
}

double finite_diff(const std::function<double(double)>& f, double x, int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("finite_diff: order must be 1, 2, or 3");
    const double eps = std::numeric_limits<double>::epsilon();
    const double h = std::pow(eps, 1.0 / (order + 2)) * std::max(1.0, std::abs(x));
    return finite_diff(f, x, order, h);
}

} // namespace dualspec::specfun
