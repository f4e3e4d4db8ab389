#pragma once

#include <stdexcept>
#include <string>

#include "dualspec/duality.hpp"
#include "dualspec/specfun.hpp"

// The two concrete potential families and their analytic spectral data.
//
// ES side (half line x > 0, solvable for beta > alpha^2, alpha > 0):
//   W~(x) = -2*beta*coth(x) + alpha*(alpha-1)*csch^2(x)
//   E_n   = -(beta/(alpha+n))^2 - (alpha+n)^2
//
// CES side (full line, with z = 1 + e^(-2y)):
//   V(y) = A/z - B/sqrt(z) - 3/(4 z^2)
// whose n-th bound level -eps_n comes from a cubic in s = sqrt(eps_n),
// with exactly one root compatible with normalizability.
//
// The two sides are linked through the log-sinh coordinate map by
//   lambda = alpha*(alpha-1),  nu = -2*beta,  mu = E_n + lambda,
//   A = 1/2 - mu,              B = -nu,
// and the levels satisfy the energy-sum identity eps_n + E_n = mu + 1/4.
namespace dualspec::models {

// Parameters of the ES potential. The solvability window is
// beta > alpha^2 (with alpha > 0); it is enforced where it matters
// (spectrum construction and the CLI), not in the record itself.
struct ESParams {
    double alpha = 0.0;
    double beta = 0.0;
};

// Parameters of the CES potential shape. Whether bound states exist is
// decided at spectrum construction, not here.
struct CESParams {
    double A = 0.0;
    double B = 0.0;
};

// One CES bound level. sqrt_eps is the positive root s = sqrt(eps_n)
// selected by the admissibility rule; the Schrodinger eigenvalue is -eps.
struct CESLevel {
    int n = 0;
    double sqrt_eps = 0.0;  // s > 0
    double eps = 0.0;       // s^2
    double c = 0.0;         // n + 1/2 + s
    double alpha = 0.0;     // recovered ES exponent, s + 1/2
};

// Thrown by ces_energy when no cubic root passes the admissibility rule:
// the requested level does not exist for these (A, B).
class NoAdmissibleRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by ces_energy if more than one root passes the admissibility rule
// (not observed for any tested parameter chain; callers with a numerical
// oracle may break the tie against it).
class AmbiguousRootError : public std::runtime_error {
public:
    AmbiguousRootError(std::string what, std::vector<double> roots_in)
        : std::runtime_error(std::move(what)), candidates(std::move(roots_in)) {}

    std::vector<double> candidates;
};

// W~(x) for x > 0; throws std::domain_error at x <= 0 (the csch^2 wall).
double es_potential(const ESParams& p, double x);

// E_n; n must satisfy (alpha+n)^2 <= beta, where equality is the continuum
// threshold E = -2*beta. Larger n throws std::domain_error ("spectrum
// exhausted"): the level does not exist.
double es_energy(const ESParams& p, int n);

// Number of bound levels: the n with (alpha+n)^2 < beta (strict).
int es_bound_count(const ESParams& p);

// The duality triple (lambda, nu, mu) attached to level n.
duality::DualCouplings couplings_from_es(const ESParams& p, int n);

// Inverse parameter bridge: A = 1/2 - mu, B = -nu.
CESParams ces_from_couplings(double mu, double nu);

// V(y) for finite y. Numerically safe on the whole double range: the
// y -> -infinity limit 0 and the y -> +infinity limit A - B - 3/4 are
// reproduced by the evaluation itself.
double ces_potential(const CESParams& p, double y);

// Coefficients of the level-n eigenvalue cubic in s = sqrt(eps_n),
// the expanded standard form of
//   (3/4 - A - s^2) * (n + 1/2 + s)^2 + B^2/4 + (n + 1/2 + s)^4 = 0.
// With m = n + 1/2 and K = 3/4 - A the expansion is
//   2m s^3 + (K + 5 m^2) s^2 + 2m (K + 2 m^2) s + m^2 (K + m^2) + B^2/4.
// The derivation is documented in docs/theory.md.
specfun::CubicCoeffs ces_energy_cubic(const CESParams& p, int n);

// The unique admissible level n: among the real cubic roots, keep s with
//   s > 0                       (left-tail decay, alpha = s + 1/2 > 1/2)
//   (n + 1/2 + s)^2 < B/2       (right-tail decay, ES window)
// Throws NoAdmissibleRootError / AmbiguousRootError accordingly.
CESLevel ces_energy(const CESParams& p, int n);

// Unnormalized CES eigenfunction at y, in terms of w = sqrt(1 + e^(-2y)):
//   psi_n(y) = w^(1/2) * (w-1)^e1 * (w+1)^e2 * P_n^(2*e1, 2*e2)(w),
//   e1 = B/(4c) - c/2,  e2 = -(B/(4c) + c/2).
// The exponent pair and the argument convention are fixed by the decay and
// residual tests (see docs/theory.md). Throws std::domain_error when an
// intermediate overflows at extreme |y|.
double ces_wavefunction(const CESLevel& level, const CESParams& p, double y);

// eps_n + E_n - mu - 1/4; zero (to rounding) on every consistent chain.
double energy_sum_residual(const CESLevel& level, double es_energy_value, double mu);

} // namespace dualspec::models
