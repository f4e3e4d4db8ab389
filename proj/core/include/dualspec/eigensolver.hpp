#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dualspec/duality.hpp"

// Independent numerical oracle: uniform-grid finite-difference
// discretization of -d^2/dq^2 + V(q) (hbar = 2m = 1) with Dirichlet
// boundaries, and a symmetric tridiagonal eigensolver for the lowest
// levels (Sturm-sequence bisection plus inverse iteration).
namespace dualspec::eigen {

// Uniform grid of n_points interior nodes on (q_min, q_max); the Dirichlet
// endpoints are excluded, so the spacing is (q_max - q_min)/(n_points + 1)
// and node(i) = q_min + (i+1)*h for i in [0, n_points).
struct Grid {
    Grid(double q_min_in, double q_max_in, int n_points_in);

    double q_min;
    double q_max;
    int n_points;

    double spacing() const noexcept { return (q_max - q_min) / (n_points + 1); }
    double node(int i) const noexcept { return q_min + (i + 1) * spacing(); }
};

// Symmetric tridiagonal matrix 2/h^2 + V(q_i) on the diagonal and the
// constant -1/h^2 on both off-diagonals.
struct TridiagonalOperator {
    Grid grid;
    std::vector<double> diagonal;
    double off_diagonal = 0.0;

    int dimension() const noexcept { return static_cast<int>(diagonal.size()); }
};

// One eigenpair: vector sampled on the grid nodes and normalized so that
// ||vector||^2 * h = 1.
struct EigenPair {
    double energy = 0.0;
    std::vector<double> vector;
};

// Standard second-order three-point stencil with Dirichlet boundaries.
// Throws std::domain_error if the potential is non-finite at any interior
// node (this guards singular walls such as csch^2 at x = 0).
TridiagonalOperator discretize(const std::function<double(double)>& potential, const Grid& g);

// Number of eigenvalues of t strictly below lambda (Sturm count).
int count_below(const TridiagonalOperator& t, double lambda);

// The index-th smallest eigenvalue (0-based) by Sturm bisection, to
// absolute tolerance 1e-10 * max(1, |lambda|) (plus the unavoidable
// rounding floor of the Sturm counts themselves).
double eigenvalue_at(const TridiagonalOperator& t, int index);

// The k smallest eigenpairs: eigenvalues by Sturm bisection, eigenvectors
// by inverse iteration (at most 5 iterations, deterministic seeded start,
// reorthogonalized against earlier vectors), energies polished by the
// Rayleigh quotient of the converged vector. Throws std::invalid_argument
// unless 1 <= k <= dimension.
std::vector<EigenPair> eigen_lowest(const TridiagonalOperator& t, int k);

// A single eigenpair located by inverse iteration at the given shift,
// intended for very large grids where a coarse-grid eigenvalue is already
// known. The Sturm index of the converged energy is checked against
// expected_index; on mismatch the routine falls back to full bisection.
EigenPair eigenpair_near(const TridiagonalOperator& t, double shift, int expected_index);

// <v, T v> / <v, v> for a vector sampled on t's own grid.
// Throws std::invalid_argument on size mismatch or a zero vector.
double rayleigh_quotient(const TridiagonalOperator& t, std::span<const double> v);

// Rayleigh quotient of a function sampled on an arbitrary strictly
// increasing coordinate grid: the samples are first resampled onto t's
// grid by linear interpolation (zero outside the sampled range).
double rayleigh_quotient(const TridiagonalOperator& t, const duality::SampledFunction& v);

} // namespace dualspec::eigen
