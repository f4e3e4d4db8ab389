#pragma once

#include <functional>
#include <limits>
#include <vector>

// Generic engine for dual Schrodinger pairs related by a monotone coordinate
// map y(x): map descriptors with analytic derivatives, the Schwarzian
// derivative, construction of the partner potentials W(x) and U(y), and the
// half-power wavefunction transform between the two pictures.
//
// Conventions (hbar = 2m = 1):
//   x-picture:  [-d^2/dx^2 + lambda*(dy/dx)^2 + nu*(dy/dx)] psi = mu * psi
//   y-picture:  [-d^2/dy^2 - (1/2){x,y} - mu*(dx/dy)^2 + nu*(dx/dy)] phi = -lambda * phi
// so the energy mu and the coupling lambda exchange roles between the two.
namespace dualspec::duality {

// Open interval (lo, hi); endpoints are excluded.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double q) const noexcept { return q > lo && q < hi; }
};

// A monotone increasing coordinate map y(x) with analytic derivatives.
// Derivatives are carried analytically rather than formed numerically
// because the Schwarzian amplifies differentiation noise; finite
// differences are used only as a test oracle.
struct MapDescriptor {
    std::function<double(double)> forward;  // y(x)
    std::function<double(double)> d1;       // dy/dx
    std::function<double(double)> d2;       // d2y/dx2
    std::function<double(double)> d3;       // d3y/dx3
    std::function<double(double)> inverse;  // x(y)
    Interval domain_x;
    Interval domain_y;
};

// The (energy, constant, coupling) triple shared by the dual pair:
// mu is the x-picture energy, -lambda the y-picture energy, nu common.
struct DualCouplings {
    double lambda = 0.0;
    double nu = 0.0;
    double mu = 0.0;
};

// The map y = log(sinh x): domain x in (0, inf), y in (-inf, inf);
// dy/dx = coth x, inverse x = asinh(e^y). All descriptor functions reject
// arguments outside the open domains.
MapDescriptor log_sinh_map();

// The affine map y = slope*x + offset on the whole line (slope != 0).
// Its Schwarzian vanishes identically; slope 1 gives an isometry.
MapDescriptor affine_map(double slope, double offset);

// Schwarzian derivative {x, y} computed from the map's x-derivatives:
//   {x,y} = -(1/y'^2) * [ d/dx(y''/y') - (1/2)(y''/y')^2 ].
// Throws std::domain_error outside domain_x, std::runtime_error where
// d1(x) == 0 (singular map).
double schwarzian(const MapDescriptor& map, double x);

// Closed form of {x, y} for the log-sinh map:
//   -(sech^2 x * tanh^2 x + sech^2 x - (1/2) sech^4 x),  x > 0.
double schwarzian_closed_form(double x);

// Partner potential in the x-picture: W(x) = lambda*(dy/dx)^2 + nu*(dy/dx).
double build_W(const MapDescriptor& map, double lambda, double nu, double x);

// Partner potential in the y-picture:
//   U(y) = -mu*(dx/dy)^2 + nu*(dx/dy) - (1/2){x, y}  evaluated at x = x(y).
double build_U(const MapDescriptor& map, double mu, double nu, double y);

// A function sampled on a strictly increasing coordinate grid. Image grids
// under map transforms are non-uniform, so transformed wavefunctions are
// kept as (coordinate, value) pairs instead of being resampled.
struct SampledFunction {
    std::vector<double> coordinate;
    std::vector<double> value;
};

// Pull a y-picture wavefunction back to the x-picture:
//   psi(x_i) = (dx/dy)^(1/2) * phi(y_i)  at  x_i = x(y_i).
// Requires dx/dy > 0 at every sample (monotone increasing map); throws
// std::runtime_error otherwise and std::domain_error on out-of-domain or
// malformed input grids.
SampledFunction transform_wavefunction(const MapDescriptor& map, const SampledFunction& phi);

// Push an x-picture wavefunction forward to the y-picture:
//   phi(y_i) = (dy/dx)^(1/2) * psi(x_i)  at  y_i = y(x_i).
// Same monotonicity and domain requirements as transform_wavefunction.
SampledFunction transform_wavefunction_inverse(const MapDescriptor& map,
                                               const SampledFunction& psi);

} // namespace dualspec::duality
