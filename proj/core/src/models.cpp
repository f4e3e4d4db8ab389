#include "dualspec/models.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace dualspec::models {

namespace {

void require_valid(const ESParams& p, const char* what) {
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !(p.alpha > 0.0))
        throw std::invalid_argument(std::string(what) + ": requires finite parameters, alpha > 0");
}

void require_level(int n, const char* what) {
    if (n < 0) throw std::invalid_argument(std::string(what) + ": level index must be >= 0");
}

} // namespace

double es_potential(const ESParams& p, double x) {
    require_valid(p, "es_potential");
    if (!(x > 0.0)) throw std::domain_error("es_potential: requires x > 0");
    const double cth = 1.0 / std::tanh(x);
    const double csch2 = cth * cth - 1.0;
    return -2.0 * p.beta * cth + p.alpha * (p.alpha - 1.0) * csch2;
}

double es_energy(const ESParams& p, int n) {
    require_valid(p, "es_energy");
    require_level(n, "es_energy");
    const double c = p.alpha + n;
    // The bound window is (alpha+n)^2 < beta; equality is the continuum
    // threshold, where the formula still evaluates (to -2*beta), so only
    // levels strictly beyond it are rejected.
    if (c * c > p.beta)
        throw std::domain_error("es_energy: spectrum exhausted (no bound level at this index)");
    const double ratio = p.beta / c;
    return -ratio * ratio - c * c;
}

int es_bound_count(const ESParams& p) {
    require_valid(p, "es_bound_count");
    int n = 0;
    while ((p.alpha + n) * (p.alpha + n) < p.beta) {
        ++n;
        if (n > 100'000'000) throw std::domain_error("es_bound_count: window is unreasonably large");
    }
    return n;
}

duality::DualCouplings couplings_from_es(const ESParams& p, int n) {
    const double energy = es_energy(p, n);
    const double lambda = p.alpha * (p.alpha - 1.0);
    return duality::DualCouplings{lambda, -2.0 * p.beta, energy + lambda};
}

CESParams ces_from_couplings(double mu, double nu) {
    if (!std::isfinite(mu) || !std::isfinite(nu))
        throw std::invalid_argument("ces_from_couplings: arguments must be finite");
    return CESParams{0.5 - mu, -nu};
}

double ces_potential(const CESParams& p, double y) {
    if (!std::isfinite(p.A) || !std::isfinite(p.B))
        throw std::invalid_argument("ces_potential: parameters must be finite");
    if (!std::isfinite(y)) throw std::domain_error("ces_potential: requires finite y");
    const double z = 1.0 + std::exp(-2.0 * y);  // z -> inf gives V -> 0 naturally
    return p.A / z - p.B / std::sqrt(z) - 0.75 / (z * z);
}

specfun::CubicCoeffs ces_energy_cubic(const CESParams& p, int n) {
    if (!std::isfinite(p.A) || !std::isfinite(p.B))
        throw std::invalid_argument("ces_energy_cubic: parameters must be finite");
    require_level(n, "ces_energy_cubic");
    const double m = n + 0.5;
    const double k = 0.75 - p.A;
    return specfun::CubicCoeffs{
        2.0 * m,
        k + 5.0 * m * m,
        2.0 * m * (k + 2.0 * m * m),
        m * m * (k + m * m) + p.B * p.B / 4.0,
    };
}

CESLevel ces_energy(const CESParams& p, int n) {
    const auto coeffs = ces_energy_cubic(p, n);
    const auto roots = specfun::solve_cubic_real(coeffs);

    const double m = n + 0.5;
    std::vector<double> admissible;
    for (double s : roots) {
        if (!(s > 0.0)) continue;              // left-tail decay: s = sqrt(eps) > 0
        const double c = m + s;
        if (!(c * c < p.B / 2.0)) continue;    // right-tail decay: kappa = B/(2c) - c > 0
        admissible.push_back(s);
    }

    if (admissible.empty()) {
        std::ostringstream msg;
        msg << "ces_energy: no admissible root at level n = " << n
            << " for A = " << p.A << ", B = " << p.B;
        throw NoAdmissibleRootError(msg.str());
    }
    if (admissible.size() > 1 && admissible.back() - admissible.front() > 1e-9) {
        std::ostringstream msg;
        msg << "ces_energy: " << admissible.size() << " admissible roots at level n = " << n
            << " for A = " << p.A << ", B = " << p.B
            << "; resolve the tie against the eigensolver";
        throw AmbiguousRootError(msg.str(), admissible);
    }

    const double s = admissible.front();
    CESLevel level;
    level.n = n;
    level.sqrt_eps = s;
    level.eps = s * s;
    level.c = m + s;
    level.alpha = s + 0.5;
    return level;
}

double ces_wavefunction(const CESLevel& level, const CESParams& p, double y) {
    if (!std::isfinite(y)) throw std::domain_error("ces_wavefunction: requires finite y");
    const double t = std::exp(-2.0 * y);
    if (!std::isfinite(t))
        throw std::domain_error("ces_wavefunction: intermediate overflow at extreme y");

    const double w = std::sqrt(1.0 + t);
    const double w_minus_1 = t / (1.0 + w);  // cancellation-free form of w - 1
    const double c = level.c;
    const double e1 = p.B / (4.0 * c) - c / 2.0;
    const double e2 = -(p.B / (4.0 * c) + c / 2.0);

    const double value = std::sqrt(w) * std::pow(w_minus_1, e1) * std::pow(w + 1.0, e2) *
                         specfun::jacobi_p(level.n, 2.0 * e1, 2.0 * e2, w);
    if (!std::isfinite(value))
        throw std::domain_error("ces_wavefunction: intermediate overflow at extreme y");
    return value;
}

double energy_sum_residual(const CESLevel& level, double es_energy_value, double mu) {
    return level.eps + es_energy_value - mu - 0.25;
}

} // namespace dualspec::models
