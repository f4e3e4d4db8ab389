#include "dualspec/duality.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dualspec::duality {

namespace {

void require_in(const Interval& domain, double q, const char* what) {
    if (!std::isfinite(q) || !domain.contains(q))
        throw std::domain_error(std::string(what) + ": argument outside the open domain");
}

void require_sampled(const SampledFunction& f, const Interval& domain, const char* what) {
    if (f.coordinate.size() != f.value.size())
        throw std::domain_error(std::string(what) + ": coordinate/value size mismatch");
    if (f.coordinate.empty())
        throw std::domain_error(std::string(what) + ": empty sample");
    double prev = -std::numeric_limits<double>::infinity();
    for (double q : f.coordinate) {
        if (!std::isfinite(q) || !domain.contains(q))
            throw std::domain_error(std::string(what) + ": sample outside the open domain");
        if (!(q > prev))
            throw std::domain_error(std::string(what) +
                                    ": coordinates must be strictly increasing");
        prev = q;
    }
}

} // namespace

MapDescriptor log_sinh_map() {
    MapDescriptor m;
    m.domain_x = Interval{0.0, std::numeric_limits<double>::infinity()};
    m.domain_y = Interval{};  // whole line

    // log(sinh x) = x - log 2 + log(1 - e^(-2x)): stable for every x > 0
    // (no overflow at large x, no cancellation at small x).
    m.forward = [dom = m.domain_x](double x) {
        require_in(dom, x, "log_sinh_map.forward");
        return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
    };
    m.d1 = [dom = m.domain_x](double x) {
        require_in(dom, x, "log_sinh_map.d1");
        return 1.0 / std::tanh(x);  // coth x
    };
    m.d2 = [dom = m.domain_x](double x) {
        require_in(dom, x, "log_sinh_map.d2");
        const double cth = 1.0 / std::tanh(x);
        return 1.0 - cth * cth;  // -csch^2 x
    };
    m.d3 = [dom = m.domain_x](double x) {
        require_in(dom, x, "log_sinh_map.d3");
        const double cth = 1.0 / std::tanh(x);
        return 2.0 * (cth * cth - 1.0) * cth;  // 2 csch^2 x coth x
    };
    // x = asinh(e^y); for very large y work with the expansion to avoid
    // overflowing e^y (asinh(t) = y + log 2 + O(e^(-2y)) there).
    m.inverse = [dom = m.domain_y](double y) {
        require_in(dom, y, "log_sinh_map.inverse");
        if (y > 700.0) return y + std::numbers::ln2;
        return std::asinh(std::exp(y));
    };
    return m;
}

MapDescriptor affine_map(double slope, double offset) {
    if (!std::isfinite(slope) || !std::isfinite(offset))
        throw std::invalid_argument("affine_map: parameters must be finite");
    if (slope == 0.0) throw std::invalid_argument("affine_map: slope must be nonzero");

    MapDescriptor m;
    m.domain_x = Interval{};
    m.domain_y = Interval{};
    m.forward = [slope, offset](double x) { return slope * x + offset; };
    m.d1 = [slope](double) { return slope; };
    m.d2 = [](double) { return 0.0; };
    m.d3 = [](double) { return 0.0; };
    m.inverse = [slope, offset](double y) { return (y - offset) / slope; };
    return m;
}

double schwarzian(const MapDescriptor& map, double x) {
    require_in(map.domain_x, x, "schwarzian");
    const double yp = map.d1(x);
    if (yp == 0.0) throw std::runtime_error("schwarzian: singular map (dy/dx = 0)");
    const double ratio = map.d2(x) / yp;                 // y''/y'
    const double ratio_deriv = map.d3(x) / yp - ratio * ratio;  // d/dx (y''/y')
    return -(ratio_deriv - 0.5 * ratio * ratio) / (yp * yp);
}

double schwarzian_closed_form(double x) {
    if (!(x > 0.0)) throw std::domain_error("schwarzian_closed_form: requires x > 0");
    const double th = std::tanh(x);
    const double sech2 = 1.0 - th * th;
    return -(sech2 * th * th + sech2 - 0.5 * sech2 * sech2);
}

double build_W(const MapDescriptor& map, double lambda, double nu, double x) {
    require_in(map.domain_x, x, "build_W");
    const double d = map.d1(x);
    return lambda * d * d + nu * d;
}

double build_U(const MapDescriptor& map, double mu, double nu, double y) {
    require_in(map.domain_y, y, "build_U");
    const double x = map.inverse(y);
    const double yp = map.d1(x);
    if (yp == 0.0) throw std::runtime_error("build_U: singular map (dy/dx = 0)");
    const double dxdy = 1.0 / yp;
    return -mu * dxdy * dxdy + nu * dxdy - 0.5 * schwarzian(map, x);
}

SampledFunction transform_wavefunction(const MapDescriptor& map, const SampledFunction& phi) {
    require_sampled(phi, map.domain_y, "transform_wavefunction");
    SampledFunction psi;
    psi.coordinate.reserve(phi.coordinate.size());
    psi.value.reserve(phi.coordinate.size());
    for (std::size_t i = 0; i < phi.coordinate.size(); ++i) {
        const double x = map.inverse(phi.coordinate[i]);
        const double yp = map.d1(x);
        const double dxdy = 1.0 / yp;
        if (!(dxdy > 0.0))
            throw std::runtime_error("transform_wavefunction: dx/dy must be positive "
                                     "(monotone increasing map required)");
        psi.coordinate.push_back(x);
        psi.value.push_back(std::sqrt(dxdy) * phi.value[i]);
    }
    return psi;
}

SampledFunction transform_wavefunction_inverse(const MapDescriptor& map,
                                               const SampledFunction& psi) {
    require_sampled(psi, map.domain_x, "transform_wavefunction_inverse");
    SampledFunction phi;
    phi.coordinate.reserve(psi.coordinate.size());
    phi.value.reserve(psi.coordinate.size());
    for (std::size_t i = 0; i < psi.coordinate.size(); ++i) {
        const double dydx = map.d1(psi.coordinate[i]);
        if (!(dydx > 0.0))
            throw std::runtime_error("transform_wavefunction_inverse: dy/dx must be positive "
                                     "(monotone increasing map required)");
        phi.coordinate.push_back(map.forward(psi.coordinate[i]));
        phi.value.push_back(std::sqrt(dydx) * psi.value[i]);
    }
    return phi;
}

} // namespace dualspec::duality
