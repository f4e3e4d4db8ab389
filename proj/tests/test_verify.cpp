#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "dualspec/models.hpp"
#include "dualspec/verify.hpp"

using namespace dualspec;

namespace {

const models::CESParams kWorkedCES{82.0 / 9.0, 8.0};
const models::ESParams kWorkedES{1.5, 4.0};

const verify::CheckRow* find_row(const verify::VerificationReport& rep,
                                 const std::string& name) {
    for (const auto& row : rep.rows) {
        if (row.name == name) return &row;
    }
    return nullptr;
}

} // namespace

TEST_CASE("VerificationReport::check records deviations and folds passes") {
    verify::VerificationReport rep;
    rep.claim = "unit";
    CHECK(rep.pass); // vacuously true while empty

    rep.check("exact", 1.0, 1.0, 0.0);
    CHECK(rep.rows.back().pass);
    CHECK(rep.rows.back().absolute_deviation == 0.0);
    CHECK(rep.rows.back().relative_deviation == 0.0);

    // Deviation equal to the tolerance still passes (<=).
    rep.check("at_tolerance", 0.0, 0.5, 0.5);
    CHECK(rep.rows.back().pass);

    rep.check("relative", 2.0, 1.0, 2.0);
    CHECK(rep.rows.back().absolute_deviation == doctest::Approx(1.0));
    CHECK(rep.rows.back().relative_deviation == doctest::Approx(0.5));
    CHECK(rep.pass);

    rep.check("non_finite", 1.0, std::numeric_limits<double>::quiet_NaN(), 1e9);
    CHECK_FALSE(rep.rows.back().pass);
    CHECK_FALSE(rep.pass);

    // A later passing row cannot resurrect the report.
    rep.check("late_pass", 1.0, 1.0, 1.0);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("to_flat_text is a stable rendering") {
    verify::VerificationReport rep;
    rep.claim = "unit";
    rep.params.emplace_back("alpha", 1.5);
    rep.check("row", 1.0, 1.0, 1e-10);
    const std::string text = verify::to_flat_text(rep);
    CHECK(text.find("claim = unit") != std::string::npos);
    CHECK(text.find("alpha") != std::string::npos);
    CHECK(text.find("pass = true") != std::string::npos);
}

TEST_CASE("default oracle grids") {
    const auto es = verify::es_default_grid();
    CHECK(es.q_min == doctest::Approx(1e-3));
    CHECK(es.q_max == doctest::Approx(30.0));
    CHECK(es.n_points == 12000);
    const auto ces = verify::ces_default_grid();
    CHECK(ces.q_min == doctest::Approx(-25.0));
    CHECK(ces.q_max == doctest::Approx(25.0));
    CHECK(ces.n_points == 12000);
}

TEST_CASE("exponent_basis switches between even and fractional series") {
    const auto even1 = verify::exponent_basis(1.0);
    const auto even2 = verify::exponent_basis(2.0);
    const auto even_half = verify::exponent_basis(1.5); // 2a-1 = 2 coincides
    for (const auto& basis : {even1, even2, even_half}) {
        CHECK(basis[0] == doctest::Approx(2.0));
        CHECK(basis[1] == doctest::Approx(4.0));
        CHECK(basis[2] == doctest::Approx(6.0));
    }

    const auto frac = verify::exponent_basis(0.8);
    CHECK(frac[0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(frac[1] == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(frac[2] == doctest::Approx(1.8).epsilon(1e-12));

    const auto mixed = verify::exponent_basis(1.2);
    CHECK(mixed[0] == doctest::Approx(1.4).epsilon(1e-12));
    CHECK(mixed[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(mixed[2] == doctest::Approx(2.8).epsilon(1e-12));
}

TEST_CASE("generalized_richardson recovers a synthetic limit exactly") {
    const std::array<double, 3> exponents{2.0, 4.0, 6.0};
    const double e0 = -3.7;
    const std::array<double, 3> amps{0.9, -0.4, 0.05};
    std::vector<std::pair<double, double>> samples;
    const double h_min = 0.05;
    for (double h : {0.05, 0.08, 0.1, 0.2}) {
        double e = e0;
        for (int k = 0; k < 3; ++k) e += amps[k] * std::pow(h / h_min, exponents[k]);
        samples.emplace_back(h, e);
    }
    CHECK(verify::generalized_richardson(samples, exponents) ==
          doctest::Approx(e0).epsilon(1e-12));

    // Fractional exponents work the same way.
    const std::array<double, 3> frac{0.6, 1.2, 1.8};
    samples.clear();
    for (double h : {0.05, 0.08, 0.1, 0.2}) {
        double e = e0;
        for (int k = 0; k < 3; ++k) e += amps[k] * std::pow(h / h_min, frac[k]);
        samples.emplace_back(h, e);
    }
    CHECK(verify::generalized_richardson(samples, frac) ==
          doctest::Approx(e0).epsilon(1e-11));
}

TEST_CASE("generalized_richardson rejects bad sample sets") {
    const std::array<double, 3> exponents{2.0, 4.0, 6.0};
    std::vector<std::pair<double, double>> three{{0.1, 1.0}, {0.2, 1.1}, {0.4, 1.3}};
    CHECK_THROWS_AS((void)verify::generalized_richardson(three, exponents),
                    std::invalid_argument);
    std::vector<std::pair<double, double>> degenerate(4, {0.1, 1.0});
    CHECK_THROWS_AS((void)verify::generalized_richardson(degenerate, exponents),
                    std::runtime_error);
}

TEST_CASE("turning points solve V = E") {
    const double e0 = models::es_energy(kWorkedES, 0);
    const double xt = verify::es_outer_turning(kWorkedES, e0);
    CHECK(models::es_potential(kWorkedES, xt) == doctest::Approx(e0).epsilon(1e-9));
    // At or above the continuum edge -2*beta there is no outer turning point.
    CHECK_THROWS_AS((void)verify::es_outer_turning(kWorkedES, -8.0), std::invalid_argument);

    const double yt = verify::ces_right_turning(kWorkedCES, -1.0);
    CHECK(models::ces_potential(kWorkedCES, yt) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("es_level_numeric reaches the analytic levels") {
    CHECK(std::abs(verify::es_level_numeric(kWorkedES, 0, 12000) -
                   models::es_energy(kWorkedES, 0)) <= 1e-5);
    // Fractional-exponent path (alpha < 1).
    CHECK(std::abs(verify::es_level_numeric({0.8, 10.0}, 2, 12000) -
                   models::es_energy({0.8, 10.0}, 2)) <= 1e-4);
}

TEST_CASE("ces_level_numeric reaches the analytic level") {
    const auto level = models::ces_energy(kWorkedCES, 0);
    CHECK(std::abs(verify::ces_level_numeric(kWorkedCES, level, 12000) - (-1.0)) <= 1e-5);
}

TEST_CASE("ces_wavefunction_residual is at the stencil floor") {
    const auto l0 = models::ces_energy(kWorkedCES, 0);
    const auto l1 = models::ces_energy(kWorkedCES, 1);
    CHECK(verify::ces_wavefunction_residual(kWorkedCES, l0) <= 1e-3);
    CHECK(verify::ces_wavefunction_residual(kWorkedCES, l1) <= 1e-3);
}

TEST_CASE("verify_es_spectrum validates the bound window") {
    const auto worked = verify::verify_es_spectrum(kWorkedES, verify::es_default_grid());
    CHECK(worked.pass);
    CHECK(worked.claim == "es-spectrum");
    REQUIRE(worked.rows.size() == 2);
    const auto* level0 = find_row(worked, "level_0");
    REQUIRE(level0 != nullptr);
    CHECK(level0->analytic == doctest::Approx(-337.0 / 36.0).epsilon(1e-13));
    const auto* bound = find_row(worked, "bound_count");
    REQUIRE(bound != nullptr);
    CHECK(bound->analytic == doctest::Approx(1.0));

    // Empty window passes vacuously.
    const auto empty = verify::verify_es_spectrum({2.0, 4.0}, verify::es_default_grid());
    CHECK(empty.pass);
    REQUIRE(empty.rows.size() == 1);
    CHECK(empty.rows[0].name == "bound_count");

    // Nine levels for (alpha, beta) = (1, 100).
    const auto deep = verify::verify_es_spectrum({1.0, 100.0}, verify::es_default_grid());
    CHECK(deep.pass);
    CHECK(deep.rows.size() == 10);
    const auto* bound9 = find_row(deep, "bound_count");
    REQUIRE(bound9 != nullptr);
    CHECK(bound9->analytic == doctest::Approx(9.0));
}

TEST_CASE("verify_es_spectrum reports are bit-for-bit reproducible") {
    const auto a = verify::verify_es_spectrum(kWorkedES, verify::es_default_grid());
    const auto b = verify::verify_es_spectrum(kWorkedES, verify::es_default_grid());
    CHECK(verify::to_flat_text(a) == verify::to_flat_text(b));
    const auto sa = verify::verify_schwarzian();
    const auto sb = verify::verify_schwarzian();
    CHECK(verify::to_flat_text(sa) == verify::to_flat_text(sb));
}

TEST_CASE("verify_ces_spectrum on the worked chain") {
    const auto rep = verify::verify_ces_spectrum(kWorkedCES, 0, verify::ces_default_grid());
    CHECK(rep.pass);
    CHECK(rep.claim == "ces-spectrum");
    const auto* roots = find_row(rep, "admissible_roots_0");
    REQUIRE(roots != nullptr);
    CHECK(roots->numeric == doctest::Approx(1.0));
    const auto* level = find_row(rep, "level_0");
    REQUIRE(level != nullptr);
    CHECK(level->analytic == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("verify_ces_spectrum notes an empty spectrum and passes") {
    const auto rep =
        verify::verify_ces_spectrum({0.75, 0.0}, 2, verify::ces_default_grid());
    CHECK(rep.pass);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].name == "admissible_levels");
}

TEST_CASE("verify_schwarzian closes the derivative and closed forms") {
    const auto rep = verify::verify_schwarzian();
    CHECK(rep.pass);
    CHECK(rep.claim == "schwarzian-closure");
    REQUIRE(rep.rows.size() == 5);
    const auto* max_dev = find_row(rep, "max_abs_deviation");
    REQUIRE(max_dev != nullptr);
    CHECK(max_dev->numeric < 1e-7);
    const auto* spot = find_row(rep, "spot_formula");
    REQUIRE(spot != nullptr);
    CHECK(spot->analytic == doctest::Approx(-0.625));
}

TEST_CASE("verify_duality_exchange on the worked chain") {
    const auto rep = verify::verify_duality_exchange(kWorkedES, 0);
    CHECK(rep.pass);
    CHECK(rep.claim == "duality-exchange");
    for (const char* name :
         {"rayleigh_quotient_vs_minus_lambda", "eigenvector_overlap",
          "u_eigenvalue_vs_minus_lambda", "u_tilde_eigenvalue_vs_minus_eps",
          "mu_exchange_vs_analytic"}) {
        const auto* row = find_row(rep, name);
        REQUIRE_MESSAGE(row != nullptr, name);
        CHECK_MESSAGE(row->pass, name);
    }
    const auto* rq = find_row(rep, "rayleigh_quotient_vs_minus_lambda");
    CHECK(rq->analytic == doctest::Approx(-0.75));
    // The U-picture bookkeeping: the partner eigenvalue is -eps = -1 here.
    const auto* tilde = find_row(rep, "u_tilde_eigenvalue_vs_minus_eps");
    CHECK(tilde->analytic == doctest::Approx(-1.0));
}

TEST_CASE("seeded_sweep is deterministic and well-formed") {
    const auto a = verify::seeded_sweep();
    const auto b = verify::seeded_sweep();
    REQUIRE(a.size() == 20);
    REQUIRE(b.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].es.alpha == b[i].es.alpha);
        CHECK(a[i].es.beta == b[i].es.beta);
        CHECK(a[i].n == b[i].n);
        CHECK(a[i].couplings.mu == b[i].couplings.mu);
        CHECK(a[i].ces.A == b[i].ces.A);
        CHECK(a[i].ces.B == b[i].ces.B);

        CHECK(a[i].n == static_cast<int>(i) % 3);
        CHECK(a[i].es.alpha >= 1.2);
        CHECK(a[i].es.alpha <= 2.4);
        // Level n must sit strictly inside the bound window.
        const double c = a[i].es.alpha + a[i].n;
        CHECK(c * c < a[i].es.beta);
    }
    const auto other = verify::seeded_sweep(20, 1234u);
    CHECK(other[0].es.alpha != a[0].es.alpha);
    CHECK_THROWS_AS((void)verify::seeded_sweep(-1), std::invalid_argument);
}

TEST_CASE("every sweep chain satisfies the linked energy identity") {
    for (const auto& chain : verify::seeded_sweep()) {
        const auto level = models::ces_energy(chain.ces, chain.n);
        const double es_e = models::es_energy(chain.es, chain.n);
        CHECK(std::abs(models::energy_sum_residual(level, es_e, chain.couplings.mu)) <
              1e-10);
        // Recovered alpha closes the chain.
        CHECK(level.alpha == doctest::Approx(chain.es.alpha).epsilon(1e-10));
    }
}
