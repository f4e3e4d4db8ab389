// dualspec: command-line front end for the dual-spectrum toolkit.
//
// Subcommands: spectrum-es, spectrum-ces, duality-check, export-wf,
// verify-all. Tables and reports are emitted as CSV (default) or JSON with
// 12 significant digits. Exit codes: 0 pass, 1 verification failure,
// 2 usage or parameter error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "dualspec/models.hpp"
#include "dualspec/specfun.hpp"
#include "dualspec/verify.hpp"

namespace {

using dualspec::cli::fmt12;
using dualspec::cli::Table;

struct OutputOpts {
    std::string format = "csv";
    std::string out;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opts.out, "Output file path (default: stdout)");
}

struct GridOpts {
    double grid_min = 0.0;
    double grid_max = 0.0;
    int grid_points = 12000;
    bool min_given = false;
    bool max_given = false;
};

void add_grid_opts(CLI::App* cmd, GridOpts& opts) {
    cmd->add_option("--grid-min", opts.grid_min, "Left end of a fixed solver grid");
    cmd->add_option("--grid-max", opts.grid_max, "Right end of a fixed solver grid");
    cmd->add_option("--grid-points", opts.grid_points,
                    "Interior grid points (adaptive base resolution unless a "
                    "fixed grid end is given)")
        ->check(CLI::Range(100, 100000000))
        ->capture_default_str();
}

void read_grid_presence(const CLI::App* cmd, GridOpts& opts) {
    opts.min_given = cmd->count("--grid-min") > 0;
    opts.max_given = cmd->count("--grid-max") > 0;
}

void emit_table(const Table& table, const OutputOpts& opts, const std::string& command,
                std::vector<std::pair<std::string, double>> params, bool pass) {
    if (opts.format == "json") {
        nlohmann::ordered_json j;
        j["command"] = command;
        for (const auto& [key, value] : params) j[key] = dualspec::cli::json_number(value);
        j["rows"] = dualspec::cli::table_to_json(table);
        j["pass"] = pass;
        dualspec::cli::write_output(j.dump(2) + "\n", opts.out);
    } else {
        dualspec::cli::write_output(dualspec::cli::to_csv(table), opts.out);
    }
}

void emit_reports(const std::vector<dualspec::verify::VerificationReport>& reports,
                  const OutputOpts& opts, const std::string& command, bool pass) {
    if (opts.format == "json") {
        nlohmann::ordered_json j;
        j["command"] = command;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& rep : reports) arr.push_back(dualspec::cli::report_to_json(rep));
        j["reports"] = std::move(arr);
        j["pass"] = pass;
        dualspec::cli::write_output(j.dump(2) + "\n", opts.out);
    } else {
        Table merged;
        for (const auto& rep : reports) {
            Table t = dualspec::cli::report_to_table(rep);
            if (merged.header.empty()) merged.header = t.header;
            for (auto& row : t.rows) merged.rows.push_back(std::move(row));
        }
        dualspec::cli::write_output(dualspec::cli::to_csv(merged), opts.out);
    }
}

std::optional<int> parse_level_row_index(const std::string& name) {
    if (name.rfind("level_", 0) != 0) return std::nullopt;
    return std::stoi(name.substr(6));
}

int run_spectrum_es(double alpha, double beta, const GridOpts& grid, const OutputOpts& opts) {
    if (!(beta > alpha * alpha)) {
        std::cerr << "spectrum-es: parameter window violated: requires beta > alpha^2 "
                  << "(got alpha = " << fmt12(alpha) << ", beta = " << fmt12(beta) << ")\n";
        return 2;
    }
    const dualspec::models::ESParams p{alpha, beta};
    dualspec::verify::VerificationReport report;
    if (grid.min_given || grid.max_given) {
        const double lo = grid.min_given ? grid.grid_min : 1e-3;
        const double hi = grid.max_given ? grid.grid_max : 30.0;
        report = dualspec::verify::verify_es_spectrum_on_grid(
            p, dualspec::eigen::Grid(lo, hi, grid.grid_points));
    } else {
        report = dualspec::verify::verify_es_spectrum(
            p, dualspec::eigen::Grid(1e-3, 30.0, grid.grid_points));
    }

    Table table;
    table.header = {"n", "analytic", "numeric", "deviation"};
    for (const auto& row : report.rows) {
        const auto n = parse_level_row_index(row.name);
        if (!n) continue;
        table.rows.push_back({std::to_string(*n), fmt12(row.analytic), fmt12(row.numeric),
                              fmt12(row.absolute_deviation)});
    }
    emit_table(table, opts, "spectrum-es", {{"alpha", alpha}, {"beta", beta}}, report.pass);
    return report.pass ? 0 : 1;
}

int run_spectrum_ces(double A, double B, int n_max, const GridOpts& grid,
                     const OutputOpts& opts) {
    const dualspec::models::CESParams p{A, B};
    dualspec::verify::VerificationReport report;
    if (grid.min_given || grid.max_given) {
        const double lo = grid.min_given ? grid.grid_min : -25.0;
        const double hi = grid.max_given ? grid.grid_max : 25.0;
        report = dualspec::verify::verify_ces_spectrum_on_grid(
            p, n_max, dualspec::eigen::Grid(lo, hi, grid.grid_points));
    } else {
        report = dualspec::verify::verify_ces_spectrum(
            p, n_max, dualspec::eigen::Grid(-25.0, 25.0, grid.grid_points));
    }

    Table table;
    table.header = {"n",         "sqrt_eps",        "minus_eps", "numeric",
                    "deviation", "roots_considered", "selected"};
    for (const auto& row : report.rows) {
        const auto n = parse_level_row_index(row.name);
        if (!n) continue;
        const auto level = dualspec::models::ces_energy(p, *n);
        const auto roots =
            dualspec::specfun::solve_cubic_real(dualspec::models::ces_energy_cubic(p, *n));
        table.rows.push_back({std::to_string(*n), fmt12(level.sqrt_eps), fmt12(-level.eps),
                              fmt12(row.numeric), fmt12(row.absolute_deviation),
                              std::to_string(roots.size()), "true"});
    }
    emit_table(table, opts, "spectrum-ces",
               {{"A", A}, {"B", B}, {"n_max", static_cast<double>(n_max)}}, report.pass);
    return report.pass ? 0 : 1;
}

int run_duality_check(double alpha, double beta, int n, int x_points, bool points_given,
                      const OutputOpts& opts) {
    const double c = alpha + n;
    if (!(c * c < beta)) {
        std::cerr << "duality-check: level " << n
                  << " is not bound: requires (alpha + n)^2 < beta (got alpha = "
                  << fmt12(alpha) << ", beta = " << fmt12(beta) << ")\n";
        return 2;
    }
    dualspec::verify::DualityGrids grids;
    if (points_given) grids.x_points = x_points;
    std::vector<dualspec::verify::VerificationReport> reports;
    reports.push_back(
        dualspec::verify::verify_duality_exchange(dualspec::models::ESParams{alpha, beta}, n,
                                                  grids));
    reports.push_back(dualspec::verify::verify_schwarzian());
    const bool pass = reports[0].pass && reports[1].pass;
    emit_reports(reports, opts, "duality-check", pass);
    return pass ? 0 : 1;
}

int run_export_wf(double A, double B, int n, const GridOpts& grid, const OutputOpts& opts) {
    const dualspec::models::CESParams p{A, B};
    dualspec::models::CESLevel level;
    try {
        level = dualspec::models::ces_energy(p, n);
    } catch (const dualspec::models::NoAdmissibleRootError& e) {
        std::cerr << "export-wf: " << e.what() << "\n";
        return 1;
    }

    const double lo = grid.min_given ? grid.grid_min : -25.0;
    const double hi = grid.max_given ? grid.grid_max : 25.0;
    const dualspec::eigen::Grid g(lo, hi, grid.grid_points);
    const auto t = dualspec::eigen::discretize(
        [&](double y) { return dualspec::models::ces_potential(p, y); }, g);
    const auto pair = dualspec::eigen::eigen_lowest(t, n + 1)[n];

    std::vector<double> analytic(g.n_points);
    long double norm2 = 0.0L, cross = 0.0L;
    for (int i = 0; i < g.n_points; ++i) {
        double v;
        try {
            v = dualspec::models::ces_wavefunction(level, p, g.node(i));
        } catch (const std::exception&) {
            v = std::numeric_limits<double>::quiet_NaN();
        }
        analytic[i] = v;
        if (std::isfinite(v)) {
            norm2 += static_cast<long double>(v) * v;
            cross += static_cast<long double>(v) * pair.vector[i];
        }
    }
    if (!(norm2 > 0.0L)) {
        std::cerr << "export-wf: analytic eigenfunction vanished on the whole grid\n";
        return 1;
    }
    const double h = g.spacing();
    const double scale = 1.0 / std::sqrt(static_cast<double>(norm2) * h);
    const double sign = cross < 0.0L ? -1.0 : 1.0;

    Table table;
    table.header = {"coordinate", "analytic", "numeric"};
    for (int i = 0; i < g.n_points; ++i) {
        table.rows.push_back({fmt12(g.node(i)), fmt12(analytic[i] * scale),
                              fmt12(sign * pair.vector[i])});
    }
    emit_table(table, opts, "export-wf",
               {{"A", A}, {"B", B}, {"n", static_cast<double>(n)},
                {"eigenvalue", pair.energy}},
               true);
    return 0;
}

int run_verify_all(const OutputOpts& opts) {
    std::vector<dualspec::verify::VerificationReport> reports;
    reports.push_back(dualspec::verify::verify_schwarzian());
    reports.push_back(dualspec::verify::verify_es_spectrum(
        dualspec::models::ESParams{1.5, 4.0}, dualspec::verify::es_default_grid()));
    reports.push_back(dualspec::verify::verify_ces_spectrum(
        dualspec::models::CESParams{82.0 / 9.0, 8.0}, 1,
        dualspec::verify::ces_default_grid()));
    reports.push_back(dualspec::verify::verify_duality_exchange(
        dualspec::models::ESParams{1.5, 4.0}, 0));
    bool pass = true;
    for (const auto& rep : reports) pass = pass && rep.pass;
    emit_reports(reports, opts, "verify-all", pass);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-spectrum toolkit: exactly solvable Eckart-type spectra, their "
                 "conditionally exactly solvable partners, and the coordinate-duality "
                 "checks that tie the two together."};
    app.require_subcommand(1);

    double alpha = 1.5, beta = 4.0, A = 0.0, B = 0.0;
    int n = 0, n_max = 0;
    GridOpts grid_es, grid_ces, grid_wf;
    OutputOpts out_es, out_ces, out_dc, out_wf, out_all;
    int dc_points = 2000000;

    auto* es = app.add_subcommand(
        "spectrum-es", "Analytic vs numeric bound spectrum of the Eckart-type potential");
    es->add_option("--alpha", alpha, "Centrifugal strength parameter")->required();
    es->add_option("--beta", beta, "Well depth parameter (requires beta > alpha^2)")
        ->required();
    add_grid_opts(es, grid_es);
    add_output_opts(es, out_es);

    auto* ces = app.add_subcommand(
        "spectrum-ces",
        "Cubic-derived vs numeric spectrum of the conditionally exactly solvable partner");
    ces->add_option("--A", A, "Coefficient of the 1/z term")->required();
    ces->add_option("--B", B, "Coefficient of the -1/sqrt(z) term")->required();
    ces->add_option("--n-max", n_max, "Highest level index to examine")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_grid_opts(ces, grid_ces);
    add_output_opts(ces, out_ces);

    auto* dc = app.add_subcommand(
        "duality-check",
        "Transform an Eckart-type eigenfunction and verify the coupling-energy exchange");
    dc->add_option("--alpha", alpha, "Centrifugal strength parameter")
        ->capture_default_str();
    dc->add_option("--beta", beta, "Well depth parameter")->capture_default_str();
    dc->add_option("--n", n, "Level index")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    dc->add_option("--grid-points", dc_points, "Interior points of the x-side solver grid")
        ->check(CLI::Range(100, 100000000))
        ->capture_default_str();
    add_output_opts(dc, out_dc);

    auto* wf = app.add_subcommand(
        "export-wf", "Export analytic and numeric partner-potential eigenfunctions");
    wf->add_option("--A", A, "Coefficient of the 1/z term")->required();
    wf->add_option("--B", B, "Coefficient of the -1/sqrt(z) term")->required();
    wf->add_option("--n", n, "Level index")->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    add_grid_opts(wf, grid_wf);
    add_output_opts(wf, out_wf);

    auto* all = app.add_subcommand(
        "verify-all", "Run the worked-chain verification battery end to end");
    add_output_opts(all, out_all);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    read_grid_presence(es, grid_es);
    read_grid_presence(ces, grid_ces);
    read_grid_presence(wf, grid_wf);

    try {
        if (es->parsed()) return run_spectrum_es(alpha, beta, grid_es, out_es);
        if (ces->parsed()) return run_spectrum_ces(A, B, n_max, grid_ces, out_ces);
        if (dc->parsed())
            return run_duality_check(alpha, beta, n, dc_points,
                                     dc->count("--grid-points") > 0, out_dc);
        if (wf->parsed()) return run_export_wf(A, B, n, grid_wf, out_wf);
        if (all->parsed()) return run_verify_all(out_all);
    } catch (const std::invalid_argument& e) {
        std::cerr << app.get_name() << ": parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << app.get_name() << ": " << e.what() << "\n";
        return 1;
    }
    return 2;
}
