#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_support.hpp"

using dualspec::cli::Table;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

// Runs the installed binary with the given arguments, capturing stdout and
// stderr together.
RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(DUALSPEC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    RunResult r;
    r.output = std::move(out);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int column_index(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

const std::vector<std::string>* find_check_row(const Table& t, const std::string& claim,
                                               const std::string& check) {
    const int c0 = column_index(t, "claim");
    const int c1 = column_index(t, "check");
    if (c0 < 0 || c1 < 0) return nullptr;
    for (const auto& row : t.rows) {
        if (row[static_cast<std::size_t>(c0)] == claim &&
            row[static_cast<std::size_t>(c1)] == check) {
            return &row;
        }
    }
    return nullptr;
}

int sign_changes(const std::vector<double>& v) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    int flips = 0;
    int prev = 0;
    for (double x : v) {
        if (std::abs(x) < 1e-6 * peak) continue;
        const int s = x > 0.0 ? 1 : -1;
        if (prev != 0 && s != prev) ++flips;
        prev = s;
    }
    return flips;
}

std::vector<double> column_values(const Table& t, const std::string& name) {
    const int c = column_index(t, name);
    REQUIRE(c >= 0);
    std::vector<double> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        out.push_back(dualspec::cli::parse12(row[static_cast<std::size_t>(c)]));
    }
    return out;
}

} // namespace

TEST_CASE("spectrum-es on the worked parameters") {
    const auto r = run_cli("spectrum-es --alpha 1.5 --beta 4");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);
    REQUIRE(t.header == std::vector<std::string>{"n", "analytic", "numeric", "deviation"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "0");
    CHECK(t.rows[0][1] == "-9.36111111111");
    CHECK(std::abs(dualspec::cli::parse12(t.rows[0][2]) + 9.36111111111) < 1e-4);
    CHECK(dualspec::cli::parse12(t.rows[0][3]) < 1e-4);
}

TEST_CASE("spectrum-es rejects an empty bound window with exit 2") {
    const auto r = run_cli("spectrum-es --alpha 2 --beta 4");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("window") != std::string::npos);
}

TEST_CASE("spectrum-es emits the same payload as JSON") {
    const auto r = run_cli("spectrum-es --alpha 1.5 --beta 4 --format json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.output);
    CHECK(j["command"] == "spectrum-es");
    CHECK(j["pass"].get<bool>());
    REQUIRE(j["rows"].is_array());
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["n"].get<int>() == 0);
    CHECK(j["rows"][0]["analytic"].get<double>() ==
          doctest::Approx(-9.36111111111).epsilon(1e-11));
}

TEST_CASE("spectrum-es honors explicit grid flags") {
    const auto r = run_cli(
        "spectrum-es --alpha 1.5 --beta 4 --grid-min 0.00001 --grid-max 30 "
        "--grid-points 12000");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);
    REQUIRE(t.rows.size() == 1);
    CHECK(dualspec::cli::parse12(t.rows[0][3]) < 1e-4);

    // A pinned grid whose left wall truncates too much of the x^alpha tail
    // is reported honestly: the deviation exceeds the tolerance and the
    // command signals a verification failure, not a usage error.
    const auto coarse = run_cli(
        "spectrum-es --alpha 1.5 --beta 4 --grid-min 0.001 --grid-max 30 "
        "--grid-points 12000");
    CHECK(coarse.exit_code == 1);
    const auto tc = dualspec::cli::parse_csv(coarse.output);
    REQUIRE(tc.rows.size() == 1);
    CHECK(dualspec::cli::parse12(tc.rows[0][3]) > 1e-4);
}

TEST_CASE("spectrum-ces on the worked parameters") {
    const auto r = run_cli("spectrum-ces --A 9.11111111111 --B 8 --n-max 0");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);
    REQUIRE(t.header == std::vector<std::string>{"n", "sqrt_eps", "minus_eps", "numeric",
                                                 "deviation", "roots_considered",
                                                 "selected"});
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == "0");
    CHECK(t.rows[0][1] == "1");
    CHECK(t.rows[0][2] == "-1");
    CHECK(std::abs(dualspec::cli::parse12(t.rows[0][3]) + 1.0) < 1e-4);
    CHECK(t.rows[0][5] == "3");
    CHECK(t.rows[0][6] == "true");
}

TEST_CASE("spectrum-ces reports an empty spectrum with an empty table") {
    const auto r = run_cli("spectrum-ces --A 0.75 --B 0 --n-max 2");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);
    CHECK(t.rows.empty());
}

TEST_CASE("usage errors exit with 2 and print usage text") {
    CHECK(run_cli("spectrum-es --alpha 1.5 --beta 4 --bogus 1").exit_code == 2);
    CHECK(run_cli("spectrum-es --alpha 1.5").exit_code == 2);
    CHECK(run_cli("spectrum-es --alpha 1.5 --beta 4 --grid-points 50").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);

    const auto r = run_cli("spectrum-ces --A 1 --B nonsense");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("Usage") != std::string::npos);

    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("--help").output.find("spectrum-es") != std::string::npos);
}

TEST_CASE("duality-check passes on the worked chain and reports both forms") {
    const auto r = run_cli("duality-check --alpha 1.5 --beta 4 --n 0");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);

    const auto* rq = find_check_row(t, "duality-exchange", "rayleigh_quotient_vs_minus_lambda");
    REQUIRE(rq != nullptr);
    CHECK((*rq)[2] == "-0.75");
    CHECK(rq->back() == "true");

    // Both the derivative-based and the closed-form Schwarzian rows appear.
    CHECK(find_check_row(t, "schwarzian-closure", "spot_formula") != nullptr);
    CHECK(find_check_row(t, "schwarzian-closure", "spot_closed_form") != nullptr);
}

TEST_CASE("duality-check reports a vanishing Rayleigh quotient at alpha = 1") {
    const auto r = run_cli("duality-check --alpha 1.0 --beta 4 --n 0");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);
    const auto* rq = find_check_row(t, "duality-exchange", "rayleigh_quotient_vs_minus_lambda");
    REQUIRE(rq != nullptr);
    // -lambda with lambda = alpha(alpha-1) = 0.
    CHECK(dualspec::cli::parse12((*rq)[2]) == 0.0);
    CHECK(std::abs(dualspec::cli::parse12((*rq)[3])) < 1e-3);
}

TEST_CASE("duality-check rejects an unbound level with exit 2") {
    CHECK(run_cli("duality-check --alpha 2 --beta 4 --n 0").exit_code == 2);
}

TEST_CASE("export-wf emits sign-aligned normalized curves") {
    const auto r = run_cli("export-wf --A 9.11111111111 --B 8 --n 0");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);
    REQUIRE(t.header == std::vector<std::string>{"coordinate", "analytic", "numeric"});
    REQUIRE(t.rows.size() >= 100);

    // Emit -> parse -> emit is the identity on this payload.
    CHECK(dualspec::cli::to_csv(t) == r.output);

    const auto coord = column_values(t, "coordinate");
    const auto analytic = column_values(t, "analytic");
    const auto numeric = column_values(t, "numeric");
    const double h = coord[1] - coord[0];

    CHECK(sign_changes(analytic) == 0);
    CHECK(sign_changes(numeric) == 0);

    long double na = 0.0L, nn = 0.0L, dot = 0.0L;
    for (std::size_t i = 0; i < coord.size(); ++i) {
        if (!std::isfinite(analytic[i])) continue;
        na += static_cast<long double>(analytic[i]) * analytic[i];
        nn += static_cast<long double>(numeric[i]) * numeric[i];
        dot += static_cast<long double>(analytic[i]) * numeric[i];
    }
    CHECK(static_cast<double>(na) * h == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(static_cast<double>(nn) * h == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(static_cast<double>(dot) > 0.0);
}

TEST_CASE("export-wf node count follows the level index") {
    const auto r = run_cli("export-wf --A 9.11111111111 --B 8 --n 1");
    CHECK(r.exit_code == 0);
    const auto t = dualspec::cli::parse_csv(r.output);
    CHECK(sign_changes(column_values(t, "analytic")) == 1);
    CHECK(sign_changes(column_values(t, "numeric")) == 1);
}

TEST_CASE("export-wf exits 1 when no admissible level exists") {
    CHECK(run_cli("export-wf --A 0.75 --B 0 --n 0").exit_code == 1);
    CHECK(run_cli("export-wf --A 9.11111111111 --B 8 --n 2").exit_code == 1);
}

TEST_CASE("verify-all runs the standard battery") {
    const auto r = run_cli("verify-all");
    CHECK(r.exit_code == 0);
    for (const char* claim :
         {"schwarzian-closure", "es-spectrum", "ces-spectrum", "duality-exchange"}) {
        CHECK(r.output.find(claim) != std::string::npos);
    }
}

TEST_CASE("--out writes the table to a file instead of stdout") {
    const auto path = std::filesystem::temp_directory_path() / "dualspec_cli_out.csv";
    const auto r =
        run_cli("spectrum-es --alpha 1.5 --beta 4 --out " + path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const auto t = dualspec::cli::parse_csv(buffer.str());
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][1] == "-9.36111111111");
    std::filesystem::remove(path);
}
