#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli_support.hpp"

using namespace dualspec;

TEST_CASE("fmt12 prints 12 significant digits and parse12 round-trips") {
    CHECK(cli::fmt12(-337.0 / 36.0) == "-9.36111111111");
    CHECK(cli::fmt12(1.0) == "1");
    CHECK(cli::fmt12(0.5) == "0.5");
    CHECK(cli::fmt12(1e-7) == "1e-07");
    CHECK(cli::fmt12(-0.75) == "-0.75");

    for (double v : {-337.0 / 36.0, 1.0, 0.5, 1e-7, -0.75, 82.0 / 9.0}) {
        CHECK(cli::parse12(cli::fmt12(v)) == doctest::Approx(v).epsilon(1e-11));
    }

    CHECK_THROWS_AS((void)cli::parse12("abc"), std::invalid_argument);
    CHECK_THROWS_AS((void)cli::parse12(""), std::invalid_argument);
    CHECK_THROWS_AS((void)cli::parse12("1.5x"), std::invalid_argument);
}

TEST_CASE("json_number carries the printed precision") {
    const double v = -337.0 / 36.0;
    CHECK(cli::json_number(v) == cli::parse12(cli::fmt12(v)));
    CHECK(cli::json_number(1.0) == 1.0);
}

TEST_CASE("to_csv emits plain fields unquoted") {
    cli::Table t;
    t.header = {"h1", "h2"};
    t.rows = {{"1", "2"}, {"x", "-9.36111111111"}};
    CHECK(cli::to_csv(t) == "h1,h2\n1,2\nx,-9.36111111111\n");
}

TEST_CASE("CSV round-trips quoting, commas, and newlines") {
    cli::Table t;
    t.header = {"a", "b"};
    t.rows = {{"x,y", "say \"hi\""}, {"line\nbreak", "plain"}};
    const std::string text = cli::to_csv(t);
    const auto back = cli::parse_csv(text);
    REQUIRE(back.header == t.header);
    REQUIRE(back.rows == t.rows);
}

TEST_CASE("parse_csv accepts CRLF and rejects malformed documents") {
    const auto crlf = cli::parse_csv("a,b\r\n1,2\r\n");
    REQUIRE(crlf.header.size() == 2);
    REQUIRE(crlf.rows.size() == 1);
    CHECK(crlf.rows[0][1] == "2");

    CHECK_THROWS_AS((void)cli::parse_csv(""), std::invalid_argument);
    CHECK_THROWS_AS((void)cli::parse_csv("a,b\n1\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)cli::parse_csv("a\nfo\"o\n"), std::invalid_argument);
    CHECK_THROWS_AS((void)cli::parse_csv("a\n\"unterminated\n"), std::invalid_argument);
}

TEST_CASE("table_to_json types numbers and booleans") {
    cli::Table t;
    t.header = {"name", "value", "flag"};
    t.rows = {{"level_0", "-9.36111111111", "true"}, {"level_1", "2", "false"}};
    const auto j = cli::table_to_json(t);
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 2);
    CHECK(j[0]["name"].is_string());
    CHECK(j[0]["name"] == "level_0");
    CHECK(j[0]["value"].is_number());
    CHECK(j[0]["value"].get<double>() == doctest::Approx(-9.36111111111));
    CHECK(j[0]["flag"].is_boolean());
    CHECK(j[0]["flag"].get<bool>());
    CHECK_FALSE(j[1]["flag"].get<bool>());
}

TEST_CASE("report rendering keeps the claim and row structure") {
    verify::VerificationReport rep;
    rep.claim = "unit";
    rep.params.emplace_back("alpha", 1.5);
    rep.check("row_name", -337.0 / 36.0, -337.0 / 36.0 + 1e-9, 1e-4);

    const auto table = cli::report_to_table(rep);
    REQUIRE(table.header ==
            std::vector<std::string>{"claim", "check", "analytic", "numeric",
                                     "absolute_deviation", "relative_deviation",
                                     "tolerance", "pass"});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][0] == "unit");
    CHECK(table.rows[0][1] == "row_name");
    CHECK(table.rows[0][2] == "-9.36111111111");
    CHECK(table.rows[0][7] == "true");

    const auto j = cli::report_to_json(rep);
    CHECK(j["claim"] == "unit");
    CHECK(j["params"]["alpha"].get<double>() == doctest::Approx(1.5));
    REQUIRE(j["rows"].is_array());
    CHECK(j["rows"][0]["check"] == "row_name");
    CHECK(j["rows"][0]["analytic"].get<double>() ==
          cli::json_number(-337.0 / 36.0));
    CHECK(j["rows"][0]["pass"].get<bool>());
    CHECK(j["pass"].get<bool>());
}

TEST_CASE("write_output writes files and reports failures") {
    const auto path =
        std::filesystem::temp_directory_path() / "dualspec_cli_support_test.txt";
    const std::string payload = "hello,world\n1,2\n";
    cli::write_output(payload, path.string());
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == payload);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(cli::write_output("x", "/nonexistent_dir_xyz/file.txt"),
                    std::runtime_error);
}
