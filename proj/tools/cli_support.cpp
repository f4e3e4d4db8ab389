#include "cli_support.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace dualspec::cli {

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double parse12(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument("parse12: not a number: '" + s + "'");
    return v;
}

double json_number(double v) {
    return std::strtod(fmt12(v).c_str(), nullptr);
}

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

void append_field(std::string& out, const std::string& field) {
    if (!needs_quoting(field)) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out += ',';
        append_field(out, row[i]);
    }
    out += '\n';
}

std::vector<std::string> parse_row(const std::string& text, std::size_t& pos) {
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    while (pos < text.size()) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            ++pos;
            continue;
        }
        if (c == '"' && field.empty()) {
            quoted = true;
            ++pos;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            ++pos;
        } else if (c == '\n') {
            ++pos;
            break;
        } else if (c == '\r') {
            ++pos;  // tolerate CRLF on input
        } else if (c == '"') {
            throw std::invalid_argument("parse_csv: stray quote inside unquoted field");
        } else {
            field += c;
            ++pos;
        }
    }
    if (quoted) throw std::invalid_argument("parse_csv: unterminated quoted field");
    row.push_back(std::move(field));
    return row;
}

} // namespace

std::string to_csv(const Table& table) {
    std::string out;
    append_row(out, table.header);
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw std::invalid_argument("to_csv: row width differs from header width");
        append_row(out, row);
    }
    return out;
}

Table parse_csv(const std::string& text) {
    Table table;
    std::size_t pos = 0;
    if (pos >= text.size()) throw std::invalid_argument("parse_csv: empty document");
    table.header = parse_row(text, pos);
    while (pos < text.size()) {
        auto row = parse_row(text, pos);
        if (row.size() == 1 && row[0].empty()) continue;  // trailing blank line
        if (row.size() != table.header.size())
            throw std::invalid_argument("parse_csv: row width differs from header width");
        table.rows.push_back(std::move(row));
    }
    return table;
}

nlohmann::ordered_json table_to_json(const Table& table) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string& cell = row[i];
            if (cell == "true" || cell == "false") {
                obj[table.header[i]] = (cell == "true");
                continue;
            }
            try {
                obj[table.header[i]] = parse12(cell);
            } catch (const std::invalid_argument&) {
                obj[table.header[i]] = cell;
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

Table report_to_table(const verify::VerificationReport& report) {
    Table table;
    table.header = {"claim",   "check",   "analytic",           "numeric",
                    "absolute_deviation", "relative_deviation", "tolerance", "pass"};
    for (const auto& row : report.rows) {
        table.rows.push_back({report.claim, row.name, fmt12(row.analytic), fmt12(row.numeric),
                              fmt12(row.absolute_deviation), fmt12(row.relative_deviation),
                              fmt12(row.tolerance), row.pass ? "true" : "false"});
    }
    return table;
}

nlohmann::ordered_json report_to_json(const verify::VerificationReport& report) {
    nlohmann::ordered_json j;
    j["claim"] = report.claim;
    auto params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.params) params[key] = json_number(value);
    j["params"] = std::move(params);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["check"] = row.name;
        r["analytic"] = json_number(row.analytic);
        r["numeric"] = json_number(row.numeric);
        r["absolute_deviation"] = json_number(row.absolute_deviation);
        r["relative_deviation"] = json_number(row.relative_deviation);
        r["tolerance"] = json_number(row.tolerance);
        r["pass"] = row.pass;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["pass"] = report.pass;
    return j;
}

void write_output(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << payload;
    if (!file) throw std::runtime_error("failed writing output file: " + out_path);
}

} // namespace dualspec::cli
