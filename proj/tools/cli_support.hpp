#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dualspec/verify.hpp"

namespace dualspec::cli {

/// Format a double with 12 significant digits (C locale, '.' decimal).
std::string fmt12(double v);

/// Parse back what fmt12 produced. Throws std::invalid_argument on garbage.
double parse12(const std::string& s);

/// Round a value through its 12-significant-digit decimal form, so that
/// JSON payloads carry exactly what the text formats print.
double json_number(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC-4180-style serialization: header row first, fields quoted only when
/// they contain a comma, quote, or newline; embedded quotes doubled; '\n'
/// line endings; no locale dependence.
std::string to_csv(const Table& table);

/// Inverse of to_csv. Throws std::invalid_argument on malformed input.
Table parse_csv(const std::string& text);

/// Table rendered as a JSON array of objects keyed by the header. Cells
/// that parse as numbers are emitted as numbers, the rest as strings.
nlohmann::ordered_json table_to_json(const Table& table);

/// Verification report rendered as one table row per check, with the claim
/// repeated in the first column.
Table report_to_table(const verify::VerificationReport& report);

nlohmann::ordered_json report_to_json(const verify::VerificationReport& report);

/// Write to the given path, or to stdout when the path is empty. Throws
/// std::runtime_error if the file cannot be written.
void write_output(const std::string& payload, const std::string& out_path);

} // namespace dualspec::cli
