#pragma once

#include <string>
#include <vector>

namespace chilli::io {

// RFC-4180 CSV: quoted fields may contain commas, escaped quotes and
// newlines; records end with LF or CRLF. Returns one vector of cells per
// record, including the header row.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

std::string csv_escape(const std::string& field);

// Shortest decimal form that parses back to the same double ("%.17g" with
// a round-trip check at 15 and 16 digits first).
std::string format_double(double v);

// Strict full-string double parse; throws Error("parse", ...) on failure.
double parse_double(const std::string& text, const std::string& context);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

} // namespace chilli::io
