#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace placenet {

// Header row plus records. Fields are comma-separated; double-quoted fields
// may contain commas and doubled quotes.
struct CsvTable {
    std::string source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines;  // 1-based source line of each row

    // Throws ParseError when the column is missing.
    std::size_t column(std::string_view name) const;
};

// Blank lines are skipped. Throws ParseError on an empty input or a row whose
// field count differs from the header's.
CsvTable read_csv(std::istream& in, const std::string& source = {});
CsvTable read_csv_file(const std::string& path);

double parse_real(const std::string& text, const std::string& source, std::size_t line);
long long parse_integer(const std::string& text, const std::string& source, std::size_t line);

std::string csv_field(std::string_view text);

// Shortest round-trip representation ("%.17g").
std::string format_real(double value);
std::string format_fixed(double value, int decimals);

}  // namespace placenet
