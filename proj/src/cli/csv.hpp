// csv.hpp
//
// Comma-separated input and output for the command-line tool: header row
// required, '.' decimal point, no quoting.

#ifndef TAILDEP_CLI_CSV_HPP
#define TAILDEP_CLI_CSV_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace taildep::cli {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws std::invalid_argument if absent.
    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] std::optional<std::size_t> find_column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in, const std::string& source_name = "input");
CsvTable read_csv_file(const std::string& path);

/// Strict parse: the whole field must be a number.
std::optional<double> parse_double(const std::string& field);

/// Every cell of one column as a number; throws naming the row on failure.
std::vector<double> numeric_column(const CsvTable& table, std::size_t col);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace taildep::cli

#endif  // TAILDEP_CLI_CSV_HPP
