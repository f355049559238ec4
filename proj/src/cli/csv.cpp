#include "cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace taildep::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::optional<std::size_t> CsvTable::find_column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t CsvTable::column(const std::string& name) const {
    if (auto idx = find_column(name)) return *idx;
    throw std::invalid_argument("no column named '" + name + "'");
}

CsvTable read_csv(std::istream& in, const std::string& source_name) {
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto fields = split(line, ',');
        if (t.header.empty()) {
            t.header = std::move(fields);
            continue;
        }
        if (fields.size() != t.header.size()) {
            std::ostringstream msg;
            msg << source_name << ":" << line_no << ": expected " << t.header.size() << " fields, found "
                << fields.size();
            throw std::invalid_argument(msg.str());
        }
        t.rows.push_back(std::move(fields));
    }
    if (t.header.empty()) throw std::invalid_argument(source_name + ": missing header row");
    if (t.rows.empty()) throw std::invalid_argument(source_name + ": no data rows");
    return t;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_csv(in, path);
}

std::optional<double> parse_double(const std::string& field) {
    const std::string s = trim(field);
    if (s.empty()) return std::nullopt;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::vector<double> numeric_column(const CsvTable& table, std::size_t col) {
    std::vector<double> out;
    out.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto v = parse_double(table.rows[r][col]);
        if (!v || !std::isfinite(*v)) {
            std::ostringstream msg;
            msg << "data row " << r + 1 << ", column '" << table.header[col] << "': '" << table.rows[r][col]
                << "' is not a finite number";
            throw std::invalid_argument(msg.str());
        }
        out.push_back(*v);
    }
    return out;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace taildep::cli
