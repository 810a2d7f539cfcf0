#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace cornerlab {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    // Throws invalid-input when the row width does not match the header.
    void add_row(std::vector<Cell> row);
    std::size_t column_index(const std::string& name) const;
    double number(std::size_t row, const std::string& column) const;
    const std::string& text(std::size_t row, const std::string& column) const;
};

// 17 significant digits, enough to round-trip every double.
std::string format_number(double value);

void write_csv(const Table& table, std::ostream& out);
void write_csv(const Table& table, const std::string& path);

// Fields that parse completely as numbers become doubles, others strings.
Table read_csv(std::istream& in);
Table read_csv(const std::string& path);

} // namespace cornerlab
