#include "cornerlab/table.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

#include "cornerlab/error.hpp"

namespace cornerlab {

namespace {

void check_text(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") != std::string::npos) {
        throw Error(ErrorKind::invalid_input, "CSV text fields may not contain commas, quotes or newlines");
    }
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

Cell parse_cell(const std::string& field)
{
    if (!field.empty()) {
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() + field.size()) {
            return v;
        }
    }
    return field;
}

} // namespace

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        throw Error(ErrorKind::invalid_input, "row width does not match the table header");
    }
    rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw Error(ErrorKind::invalid_input, "no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

double Table::number(std::size_t row, const std::string& column) const
{
    const Cell& c = rows.at(row).at(column_index(column));
    if (const double* v = std::get_if<double>(&c)) {
        return *v;
    }
    throw Error(ErrorKind::invalid_input, "column '" + column + "' is not numeric");
}

const std::string& Table::text(std::size_t row, const std::string& column) const
{
    const Cell& c = rows.at(row).at(column_index(column));
    if (const std::string* v = std::get_if<std::string>(&c)) {
        return *v;
    }
    throw Error(ErrorKind::invalid_input, "column '" + column + "' is not text");
}

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(const Table& table, std::ostream& out)
{
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        check_text(table.columns[i]);
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out << ',';
            }
            if (const double* v = std::get_if<double>(&row[i])) {
                out << format_number(*v);
            } else {
                const std::string& s = std::get<std::string>(row[i]);
                check_text(s);
                out << s;
            }
        }
        out << '\n';
    }
}

void write_csv(const Table& table, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::invalid_input, "cannot open '" + path + "' for writing");
    }
    write_csv(table, out);
    if (!out) {
        throw Error(ErrorKind::invalid_input, "failed writing '" + path + "'");
    }
}

Table read_csv(std::istream& in)
{
    Table table;
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::parse_error, "CSV input has no header row");
    }
    table.columns = split(line);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != table.columns.size()) {
            throw Error(ErrorKind::parse_error, "line " + std::to_string(line_no) + ": wrong number of fields");
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& f : fields) {
            row.push_back(parse_cell(f));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::invalid_input, "cannot open '" + path + "'");
    }
    return read_csv(in);
}

} // namespace cornerlab
