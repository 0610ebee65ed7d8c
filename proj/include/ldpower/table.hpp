#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ldpower {

// Empty cells (undefined values) are written as an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

template <class T>
Cell optional_cell(const std::optional<T>& v) {
    return v ? Cell{*v} : Cell{};
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

// Shortest representation that round-trips.
std::string format_double(double v);

void write_csv(std::ostream& out, const Table& table);
// Array of row objects keyed by column name.
std::string to_json(const Table& table);
std::string to_json(const std::vector<Table>& tables);

// CSV with RFC 4180 quoting; splits one line into fields.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);

} // namespace ldpower
