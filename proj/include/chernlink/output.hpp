#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace chernlink {

using Cell = std::variant<double, long long, std::string>;

/// A named result table, emitted as CSV (and optionally JSON).
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// "%.12g", locale independent; non-finite values print as nan / inf / -inf.
std::string format_real(double v);

std::string to_csv(const Table& table);
/// Array of objects keyed by header; non-finite reals become null.
std::string to_json(const Table& table);

/// Writes <dir>/<name>.csv and, when `json` is set, <dir>/<name>.json.
void write_table(const Table& table, const std::filesystem::path& dir, bool json);
/// Prints CSV, or JSON when `json` is set.
void print_table(const Table& table, std::ostream& out, bool json);

} // namespace chernlink
