#include "chernlink/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "chernlink/errors.hpp"

namespace chernlink {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header.size()) throw ContractViolation("Table::add_row: column count mismatch in " + name);
    rows.push_back(std::move(row));
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0; // drop the sign of -0
    char buf[64];
    // The process never calls setlocale, so the decimal point is always '.'.
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        // Same 12 significant digits as the CSV mirror.
        const std::string text = format_real(*d);
        double v = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), v);
        return v;
    }
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
}

} // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = cell_json(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void write_table(const Table& table, const std::filesystem::path& dir, bool json) {
    std::filesystem::create_directories(dir);
    auto write = [](const std::filesystem::path& p, const std::string& text) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + p.string());
        f << text;
    };
    write(dir / (table.name + ".csv"), to_csv(table));
    if (json) write(dir / (table.name + ".json"), to_json(table));
}

void print_table(const Table& table, std::ostream& out, bool json) {
    out << (json ? to_json(table) : to_csv(table));
}

} // namespace chernlink
