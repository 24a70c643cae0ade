#include "declab/lab/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace declab::lab {

ResultTable::ResultTable(std::vector<Column> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw ValidationError("result table needs at least one column");
}

void ResultTable::add_row(std::span<const double> row) {
    if (row.size() != columns_.size())
        throw ValidationError("row width " + std::to_string(row.size()) +
                              " does not match column count " + std::to_string(columns_.size()));
    for (double v : row)
        if (!std::isfinite(v))
            throw NonFiniteValueError("non-finite value in result row");
    rows_.emplace_back(row.begin(), row.end());
}

void ResultTable::append(const ResultTable& other) {
    if (other.columns_.size() != columns_.size())
        throw ValidationError("cannot append tables with different schemas");
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (other.columns_[i].name != columns_[i].name)
            throw ValidationError("cannot append tables with different schemas");
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

double ResultTable::at(std::size_t row, std::size_t col) const {
    return rows_.at(row).at(col);
}

std::size_t ResultTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i].name == name) return i;
    throw ValidationError("no column named " + name);
}

std::vector<double> ResultTable::column_values(const std::string& name) const {
    const std::size_t c = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[c]);
    return out;
}

void ResultTable::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ',';
        os << columns_[i].name << '[' << columns_[i].unit << ']';
    }
    os << '\n';
    char buf[64];
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) os << ',';
            std::snprintf(buf, sizeof buf, "%.17g", r[i]);
            os << buf;
        }
        os << '\n';
    }
}

std::string ResultTable::to_csv() const {
    std::ostringstream ss;
    write_csv(ss);
    return ss.str();
}

void write_csv_atomic(const ResultTable& table, const std::string& path) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        table.write_csv(os);
        os.flush();
        if (!os) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, target);
}

} // namespace declab::lab
