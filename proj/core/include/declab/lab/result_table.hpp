#ifndef DECLAB_LAB_RESULT_TABLE_HPP
#define DECLAB_LAB_RESULT_TABLE_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "declab/errors.hpp"

namespace declab::lab {

struct Column {
    std::string name;
    std::string unit; // "1" for dimensionless
};

/// Ordered numeric records under a fixed column schema. Rows are validated on
/// insertion: width must match and every value must be finite.
class ResultTable {
public:
    explicit ResultTable(std::vector<Column> columns);

    void add_row(std::span<const double> row);
    void append(const ResultTable& other); // schema must match

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_cols() const { return columns_.size(); }
    const std::vector<Column>& columns() const { return columns_; }
    double at(std::size_t row, std::size_t col) const;
    const std::vector<double>& row(std::size_t r) const { return rows_[r]; }

    /// Index of a named column; throws ValidationError if absent.
    std::size_t column_index(const std::string& name) const;
    std::vector<double> column_values(const std::string& name) const;

    /// Header is "name[unit],..."; floats carry 17 significant digits so the
    /// round trip is exact.
    void write_csv(std::ostream& os) const;
    std::string to_csv() const;

private:
    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
};

/// Writes via a temporary file in the destination directory followed by an
/// atomic rename; an interrupted run never leaves a partial file at `path`.
void write_csv_atomic(const ResultTable& table, const std::string& path);

} // namespace declab::lab

#endif
