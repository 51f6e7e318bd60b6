#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

namespace epsrs {

/// Named real-valued columns, one row per scan sample.
class ScanTable {
public:
    explicit ScanTable(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    std::size_t row_count() const noexcept { return rows_.size(); }

    /// Throws InputError if the row length differs from the column count.
    void add_row(std::vector<double> row);

    /// Index of a named column; InputError if absent.
    std::size_t column_index(const std::string& name) const;

    /// Values of one column, in row order.
    std::vector<double> column(const std::string& name) const;

    /// True if the first column is non-decreasing.
    bool is_ordered() const;

    /// Header row, comma separated, LF line endings, 17 significant digits.
    void write_csv(std::ostream& out) const;
    std::string to_csv() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

/// %.17g, with non-finite values spelled nan / inf / -inf.
std::string format_double(double v);

}  // namespace epsrs
