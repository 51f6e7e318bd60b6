#include "epsrs/scan_table.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "epsrs/errors.hpp"

namespace epsrs {

ScanTable::ScanTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw InputError("scan table needs at least one column");
}

void ScanTable::add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) {
        throw InputError("row has " + std::to_string(row.size()) + " values, table has " +
                         std::to_string(columns_.size()) + " columns");
    }
    rows_.push_back(std::move(row));
}

std::size_t ScanTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == name) return i;
    throw InputError("no column named " + name);
}

std::vector<double> ScanTable::column(const std::string& name) const {
    const std::size_t k = column_index(name);
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[k]);
    return out;
}

bool ScanTable::is_ordered() const {
    for (std::size_t i = 1; i < rows_.size(); ++i)
        if (rows_[i][0] < rows_[i - 1][0]) return false;
    return true;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ScanTable::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << '\n';
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_double(r[i]);
        out << '\n';
    }
}

std::string ScanTable::to_csv() const {
    std::ostringstream os;
    write_csv(os);
    return os.str();
}

}  // namespace epsrs
