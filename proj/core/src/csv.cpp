#include "boselab/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "boselab/serialize.hpp"

namespace boselab {

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("CsvTable: no columns");
}

void CsvTable::add_row(const std::vector<double>& row) {
    if (row.size() != columns_.size())
        throw std::invalid_argument("CsvTable: row width mismatch");
    rows_.push_back(row);
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        if (c) os << ',';
        os << columns_[c];
    }
    os << '\n';
    char buf[64];
    for (const auto& row : rows_) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << ',';
            std::snprintf(buf, sizeof(buf), "%.12g", row[c]);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

void CsvTable::write(const std::string& path) const {
    write_file_atomic(path, to_string());
}

} // namespace boselab
