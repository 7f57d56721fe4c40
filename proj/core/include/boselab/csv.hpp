#pragma once

#include <string>
#include <vector>

namespace boselab {

/// Column-labelled table of doubles, emitted as CSV with a fixed numeric
/// format so reruns are byte-identical.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    void add_row(const std::vector<double>& row);
    std::size_t row_count() const { return rows_.size(); }
    std::string to_string() const;
    /// Atomic write (temp file + rename).
    void write(const std::string& path) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

} // namespace boselab
