#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aggregatio/errors.hpp"

namespace aggregatio::io {

/// CSV writer: snake_case header, '.' decimal separator, doubles rendered
/// with 17 significant digits so values survive a parse round trip.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);

    CsvWriter& begin_row();
    CsvWriter& add(double value);
    CsvWriter& add(long value);
    CsvWriter& add(const std::string& value);

    std::string str() const;

    /// Writes via a temp file in the same directory plus rename.
    void write_atomic(const std::filesystem::path& path) const;

    static std::string format_double(double value);

private:
    void ensure_row_complete() const;
    std::size_t columns_;
    std::size_t cells_in_row_ = 0;
    std::string body_;
};

/// Parsed CSV with typed access; the tool re-reads its own output through
/// this to guarantee round trips.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(const std::string& name) const;
    double as_double(std::size_t row, std::size_t col) const;
    const std::string& cell(std::size_t row, const std::string& column) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

/// Atomic write of arbitrary bytes (temp file + rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace aggregatio::io
