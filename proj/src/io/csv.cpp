#include "aggregatio/io/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace aggregatio::io {

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(columns.size()), cells_in_row_(columns.size()) {
    if (columns.empty()) throw InvalidParameter("csv needs at least one column");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].find(',') != std::string::npos ||
            columns[i].find('\n') != std::string::npos)
            throw InvalidParameter("csv column names must not contain ',' or newlines");
        if (i) body_ += ',';
        body_ += columns[i];
    }
}

std::string CsvWriter::format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

CsvWriter& CsvWriter::begin_row() {
    if (cells_in_row_ != columns_)
        throw InvalidParameter("csv row started before the previous one was filled");
    body_ += '\n';
    cells_in_row_ = 0;
    return *this;
}

CsvWriter& CsvWriter::add(double value) { return add(format_double(value)); }

CsvWriter& CsvWriter::add(long value) { return add(std::to_string(value)); }

CsvWriter& CsvWriter::add(const std::string& value) {
    if (value.find(',') != std::string::npos || value.find('\n') != std::string::npos)
        throw InvalidParameter("csv cells must not contain ',' or newlines");
    if (cells_in_row_ >= columns_)
        throw InvalidParameter("csv row has more cells than columns");
    if (cells_in_row_) body_ += ',';
    body_ += value;
    ++cells_in_row_;
    return *this;
}

void CsvWriter::ensure_row_complete() const {
    if (cells_in_row_ != columns_)
        throw InvalidParameter("csv row is incomplete");
}

std::string CsvWriter::str() const {
    ensure_row_complete();
    return body_ + "\n";
}

void CsvWriter::write_atomic(const std::filesystem::path& path) const {
    write_file_atomic(path, str());
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw InvalidParameter("csv column not found: " + name);
}

double CsvTable::as_double(std::size_t row, std::size_t col) const {
    const std::string& cell = rows.at(row).at(col);
    std::size_t consumed = 0;
    const double value = std::stod(cell, &consumed);
    if (consumed != cell.size())
        throw InvalidParameter("csv cell is not a number: " + cell);
    return value;
}

const std::string& CsvTable::cell(std::size_t row, const std::string& column) const {
    return rows.at(row).at(column_index(column));
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (header) {
            table.columns = std::move(cells);
            header = false;
        } else {
            if (cells.size() != table.columns.size())
                throw InvalidParameter("csv row width differs from header");
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.columns.empty()) throw InvalidParameter("csv has no header row");
    return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
    return parse_csv(read_file(path));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidParameter("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.good())
            throw InvalidParameter("short write to: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParameter("cannot open for reading: " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace aggregatio::io
