#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace genprio {

/// A header-first comma-separated table. Cells keep their raw text; typed
/// accessors raise ParseError pointing at the file and line.
class CsvTable {
public:
    static CsvTable read(const std::filesystem::path& path);
    static CsvTable parse(std::string_view text, std::string source);

    const std::string& source() const { return source_; }
    const std::vector<std::string>& header() const { return header_; }
    std::size_t row_count() const { return rows_.size(); }
    int line_of(std::size_t row) const { return lines_[row]; }

    std::optional<std::size_t> find_column(std::string_view name) const;
    std::size_t column(std::string_view name) const;  // throws ParseError

    const std::string& text(std::size_t row, std::size_t col) const;
    double number(std::size_t row, std::size_t col) const;
    int integer(std::size_t row, std::size_t col) const;
    /// Value of an optional column, `fallback` when the column is absent or the cell empty.
    double number_or(std::size_t row, std::optional<std::size_t> col, double fallback) const;

    [[noreturn]] void fail(std::size_t row, const std::string& what) const;

private:
    std::string source_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<int> lines_;
};

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace genprio
