#include "genprio/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "genprio/error.hpp"

namespace genprio {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back(trim(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
    }
    out.emplace_back(trim(cell));
    return out;
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "missing or unreadable file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.string());
}

CsvTable CsvTable::parse(std::string_view text, std::string source) {
    CsvTable table;
    table.source_ = std::move(source);
    // Strip a UTF-8 byte order mark.
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    int line_no = 0;
    bool have_header = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (trim(line).empty()) {
            if (end == text.size()) break;
            continue;
        }
        auto cells = split_csv_line(line);
        if (!have_header) {
            table.header_ = std::move(cells);
            have_header = true;
        } else {
            if (cells.size() != table.header_.size()) {
                throw ParseError(table.source_, line_no,
                                 "expected " + std::to_string(table.header_.size()) +
                                     " fields, found " + std::to_string(cells.size()));
            }
            table.rows_.push_back(std::move(cells));
            table.lines_.push_back(line_no);
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw ParseError(table.source_, 0, "empty file (header row required)");
    return table;
}

std::optional<std::size_t> CsvTable::find_column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t CsvTable::column(std::string_view name) const {
    auto col = find_column(name);
    if (!col) throw ParseError(source_, 1, "missing required column '" + std::string(name) + "'");
    return *col;
}

const std::string& CsvTable::text(std::size_t row, std::size_t col) const {
    return rows_[row][col];
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& cell = rows_[row][col];
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
        fail(row, "column '" + header_[col] + "': not a finite number: '" + cell + "'");
    }
    return value;
}

int CsvTable::integer(std::size_t row, std::size_t col) const {
    const std::string& cell = rows_[row][col];
    int value = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        // Accept integral floats such as "101.0".
        double d = number(row, col);
        if (d != std::floor(d)) fail(row, "column '" + header_[col] + "': not an integer");
        return static_cast<int>(d);
    }
    return value;
}

double CsvTable::number_or(std::size_t row, std::optional<std::size_t> col, double fallback) const {
    if (!col || rows_[row][*col].empty()) return fallback;
    return number(row, *col);
}

void CsvTable::fail(std::size_t row, const std::string& what) const {
    throw ParseError(source_, lines_[row], what);
}

}  // namespace genprio
