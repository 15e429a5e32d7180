#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tic/error.hpp"

namespace tic {

// Minimal reader for the comma-separated files this project reads and writes:
// a mandatory header naming the columns in any order, '#' comment lines, blank
// lines ignored, no quoting. Cells are whitespace-trimmed. Every diagnostic
// carries file and line.
class CsvReader {
public:
    CsvReader(std::istream& in, std::string name) : in_(&in), name_(std::move(name)) {
        read_header();
    }

    explicit CsvReader(const std::string& path) : owned_(new std::ifstream(path)), name_(path) {
        if (!*owned_) throw DataError("cannot open " + path);
        in_ = owned_.get();
        read_header();
    }

    const std::vector<std::string>& header() const { return header_; }

    std::optional<std::size_t> find_column(const std::string& name) const {
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (header_[i] == name) return i;
        }
        return std::nullopt;
    }

    std::size_t column(const std::string& name) const {
        if (const auto idx = find_column(name)) return *idx;
        throw DataError(name_ + ": missing required column '" + name + "'");
    }

    bool next_row() {
        std::string line;
        while (read_line(line)) {
            if (line.empty() || line[0] == '#') continue;
            split(line, row_);
            if (row_.size() != header_.size()) {
                throw DataError(where() + ": expected " + std::to_string(header_.size()) +
                                " fields, got " + std::to_string(row_.size()));
            }
            return true;
        }
        return false;
    }

    const std::string& field(std::size_t col) const { return row_.at(col); }

    bool has_value(std::size_t col) const { return !row_.at(col).empty(); }

    std::uint64_t u64(std::size_t col) const {
        const std::string& cell = field(col);
        std::uint64_t value = 0;
        if (!parse_full(cell, value)) {
            throw DataError(where() + ": '" + cell + "' is not a non-negative integer");
        }
        return value;
    }

    std::int64_t i64(std::size_t col) const {
        const std::string& cell = field(col);
        std::int64_t value = 0;
        if (!parse_full(cell, value)) {
            throw DataError(where() + ": '" + cell + "' is not an integer");
        }
        return value;
    }

    double f64(std::size_t col) const {
        const std::string& cell = field(col);
        double value = 0.0;
        if (!parse_full(cell, value)) {
            throw DataError(where() + ": '" + cell + "' is not a number");
        }
        return value;
    }

    std::size_t line() const { return line_no_; }

    std::string where() const { return name_ + ":" + std::to_string(line_no_); }

private:
    void read_header() {
        std::string line;
        while (read_line(line)) {
            if (line.empty() || line[0] == '#') continue;
            split(line, header_);
            return;
        }
        throw DataError(name_ + ": missing header row");
    }

    bool read_line(std::string& out) {
        if (!std::getline(*in_, out)) return false;
        ++line_no_;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        trim(out);
        return true;
    }

    static void trim(std::string& s) {
        std::size_t b = 0;
        std::size_t e = s.size();
        while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
        while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
        s = s.substr(b, e - b);
    }

    static void split(const std::string& line, std::vector<std::string>& out) {
        out.clear();
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                             : comma - start);
            trim(cell);
            out.push_back(std::move(cell));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }

    template <typename T>
    static bool parse_full(const std::string& cell, T& value) {
        if (cell.empty()) return false;
        const char* begin = cell.data();
        const char* end = begin + cell.size();
        const auto result = std::from_chars(begin, end, value);
        return result.ec == std::errc{} && result.ptr == end;
    }

    std::unique_ptr<std::ifstream> owned_;
    std::istream* in_ = nullptr;
    std::string name_;
    std::vector<std::string> header_;
    std::vector<std::string> row_;
    std::size_t line_no_ = 0;
};

} // namespace tic
