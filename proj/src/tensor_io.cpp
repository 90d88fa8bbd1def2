#include "quaddt/tensor_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace quaddt {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

// Pulls whitespace-separated tokens off a stream, tracking 1-based
// line/column of the current token.
class Tokenizer {
public:
    explicit Tokenizer(std::istream& in) : in_(in) {}

    bool next(std::string_view& token) {
        while (pos_ >= line_.size()) {
            if (!std::getline(in_, line_)) return false;
            ++line_no_;
            pos_ = 0;
            skip_spaces();
        }
        const std::size_t start = pos_;
        while (pos_ < line_.size() && !is_space(line_[pos_])) ++pos_;
        token = std::string_view(line_).substr(start, pos_ - start);
        token_line_ = line_no_;
        token_column_ = static_cast<int>(start) + 1;
        skip_spaces();
        return true;
    }

    int line() const { return token_line_; }
    int column() const { return token_column_; }
    int current_line() const { return line_no_; }

private:
    void skip_spaces() {
        while (pos_ < line_.size() && is_space(line_[pos_])) ++pos_;
    }

    std::istream& in_;
    std::string line_;
    std::size_t pos_ = 0;
    int line_no_ = 0;
    int token_line_ = 1;
    int token_column_ = 1;
};

double parse_real(std::string_view token, int line, int column) {
    double value{};
    const auto* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ParseError("unparseable value '" + std::string(token) + "'", line, column);
    }
    if (!std::isfinite(value)) {
        throw ParseError("non-finite value '" + std::string(token) + "'", line, column);
    }
    return value;
}

std::int64_t parse_count(std::string_view token, const char* what, int line, int column) {
    std::int64_t value{};
    const auto* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end || value < 1) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'",
                         line, column);
    }
    return value;
}

}  // namespace

Grid read_tensor(std::istream& in) {
    Tokenizer tok(in);
    std::string_view token;
    if (!tok.next(token) || token != "dt-tensor") {
        throw ParseError("expected 'dt-tensor' header", tok.line(), tok.column());
    }
    const int header_line = tok.line();
    if (!tok.next(token) || tok.line() != header_line) {
        throw ParseError("missing rank in header", header_line, tok.column());
    }
    const std::int64_t rank = parse_count(token, "rank", tok.line(), tok.column());
    if (rank > 32) {
        throw ParseError("rank " + std::to_string(rank) + " above the supported limit",
                         tok.line(), tok.column());
    }

    Grid grid;
    std::size_t expected = 1;
    for (std::int64_t d = 0; d < rank; ++d) {
        if (!tok.next(token) || tok.line() != header_line) {
            throw ParseError("header declares rank " + std::to_string(rank) +
                                 " but has " + std::to_string(d) + " extent(s)",
                             header_line, tok.column());
        }
        const std::int64_t e = parse_count(token, "extent", tok.line(), tok.column());
        if (expected > (std::size_t{1} << 62) / static_cast<std::size_t>(e)) {
            throw ParseError("extents overflow", tok.line(), tok.column());
        }
        expected *= static_cast<std::size_t>(e);
        grid.extents.push_back(e);
    }

    grid.data.reserve(expected);
    std::size_t found = 0;
    int first_extra_line = 0, first_extra_column = 0;
    while (tok.next(token)) {
        ++found;
        if (found <= expected) {
            grid.data.push_back(parse_real(token, tok.line(), tok.column()));
        } else if (first_extra_line == 0) {
            first_extra_line = tok.line();
            first_extra_column = tok.column();
        }
    }
    if (found != expected) {
        throw ParseError("expected " + std::to_string(expected) + " values but found " +
                             std::to_string(found),
                         first_extra_line ? first_extra_line : tok.current_line(),
                         first_extra_line ? first_extra_column : 1);
    }
    return grid;
}

void write_tensor(const Grid& grid, std::ostream& out) {
    out << "dt-tensor " << grid.extents.size();
    for (auto e : grid.extents) out << ' ' << e;
    out << '\n';
    const std::size_t row =
        static_cast<std::size_t>(grid.extents.back());
    for (std::size_t i = 0; i < grid.data.size(); ++i) {
        out << format_real(grid.data[i]);
        out << ((i % row == row - 1) ? '\n' : ' ');
    }
    if (!out) throw InputError("stream write failure");
}

Grid read_csv_2d(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // skip blank lines (trailing newline etc.)
        bool blank = true;
        for (char c : line) {
            if (!is_space(c)) blank = false;
        }
        if (blank) continue;

        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            std::size_t end = comma == std::string::npos ? line.size() : comma;
            std::size_t a = start, b = end;
            while (a < b && is_space(line[a])) ++a;
            while (b > a && is_space(line[b - 1])) --b;
            row.push_back(parse_real(std::string_view(line).substr(a, b - a), line_no,
                                     static_cast<int>(a) + 1));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError("row " + std::to_string(rows.size() + 1) + " has " +
                                 std::to_string(row.size()) + " values, expected " +
                                 std::to_string(rows.front().size()),
                             line_no, 1);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("empty csv input", 1, 1);

    Grid grid;
    grid.extents = {static_cast<std::int64_t>(rows.size()),
                    static_cast<std::int64_t>(rows.front().size())};
    grid.data.reserve(rows.size() * rows.front().size());
    for (const auto& row : rows) {
        grid.data.insert(grid.data.end(), row.begin(), row.end());
    }
    return grid;
}

void write_csv_2d(const Grid& grid, std::ostream& out) {
    if (grid.rank() != 2) {
        throw ParamError("csv output requires a rank-2 grid (got rank " +
                         std::to_string(grid.rank()) + ")");
    }
    const std::size_t cols = static_cast<std::size_t>(grid.extents[1]);
    for (std::size_t i = 0; i < grid.data.size(); ++i) {
        out << format_real(grid.data[i]);
        out << ((i % cols == cols - 1) ? '\n' : ',');
    }
    if (!out) throw InputError("stream write failure");
}

std::string format_real(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

}  // namespace quaddt
