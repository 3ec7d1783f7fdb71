#include "pcm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "pcm/error.hpp"

namespace pcm {

namespace {

double parse_double(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("invalid number '" + std::string(whole) + "'", 0);
    }
    return v;
}

double decimal_half_width(std::string_view s) {
    const auto dot = s.find('.');
    if (dot == std::string_view::npos) return 0.0;
    int exponent = 0;
    auto mantissa_end = s.find_first_of("eE");
    if (mantissa_end != std::string_view::npos) {
        exponent = static_cast<int>(parse_double(s.substr(mantissa_end + 1), s));
    } else {
        mantissa_end = s.size();
    }
    const auto digits = static_cast<int>(mantissa_end - dot - 1);
    return 0.5 * std::pow(10.0, exponent - digits);
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const auto start = line.find_first_not_of(" \t\r", pos);
        if (start == std::string_view::npos) break;
        auto end = line.find_first_of(" \t\r", start);
        if (end == std::string_view::npos) end = line.size();
        out.push_back(line.substr(start, end - start));
        pos = end;
    }
    return out;
}

}  // namespace

ParsedNumber parse_number(std::string_view token) {
    if (token.empty()) throw ParseError("empty number", 0);
    const auto slash = token.find('/');
    if (slash != std::string_view::npos) {
        const double p = parse_double(token.substr(0, slash), token);
        const double q = parse_double(token.substr(slash + 1), token);
        if (q == 0.0) throw ParseError("zero denominator in '" + std::string(token) + "'", 0);
        return {p / q, 0.0};
    }
    return {parse_double(token, token), decimal_half_width(token)};
}

RawMatrix parse_matrix_text(std::string_view text) {
    std::size_t n = 0;
    bool have_n = false;
    RawMatrix raw;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t rows_read = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        line = line.substr(0, line.find('#'));
        pos = end + 1;
        ++line_no;

        const auto tokens = split_ws(line);
        if (tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }
        try {
            if (!have_n) {
                if (tokens.size() != 1) throw ParseError("first line must hold only the order n", 0);
                const double v = parse_double(tokens.front(), tokens.front());
                if (v < 1 || v != std::floor(v)) throw ParseError("order must be a positive integer", 0);
                n = static_cast<std::size_t>(v);
                have_n = true;
                raw.rows = n;
                raw.cols = n;
                raw.entries.reserve(n * n);
                raw.resolution.reserve(n * n);
            } else {
                if (rows_read == n) {
                    throw NonSquareError(fmt::format("line {}: more than {} matrix rows", line_no, n));
                }
                if (tokens.size() != n) {
                    raw.cols = tokens.size();
                    throw NonSquareError(fmt::format("line {}: row has {} entries, expected {}",
                                                     line_no, tokens.size(), n));
                }
                for (auto tok : tokens) {
                    const auto num = parse_number(tok);
                    raw.entries.push_back(num.value);
                    raw.resolution.push_back(num.half_width);
                }
                ++rows_read;
            }
        } catch (const ParseError& e) {
            if (e.line() != 0) throw;
            throw ParseError(e.what(), line_no);
        }
        if (end == text.size()) break;
    }
    if (!have_n) throw ParseError("missing matrix order", 0);
    if (rows_read != n) {
        throw NonSquareError(fmt::format("expected {} rows, found {}", n, rows_read));
    }
    return raw;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RawMatrix read_matrix_file(const std::filesystem::path& path) {
    return parse_matrix_text(read_text_file(path));
}

PCMatrix load_matrix(const std::filesystem::path& path, const ReciprocityPolicy& policy) {
    return validate(read_matrix_file(path), policy);
}

void write_matrix(std::ostream& out, const PCMatrix& a) {
    out << a.n() << '\n';
    for (std::size_t i = 0; i < a.n(); ++i) {
        for (std::size_t j = 0; j < a.n(); ++j) {
            if (j) out << ' ';
            out << fmt::format("{:.17g}", a(i, j));
        }
        out << '\n';
    }
}

}  // namespace pcm
