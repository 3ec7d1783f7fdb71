#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pcm/matrix.hpp"

namespace pcm {

/// A parsed numeric token and the half-width of the rounding interval it
/// represents. Integers and fractions (`p/q`) are exact; a decimal with d
/// digits after the point carries 0.5 * 10^-d.
struct ParsedNumber {
    double value = 0.0;
    double half_width = 0.0;
};

/// Parses `12`, `0.4759`, `1e-3` or `p/q`. Throws ParseError.
ParsedNumber parse_number(std::string_view token);

/// Matrix text format: first meaningful line holds n, then n lines of n
/// whitespace-separated tokens. Lines whose first non-blank character is `#`
/// and blank lines are ignored.
RawMatrix parse_matrix_text(std::string_view text);

RawMatrix read_matrix_file(const std::filesystem::path& path);

/// Loads and validates in one step (file default: Strict at kFileTolerance).
PCMatrix load_matrix(const std::filesystem::path& path,
                     const ReciprocityPolicy& policy = ReciprocityPolicy::strict(kFileTolerance));

/// Writes a matrix in the text format with 17 significant digits.
void write_matrix(std::ostream& out, const PCMatrix& a);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace pcm
