#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace synchrony::cli {

/// Shortest text that parses back to the same double; integral values keep a
/// trailing ".0" so the column type stays visible.
std::string format_double(double value);

/// Inverse of format_double. Throws std::invalid_argument on malformed text.
double parse_double(std::string_view text);

/// Comma-separated list of 1 or 3 numbers ("0.5" or "0.5,0,0"); a single
/// value fills the x component.
std::vector<double> parse_number_list(std::string_view text);

/// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

/// Header plus rows of string cells. Comma separator, LF line endings, cells
/// quoted only when they contain a comma, quote or newline.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string emit() const;
  static CsvTable parse(std::string_view text);
};

}  // namespace synchrony::cli
