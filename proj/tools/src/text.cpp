#include "synchrony/cli/text.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace synchrony::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  return value;
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view item = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    values.push_back(parse_double(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (values.size() == 1) values = {values[0], 0.0, 0.0};
  if (values.size() != 3) throw std::invalid_argument("expected 1 or 3 comma-separated numbers");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("values must be finite");
  return values;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

namespace {

std::string quote_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_line(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += quote_cell(cells[i]);
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::emit() const {
  std::string out;
  emit_line(out, header);
  for (const auto& row : rows) emit_line(out, row);
  return out;
}

CsvTable CsvTable::parse(std::string_view text) {
  std::vector<std::vector<std::string>> lines;
  std::vector<std::string> current;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      current.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      current.push_back(std::move(cell));
      cell.clear();
      lines.push_back(std::move(current));
      current.clear();
      any = false;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw std::invalid_argument("csv: unterminated quoted cell");
  if (any) {
    current.push_back(std::move(cell));
    lines.push_back(std::move(current));
  }
  if (lines.empty()) throw std::invalid_argument("csv: missing header row");

  CsvTable table;
  table.header = std::move(lines.front());
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].size() != table.header.size())
      throw std::invalid_argument("csv: row " + std::to_string(i) + " has " + std::to_string(lines[i].size()) +
                                  " cells, header has " + std::to_string(table.header.size()));
    table.rows.push_back(std::move(lines[i]));
  }
  return table;
}

}  // namespace synchrony::cli
