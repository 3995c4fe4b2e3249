#pragma once

// File-format plumbing: 17-significant-digit decimal rendering (bit-stable
// round trips), LF-terminated CSV reading/writing, and pi-literal angle
// parsing for the CLI ("pi/3", "2pi/3", "0.5pi", raw radians).

#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "fibwalk/error.hpp"

namespace fibwalk {

inline std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

inline void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings exactly as written
  if (!out) {
    throw Error(ErrorCode::io_failure, "cannot open for writing: " + path.string());
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) {
    throw Error(ErrorCode::io_failure, "write failed: " + path.string());
  }
}

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of a named column, or fallback when absent (-1 disables fallback).
  int column(std::string_view name, int fallback = -1) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (columns[i] == name) return static_cast<int>(i);
    }
    if (fallback >= 0 && static_cast<std::size_t>(fallback) < columns.size()) return fallback;
    throw Error(ErrorCode::io_failure, "CSV column not found: " + std::string(name));
  }
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(line.substr(start));
      return parts;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline double parse_double(std::string_view text, const std::string& context) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::io_failure, context + ": cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

// Numeric CSV with a header row; \r is tolerated, blank trailing lines skipped.
inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_failure, "cannot open for reading: " + path.string());
  }
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  CsvTable table;
  bool header_done = false;
  for (std::string_view rest = content; !rest.empty();) {
    const std::size_t pos = rest.find('\n');
    std::string_view line = pos == std::string_view::npos ? rest : rest.substr(0, pos);
    rest = pos == std::string_view::npos ? std::string_view{} : rest.substr(pos + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto parts = detail::split(line, ',');
    if (!header_done) {
      for (const auto& part : parts) table.columns.emplace_back(part);
      header_done = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(parts.size());
    for (const auto& part : parts) {
      row.push_back(detail::parse_double(part, path.string()));
    }
    if (row.size() != table.columns.size()) {
      throw Error(ErrorCode::io_failure, path.string() + ": ragged CSV row");
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_done) {
    throw Error(ErrorCode::io_failure, path.string() + ": empty CSV");
  }
  return table;
}

// Accepts raw radians ("0.785", "-1e-3") or pi literals: "pi", "-pi",
// "pi/3", "2pi/3", "0.5pi", "2*pi/5".
inline double parse_angle(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  const std::string_view trimmed = trim(text);
  if (trimmed.empty()) {
    throw Error(ErrorCode::bad_parameter, "parse_angle: empty angle");
  }
  std::string lower(trimmed);
  for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));

  const std::size_t pi_pos = lower.find("pi");
  auto bad = [&] {
    return Error(ErrorCode::bad_parameter, "parse_angle: cannot parse '" + std::string(text) + "'");
  };
  if (pi_pos == std::string::npos) {
    double value = 0.0;
    const auto result = std::from_chars(lower.data(), lower.data() + lower.size(), value);
    if (result.ec != std::errc{} || result.ptr != lower.data() + lower.size()) throw bad();
    return value;
  }

  std::string_view pre = trim(std::string_view(lower).substr(0, pi_pos));
  std::string_view post = trim(std::string_view(lower).substr(pi_pos + 2));
  if (!pre.empty() && pre.back() == '*') pre = trim(pre.substr(0, pre.size() - 1));

  double coefficient = 1.0;
  if (pre == "-") {
    coefficient = -1.0;
  } else if (pre == "+") {
    coefficient = 1.0;
  } else if (!pre.empty()) {
    const auto result = std::from_chars(pre.data(), pre.data() + pre.size(), coefficient);
    if (result.ec != std::errc{} || result.ptr != pre.data() + pre.size()) throw bad();
  }

  double divisor = 1.0;
  if (!post.empty()) {
    if (post.front() != '/') throw bad();
    const std::string_view denom = trim(post.substr(1));
    const auto result = std::from_chars(denom.data(), denom.data() + denom.size(), divisor);
    if (result.ec != std::errc{} || result.ptr != denom.data() + denom.size()) throw bad();
    if (divisor == 0.0) throw bad();
  }
  return coefficient * std::numbers::pi / divisor;
}

}  // namespace fibwalk
