// Copyright 2026 The ks2 Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Tabular output. Numbers go through std::to_chars, so the text does not
// depend on the C or C++ locale.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ks2/lattice_types.hpp"

namespace ks2 {

enum class Format { csv, tsv, pretty };

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "tsv") return Format::tsv;
  if (s == "pretty") return Format::pretty;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

inline constexpr int kSignificantDigits = 7;

/// Shortest of fixed/scientific with `digits` significant digits; values
/// below 1e-4 in magnitude always come out in scientific notation.
inline std::string format_number(double x, int digits = kSignificantDigits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, digits);
  if (ec != std::errc()) throw std::runtime_error("format_number: overflow");
  return std::string(buf, ptr);
}

inline std::string format_int(std::int64_t v) { return std::to_string(v); }

/// Ordered (name, formatted value) pairs making up one output record.
struct OutputRow {
  std::vector<std::pair<std::string, std::string>> columns;

  OutputRow& add(std::string name, std::string value) {
    columns.emplace_back(std::move(name), std::move(value));
    return *this;
  }
  OutputRow& add(std::string name, double value) {
    return add(std::move(name), format_number(value));
  }
  OutputRow& add(std::string name, std::int64_t value) {
    return add(std::move(name), format_int(value));
  }
  OutputRow& add(std::string name, const Fraction& value) {
    return add(std::move(name), value.to_string());
  }
};

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Rows sharing one header, written as csv, tsv, or aligned text.
class Table {
 public:
  void push(const OutputRow& row) {
    if (header_.empty()) {
      for (const auto& [name, _] : row.columns) header_.push_back(name);
    } else if (row.columns.size() != header_.size()) {
      throw std::logic_error("Table: row width differs from header");
    }
    std::vector<std::string> cells;
    for (const auto& [_, value] : row.columns) cells.push_back(value);
    rows_.push_back(std::move(cells));
  }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& os, Format format) const {
    switch (format) {
      case Format::csv: write_delimited(os, ','); break;
      case Format::tsv: write_delimited(os, '\t'); break;
      case Format::pretty: write_pretty(os); break;
    }
  }

 private:
  void write_delimited(std::ostream& os, char sep) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << sep;
        os << (sep == ',' ? detail::csv_field(cells[i]) : cells[i]);
      }
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

  void write_pretty(std::ostream& os) const {
    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) width[c] = header_[c].size();
    for (const auto& r : rows_) {
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) os << "  ";
        os << std::string(width[c] - cells[c].size(), ' ') << cells[c];
      }
      os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, LF or CRLF.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      out.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw std::invalid_argument("parse_csv: unterminated quote");
  if (any) {
    row.push_back(std::move(field));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ks2
