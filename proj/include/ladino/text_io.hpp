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

// Plain-text file plumbing shared by every loader: UTF-8 LF text, optional
// BOM, tab-separated data files with `#` comments.

#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ladino/error.hpp"
#include "ladino/utf8.hpp"

namespace ladino::text {

inline constexpr std::string_view kBom = "\xEF\xBB\xBF";

inline std::string_view strip_bom(std::string_view s) {
  return utf8::starts_with(s, kBom) ? s.substr(kBom.size()) : s;
}

inline std::string_view trim(std::string_view s) {
  const auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

/// Splits on runs of ASCII spaces; never yields empty pieces.
inline std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

/// Splits text into LF-terminated lines. A trailing CR is dropped from each
/// line and a final newline does not produce an extra empty line.
inline std::vector<std::string> split_lines(std::string_view s) {
  s = strip_bom(s);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t pos = s.find('\n', start);
    if (pos == std::string_view::npos) pos = s.size();
    std::string_view line = s.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(line);
    start = pos + 1;
  }
  return out;
}

inline std::string read_stream(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return read_stream(in);
}

/// Reads a UTF-8 text file as lines; invalid UTF-8 is reported by line.
inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  auto lines = split_lines(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!utf8::valid(lines[i])) throw ParseError(path.string(), i + 1, "invalid UTF-8");
  }
  return lines;
}

inline void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& line : lines) out << line << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

struct TsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Parses a tab-separated data file. Blank lines and lines whose first
/// non-space character is `#` are skipped. Invalid UTF-8 fails with the line.
inline std::vector<TsvRow> parse_tsv(std::string_view content, const std::string& source) {
  std::vector<TsvRow> rows;
  const auto lines = split_lines(content);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& raw = lines[i];
    if (!utf8::valid(raw)) throw ParseError(source, i + 1, "invalid UTF-8");
    const std::string_view t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    std::string_view line = raw;
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.remove_suffix(1);
    rows.push_back({i + 1, split(line, '\t')});
  }
  return rows;
}

inline std::vector<TsvRow> parse_tsv(std::istream& in, const std::string& source) {
  return parse_tsv(read_stream(in), source);
}

}  // namespace ladino::text
