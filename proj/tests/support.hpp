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


// Shared helpers for the unit and acceptance tests.

#pragma once

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "ladino/text_io.hpp"
#include "ladino/translator.hpp"

namespace ladino::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(LADINO_FIXTURE_DIR) / name;
}

inline const RuleData& shipped_data() {
  static const RuleData data = load_rule_data(std::filesystem::path(LADINO_DEFAULT_DATA_DIR));
  return data;
}

/// Removed with its contents on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "ladino-test-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw Error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

/// 64-bit FNV-1a, for pinning and comparing outputs.
inline std::uint64_t digest(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t digest(const std::vector<std::string>& lines) {
  std::string all;
  for (const auto& l : lines) all += l + '\n';
  return digest(all);
}

inline const std::vector<std::string>& golden_spanish() {
  static const std::vector<std::string> lines = text::read_lines(fixture("golden.spa"));
  return lines;
}

inline const std::vector<std::string>& golden_ladino() {
  static const std::vector<std::string> lines = text::read_lines(fixture("golden.lad"));
  return lines;
}

}  // namespace ladino::testing
