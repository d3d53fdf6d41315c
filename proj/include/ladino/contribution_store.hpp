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

// Append-only JSON Lines store for user-corrected translations. One record
// per line; bytes already written are never modified.

#pragma once

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ladino/error.hpp"
#include "ladino/text_io.hpp"

namespace ladino {

/// What a client submits.
struct ContributionDraft {
  std::string source_lang;
  std::string target_lang;
  std::string source_text;
  std::string machine_output;
  std::string corrected_text;
  std::optional<std::string> client_note;
};

struct ContributionRecord {
  std::uint64_t id = 0;
  std::string source_lang;
  std::string target_lang;
  std::string source_text;
  std::string machine_output;
  std::string corrected_text;
  std::string submitted_at;  // ISO 8601 UTC, millisecond precision
  std::optional<std::string> client_note;

  bool operator==(const ContributionRecord&) const = default;
};

inline nlohmann::json to_json(const ContributionRecord& r) {
  return {{"id", r.id},
          {"source_lang", r.source_lang},
          {"target_lang", r.target_lang},
          {"source_text", r.source_text},
          {"machine_output", r.machine_output},
          {"corrected_text", r.corrected_text},
          {"submitted_at", r.submitted_at},
          {"client_note", r.client_note ? nlohmann::json(*r.client_note) : nlohmann::json(nullptr)}};
}

inline ContributionRecord record_from_json(const nlohmann::json& j) {
  ContributionRecord r;
  r.id = j.at("id").get<std::uint64_t>();
  r.source_lang = j.at("source_lang").get<std::string>();
  r.target_lang = j.at("target_lang").get<std::string>();
  r.source_text = j.at("source_text").get<std::string>();
  r.machine_output = j.at("machine_output").get<std::string>();
  r.corrected_text = j.at("corrected_text").get<std::string>();
  r.submitted_at = j.at("submitted_at").get<std::string>();
  if (j.contains("client_note") && !j.at("client_note").is_null())
    r.client_note = j.at("client_note").get<std::string>();
  return r;
}

/// Reason a draft cannot be stored, or nullopt.
inline std::optional<std::string> validate(const ContributionDraft& d) {
  if (d.source_lang.empty()) return "source_lang must be non-empty";
  if (d.target_lang.empty()) return "target_lang must be non-empty";
  if (d.target_lang != "lad") return "target_lang must be \"lad\"";
  if (d.source_text.empty()) return "source_text must be non-empty";
  if (d.corrected_text.empty()) return "corrected_text must be non-empty";
  return std::nullopt;
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
  const std::time_t secs = static_cast<std::time_t>(ms / 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(ms % 1000));
  return buf;
}

/// Escapes a field for one line of a Moses export: `\` -> `\\`, LF -> `\n`,
/// CR -> `\r`.
inline std::string escape_export_line(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string unescape_export_line(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    const char n = s[++i];
    out += n == 'n' ? '\n' : n == 'r' ? '\r' : n;
  }
  return out;
}

struct ContributionExport {
  std::vector<std::string> source;     // escaped source_text, one per record
  std::vector<std::string> corrected;  // escaped corrected_text, aligned
};

class ContributionStore {
 public:
  /// Opens (creating if needed) the store and resumes ids after the largest
  /// one present. Throws ParseError if an existing line is not a record.
  explicit ContributionStore(std::filesystem::path path) : path_(std::move(path)) {
    fd_ = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) throw StorageError("cannot open " + path_.string() + ": " + std::strerror(errno));
    struct stat st {};
    if (::fstat(fd_, &st) == 0 && S_ISREG(st.st_mode)) {
      for (const auto& r : read_records()) last_id_ = std::max(last_id_, r.id);
    }
  }

  ContributionStore(const ContributionStore&) = delete;
  ContributionStore& operator=(const ContributionStore&) = delete;
  ~ContributionStore() {
    if (fd_ >= 0) ::close(fd_);
  }

  const std::filesystem::path& path() const noexcept { return path_; }

  /// Validates, stamps and durably appends one record (write + fsync) before
  /// returning it. On failure the file is cut back to its previous length
  /// and StorageError is thrown. Invalid drafts throw Error.
  ContributionRecord append(const ContributionDraft& draft) {
    if (const auto why = validate(draft)) throw Error(*why);
    const std::lock_guard lock(mutex_);
    ContributionRecord rec{last_id_ + 1,        draft.source_lang,    draft.target_lang,
                           draft.source_text,   draft.machine_output, draft.corrected_text,
                           utc_timestamp(),     draft.client_note};
    const std::string line = to_json(rec).dump() + "\n";

    const off_t before = ::lseek(fd_, 0, SEEK_END);
    std::size_t written = 0;
    while (written < line.size()) {
      const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) return rollback(before, "write failed");
      written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd_) != 0) return rollback(before, "fsync failed");
    last_id_ = rec.id;
    return rec;
  }

  std::vector<ContributionRecord> records() const {
    const std::lock_guard lock(mutex_);
    return read_records();
  }

  std::size_t size() const { return records().size(); }

  ContributionExport export_pairs() const {
    ContributionExport out;
    for (const auto& r : records()) {
      out.source.push_back(escape_export_line(r.source_text));
      out.corrected.push_back(escape_export_line(r.corrected_text));
    }
    return out;
  }

 private:
  [[noreturn]] ContributionRecord rollback(off_t before, const std::string& what) {
    const int err = errno;
    if (before >= 0 && ::ftruncate(fd_, before) != 0) {
      // Not a regular file (or truncation refused); nothing more to undo.
    }
    throw StorageError(what + " on " + path_.string() + ": " + std::strerror(err));
  }

  std::vector<ContributionRecord> read_records() const {
    std::vector<ContributionRecord> out;
    if (!std::filesystem::is_regular_file(path_)) return out;
    const auto content = text::read_file(path_);
    if (!content.empty() && content.back() != '\n')
      throw ParseError(path_.string(), 0, "last record is not newline-terminated");
    std::size_t lineno = 0;
    for (const auto& line : text::split_lines(content)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        out.push_back(record_from_json(nlohmann::json::parse(line)));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(path_.string(), lineno, std::string("malformed record: ") + e.what());
      }
    }
    return out;
  }

  std::filesystem::path path_;
  int fd_ = -1;
  std::uint64_t last_id_ = 0;
  mutable std::mutex mutex_;
};

}  // namespace ladino
