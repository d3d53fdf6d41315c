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

// Downloading parallel corpora (OPUS-style Moses zips or pairs of plain or
// gzipped text files) into an on-disk cache keyed by URL hash.

#pragma once

#include <httplib.h>
#include <zlib.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ladino/corpus.hpp"
#include "ladino/error.hpp"
#include "ladino/text_io.hpp"

namespace ladino {

/// Receives successive chunks of a download.
using ByteSink = std::function<void(std::string_view)>;

/// Fetches `url` starting at byte `offset`. Implementations throw FetchError;
/// a retryable one means a later call may succeed.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void get(const std::string& url, std::uint64_t offset, const ByteSink& sink) = 0;
};

namespace detail {

inline bool has_prefix(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

inline std::string local_path(const std::string& url) {
  return has_prefix(url, "file://") ? url.substr(7) : url;
}

}  // namespace detail

/// `file://` URLs and bare paths.
class FileTransport : public Transport {
 public:
  void get(const std::string& url, std::uint64_t offset, const ByteSink& sink) override {
    const std::string path = detail::local_path(url);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FetchError("cannot open " + path, false);
    in.seekg(static_cast<std::streamoff>(offset));
    std::vector<char> buf(1 << 16);
    while (in) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      if (in.gcount() > 0) sink(std::string_view(buf.data(), static_cast<std::size_t>(in.gcount())));
    }
  }
};

/// http:// and https:// via cpp-httplib, resuming with a Range header.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(int timeout_seconds = 60) : timeout_(timeout_seconds) {}

  void get(const std::string& url, std::uint64_t offset, const ByteSink& sink) override {
    const auto scheme_end = url.find("://");
    const auto path_start = url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    if (scheme_end == std::string::npos) throw FetchError("not an http URL: " + url, false);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    httplib::Headers headers;
    if (offset > 0) headers.emplace("Range", "bytes=" + std::to_string(offset) + "-");

    int status = 0;
    std::uint64_t skip = 0;
    auto res = client.Get(
        path, headers,
        [&](const httplib::Response& r) {
          status = r.status;
          // A server ignoring Range sends the whole body; drop what we have.
          if (offset > 0 && r.status == 200) skip = offset;
          return r.status == 200 || r.status == 206;
        },
        [&](const char* data, std::size_t n) {
          std::string_view chunk(data, n);
          if (skip > 0) {
            const auto drop = static_cast<std::size_t>(std::min<std::uint64_t>(skip, n));
            chunk.remove_prefix(drop);
            skip -= drop;
          }
          if (!chunk.empty()) sink(chunk);
          return true;
        });
    if (status == 416) return;  // already complete
    if (status != 0 && status != 200 && status != 206)
      throw FetchError("GET " + url + " returned HTTP " + std::to_string(status), status >= 500 || status == 429);
    if (!res) throw FetchError("GET " + url + " failed: " + httplib::to_string(res.error()), true);
  }

 private:
  int timeout_;
};

/// Dispatches on the URL scheme.
class DefaultTransport : public Transport {
 public:
  void get(const std::string& url, std::uint64_t offset, const ByteSink& sink) override {
    if (detail::has_prefix(url, "http://") || detail::has_prefix(url, "https://"))
      http_.get(url, offset, sink);
    else
      file_.get(url, offset, sink);
  }

 private:
  FileTransport file_;
  HttpTransport http_;
};

// ---------------------------------------------------------------------------
// Archives

namespace detail {

inline std::uint32_t rd16(const std::string& b, std::size_t at) {
  return static_cast<std::uint8_t>(b[at]) | static_cast<std::uint8_t>(b[at + 1]) << 8;
}
inline std::uint32_t rd32(const std::string& b, std::size_t at) {
  return rd16(b, at) | rd16(b, at + 2) << 16;
}

// window_bits: -15 raw deflate, 15 + 16 gzip (concatenated members allowed).
inline std::string inflate_bytes(std::string_view in, int window_bits, std::size_t size_hint = 0) {
  z_stream zs{};
  if (inflateInit2(&zs, window_bits) != Z_OK) throw Error("zlib initialisation failed");
  std::string out;
  out.reserve(size_hint ? size_hint : in.size() * 4);
  std::vector<char> buf(1 << 16);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  for (;;) {
    zs.next_out = reinterpret_cast<Bytef*>(buf.data());
    zs.avail_out = static_cast<uInt>(buf.size());
    const int rc = inflate(&zs, Z_NO_FLUSH);
    out.append(buf.data(), buf.size() - zs.avail_out);
    if (rc == Z_STREAM_END) {
      if (window_bits > 15 && zs.avail_in > 0 && inflateReset(&zs) == Z_OK) continue;
      break;
    }
    if (rc != Z_OK || (zs.avail_in == 0 && zs.avail_out != 0)) {
      inflateEnd(&zs);
      throw Error(rc == Z_OK || rc == Z_BUF_ERROR ? "truncated compressed data" : "corrupt compressed data");
    }
  }
  inflateEnd(&zs);
  return out;
}

}  // namespace detail

inline bool is_gzip(std::string_view bytes) {
  return bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
         static_cast<unsigned char>(bytes[1]) == 0x8b;
}

inline std::string gunzip(std::string_view bytes) { return detail::inflate_bytes(bytes, 15 + 16); }

struct ZipEntry {
  std::string name;
  std::uint16_t method = 0;
  std::uint32_t compressed_size = 0;
  std::uint32_t size = 0;
  std::uint32_t local_offset = 0;
};

/// Reads a (non-zip64) zip archive held in memory. Stored and deflated
/// members are supported.
class ZipReader {
 public:
  explicit ZipReader(std::string bytes) : bytes_(std::move(bytes)) {
    const std::size_t n = bytes_.size();
    if (n < 22) throw Error("not a zip archive");
    std::size_t eocd = std::string::npos;
    const std::size_t lowest = n > 22 + 65535 ? n - 22 - 65535 : 0;
    for (std::size_t i = n - 22 + 1; i-- > lowest;) {
      if (detail::rd32(bytes_, i) == 0x06054b50) {
        eocd = i;
        break;
      }
    }
    if (eocd == std::string::npos) throw Error("not a zip archive (no end of central directory)");
    const std::size_t count = detail::rd16(bytes_, eocd + 10);
    std::size_t at = detail::rd32(bytes_, eocd + 16);
    for (std::size_t k = 0; k < count; ++k) {
      if (at + 46 > n || detail::rd32(bytes_, at) != 0x02014b50) throw Error("corrupt zip central directory");
      ZipEntry e;
      e.method = static_cast<std::uint16_t>(detail::rd16(bytes_, at + 10));
      e.compressed_size = detail::rd32(bytes_, at + 20);
      e.size = detail::rd32(bytes_, at + 24);
      const std::size_t name_len = detail::rd16(bytes_, at + 28);
      const std::size_t extra_len = detail::rd16(bytes_, at + 30);
      const std::size_t comment_len = detail::rd16(bytes_, at + 32);
      e.local_offset = detail::rd32(bytes_, at + 42);
      if (e.compressed_size == 0xFFFFFFFF || e.local_offset == 0xFFFFFFFF)
        throw Error("zip64 archives are not supported");
      e.name = bytes_.substr(at + 46, name_len);
      entries_.push_back(std::move(e));
      at += 46 + name_len + extra_len + comment_len;
    }
  }

  const std::vector<ZipEntry>& entries() const noexcept { return entries_; }

  std::string extract(const ZipEntry& e) const {
    const std::size_t at = e.local_offset;
    if (at + 30 > bytes_.size() || detail::rd32(bytes_, at) != 0x04034b50) throw Error("corrupt zip entry " + e.name);
    const std::size_t data = at + 30 + detail::rd16(bytes_, at + 26) + detail::rd16(bytes_, at + 28);
    if (data + e.compressed_size > bytes_.size()) throw Error("truncated zip entry " + e.name);
    const std::string_view raw(bytes_.data() + data, e.compressed_size);
    if (e.method == 0) return std::string(raw);
    if (e.method == 8) return detail::inflate_bytes(raw, -15, e.size);
    throw Error("unsupported zip compression method " + std::to_string(e.method) + " in " + e.name);
  }

 private:
  std::string bytes_;
  std::vector<ZipEntry> entries_;
};

// ---------------------------------------------------------------------------
// Cache

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// $LADINO_CACHE_DIR, else ~/.cache/ladino, else ./.ladino-cache.
inline std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("LADINO_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "ladino";
  return ".ladino-cache";
}

struct FetchOptions {
  std::string src_lang;          // empty: inferred from archive member names
  std::string tgt_lang;
  std::string name;              // corpus name; defaults to the archive stem
  std::optional<std::size_t> head;  // keep only the first N pairs
  int max_attempts = 3;
};

/// Downloads `url` into `cache_dir` unless already cached; returns the file.
/// Interrupted downloads leave a `.part` file that the next attempt resumes.
inline std::filesystem::path cached_download(const std::string& url, const std::filesystem::path& cache_dir,
                                             Transport& transport, int max_attempts = 3) {
  static std::mutex cache_mutex;
  const std::lock_guard lock(cache_mutex);

  char key[17];
  std::snprintf(key, sizeof key, "%016llx", static_cast<unsigned long long>(fnv1a64(url)));
  std::string base = url.substr(url.find_last_of('/') + 1);
  if (const auto q = base.find('?'); q != std::string::npos) base.resize(q);
  const auto final_path = cache_dir / (std::string(key) + "-" + base);
  if (std::filesystem::exists(final_path)) return final_path;

  std::filesystem::create_directories(cache_dir);
  auto part = final_path;
  part += ".part";
  for (int attempt = 1;; ++attempt) {
    const std::uint64_t offset = std::filesystem::exists(part) ? std::filesystem::file_size(part) : 0;
    std::ofstream out(part, std::ios::binary | std::ios::app);
    if (!out) throw FetchError("cannot write " + part.string(), false);
    try {
      transport.get(url, offset, [&](std::string_view chunk) {
        out.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
        if (!out) throw FetchError("write failed on " + part.string(), false);
      });
      out.close();
      std::filesystem::rename(part, final_path);
      return final_path;
    } catch (const FetchError& e) {
      out.close();
      if (!e.retryable() || attempt >= max_attempts) throw;
    }
  }
}

namespace detail {

inline std::vector<std::string> decoded_lines(std::string bytes) {
  if (is_gzip(bytes)) bytes = gunzip(bytes);
  return text::split_lines(bytes);
}

inline ParallelCorpus finish_corpus(std::vector<std::string> src, std::vector<std::string> tgt,
                                    const std::string& src_name, const std::string& tgt_name,
                                    const FetchOptions& opt, std::string name) {
  if (src.size() != tgt.size())
    throw AlignmentError(src_name + " and " + tgt_name + " have different line counts", src.size(), tgt.size());
  if (opt.head && *opt.head < src.size()) {
    src.resize(*opt.head);
    tgt.resize(*opt.head);
  }
  return make_corpus(opt.name.empty() ? std::move(name) : opt.name, opt.src_lang, opt.tgt_lang, src, tgt);
}

// "Tatoeba.en-es.en" -> {"Tatoeba", "en", "es", "en"}
struct MosesName {
  std::string stem, a, b, side;
};

inline std::optional<MosesName> parse_moses_name(std::string name) {
  name = name.substr(name.find_last_of('/') + 1);
  const auto last = name.rfind('.');
  if (last == std::string::npos || last == 0) return std::nullopt;
  const auto prev = name.rfind('.', last - 1);
  if (prev == std::string::npos) return std::nullopt;
  const std::string pair = name.substr(prev + 1, last - prev - 1);
  const auto dash = pair.find('-');
  if (dash == std::string::npos) return std::nullopt;
  MosesName m{name.substr(0, prev), pair.substr(0, dash), pair.substr(dash + 1), name.substr(last + 1)};
  if (m.side != m.a && m.side != m.b) return std::nullopt;
  return m;
}

}  // namespace detail

/// Fetches a Moses zip archive and loads the side pair it contains.
inline ParallelCorpus fetch_corpus(const std::string& url, const std::filesystem::path& cache_dir,
                                   FetchOptions opt, Transport& transport) {
  const auto path = cached_download(url, cache_dir, transport, opt.max_attempts);
  const ZipReader zip(text::read_file(path));
  const ZipEntry* src = nullptr;
  const ZipEntry* tgt = nullptr;
  std::string stem;
  for (const auto& e : zip.entries()) {
    const auto m = detail::parse_moses_name(e.name);
    if (!m) continue;
    if (opt.src_lang.empty() && opt.tgt_lang.empty()) {
      opt.src_lang = m->a;
      opt.tgt_lang = m->b;
    }
    if (m->side == opt.src_lang && !src) src = &e, stem = m->stem;
    else if (m->side == opt.tgt_lang && !tgt) tgt = &e;
  }
  if (!src || !tgt)
    throw Error(url + " has no Moses files for " + opt.src_lang + "-" + opt.tgt_lang);
  return detail::finish_corpus(detail::decoded_lines(zip.extract(*src)), detail::decoded_lines(zip.extract(*tgt)),
                               src->name, tgt->name, opt, stem);
}

/// Fetches two aligned side files (plain or gzipped).
inline ParallelCorpus fetch_corpus(const std::string& src_url, const std::string& tgt_url,
                                   const std::filesystem::path& cache_dir, FetchOptions opt,
                                   Transport& transport) {
  const auto src_path = cached_download(src_url, cache_dir, transport, opt.max_attempts);
  const auto tgt_path = cached_download(tgt_url, cache_dir, transport, opt.max_attempts);
  if (const auto m = detail::parse_moses_name(src_url); m && opt.src_lang.empty()) {
    opt.src_lang = m->side;
    opt.tgt_lang = m->side == m->a ? m->b : m->a;
  }
  const auto m = detail::parse_moses_name(src_url);
  return detail::finish_corpus(detail::decoded_lines(text::read_file(src_path)),
                               detail::decoded_lines(text::read_file(tgt_path)), src_url, tgt_url, opt,
                               m ? m->stem : "fetched");
}

}  // namespace ladino
