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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ladino {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rule-data or corpus file could not be parsed. Carries the source name
/// and the 1-based line number when one applies (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& what) {
    std::string msg = source.empty() ? std::string("<input>") : source;
    if (line > 0) msg += ":" + std::to_string(line);
    return msg + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

/// Conjugation failed because of the lemma or the paradigm data.
class ConjugationError : public Error {
 public:
  using Error::Error;
};

/// The requested tense lies outside the implemented paradigm grid.
class UnsupportedTenseError : public ConjugationError {
 public:
  using ConjugationError::ConjugationError;
};

/// Two inputs that must stay aligned line-by-line do not.
class AlignmentError : public Error {
 public:
  AlignmentError(const std::string& what, std::size_t left, std::size_t right)
      : Error(what + " (" + std::to_string(left) + " vs " + std::to_string(right) +
              " lines)"),
        left_(left),
        right_(right) {}

  std::size_t left() const noexcept { return left_; }
  std::size_t right() const noexcept { return right_; }

 private:
  std::size_t left_;
  std::size_t right_;
};

/// Download failure. Retryable errors are transient transport faults.
class FetchError : public Error {
 public:
  FetchError(const std::string& what, bool retryable) : Error(what), retryable_(retryable) {}
  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

/// The contribution store could not persist a record. Nothing was kept.
class StorageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ladino
