// Copyright 2026 The viperkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace viperkit {

// "U+XXXX" with at least four hex digits.
inline std::string format_codepoint(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

// Root of every error thrown by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FileNotFound : public Error {
 public:
  explicit FileNotFound(const std::string& path)
      : Error("file not found: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FontLoadError : public Error {
 public:
  using Error::Error;
};

class RenderError : public Error {
 public:
  explicit RenderError(char32_t cp)
      : Error("rasterizer failed for " + format_codepoint(cp)),
        codepoint_(cp) {}
  char32_t codepoint() const noexcept { return codepoint_; }

 private:
  char32_t codepoint_;
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error("cosine similarity of a zero vector is undefined") {}
};

class UnknownCodepoint : public Error {
 public:
  explicit UnknownCodepoint(char32_t cp)
      : Error(format_codepoint(cp) + " is not in the store"),
        codepoint_(cp) {}
  char32_t codepoint() const noexcept { return codepoint_; }

 private:
  char32_t codepoint_;
};

class IncompleteTable : public Error {
 public:
  using Error::Error;
};

class DuplicateKey : public Error {
 public:
  using Error::Error;
};

class EmptyStore : public Error {
 public:
  EmptyStore() : Error("embedding store is empty") {}
};

class EmptyAlphabet : public Error {
 public:
  EmptyAlphabet() : Error("replacement alphabet is empty") {}
};

class CorpusReadError : public Error {
 public:
  using Error::Error;
};

class MissingStandardEmbedding : public Error {
 public:
  explicit MissingStandardEmbedding(char32_t cp)
      : Error("standard character " + format_codepoint(cp) +
              " has no usable embedding"),
        codepoint_(cp) {}
  char32_t codepoint() const noexcept { return codepoint_; }

 private:
  char32_t codepoint_;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  EmptyCorpus() : Error("corpus contains no documents") {}
};

class LabelSchemaMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace viperkit
