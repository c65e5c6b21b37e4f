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

#include "viperkit/standard_set.hpp"

#include "viperkit/error.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

bool is_ascii_punctuation(char32_t cp) {
  return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
         (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
}

bool is_whitespace(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

StandardSet::StandardSet(std::set<char32_t> members) : members_(std::move(members)) {}

StandardSet StandardSet::letters_and_punctuation() {
  std::set<char32_t> m;
  for (char32_t c = 'a'; c <= 'z'; ++c) m.insert(c);
  for (char32_t c = 'A'; c <= 'Z'; ++c) m.insert(c);
  for (char32_t c = 0x21; c < 0x7F; ++c)
    if (is_ascii_punctuation(c)) m.insert(c);
  return StandardSet(std::move(m));
}

StandardSet StandardSet::default_set() {
  StandardSet s = letters_and_punctuation();
  for (char32_t c = '0'; c <= '9'; ++c) s.members_.insert(c);
  s.members_.insert(U' ');
  return s;
}

StandardSet StandardSet::from_name(std::string_view name) {
  if (name == "default") return default_set();
  if (name == "letters-punct") return letters_and_punctuation();
  if (name.starts_with("chars:")) {
    const std::u32string cps = utf8::decode(name.substr(6));
    if (cps.empty()) throw Error("empty standard set");
    return StandardSet(std::set<char32_t>(cps.begin(), cps.end()));
  }
  throw Error("unknown standard set '" + std::string(name) +
              "' (expected default, letters-punct or chars:...)");
}

std::vector<char32_t> StandardSet::targets() const {
  std::vector<char32_t> out;
  for (char32_t c : members_)
    if (!is_whitespace(c)) out.push_back(c);
  return out;
}

}  // namespace viperkit
