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

#include <set>
#include <string_view>
#include <vector>

namespace viperkit {

// The target alphabet of rule-based recovery: characters considered
// "normal" text. Whitespace members pass through unchanged and are never
// used as recovery targets.
class StandardSet {
 public:
  StandardSet() = default;
  explicit StandardSet(std::set<char32_t> members);

  // a-zA-Z, the 32 ASCII punctuation symbols, digits 0-9 and space.
  static StandardSet default_set();
  // a-zA-Z plus the 32 ASCII punctuation symbols only.
  static StandardSet letters_and_punctuation();
  // "default", "letters-punct", or a literal list prefixed with "chars:".
  static StandardSet from_name(std::string_view name);

  bool contains(char32_t cp) const { return members_.count(cp) != 0; }
  const std::set<char32_t>& members() const { return members_; }
  // Members that can be chosen as a recovery target (non-whitespace).
  std::vector<char32_t> targets() const;
  bool empty() const { return members_.empty(); }

 private:
  std::set<char32_t> members_;
};

bool is_ascii_punctuation(char32_t cp);
bool is_whitespace(char32_t cp);

}  // namespace viperkit
