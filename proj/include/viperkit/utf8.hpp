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

#include <string>
#include <string_view>

namespace viperkit::utf8 {

inline constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes UTF-8; invalid or truncated sequences become U+FFFD.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

// Decodes exactly one code point; throws viperkit::Error otherwise.
char32_t decode_single(std::string_view bytes);

}  // namespace viperkit::utf8
