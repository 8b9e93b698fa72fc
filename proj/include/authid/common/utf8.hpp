/*
 * Copyright 2026 The authid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace authid::utf8 {

// Decodes UTF-8 into code points; malformed sequences become U+FFFD.
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view cps);
std::string encode(char32_t cp);

bool is_space(char32_t cp) noexcept;

// Byte ranges of maximal non-whitespace runs, in order.
struct WordSpan {
  std::size_t begin;
  std::size_t end;
};
std::vector<WordSpan> word_spans(std::string_view text);

std::size_t length(std::string_view text);

// First `n` code points of `text`.
std::string prefix(std::string_view text, std::size_t n);

}  // namespace authid::utf8
