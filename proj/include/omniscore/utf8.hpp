// Copyright 2026 The OmniScore Toolkit Authors.
//
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

// Minimal UTF-8 helpers. Invalid sequences decode to U+FFFD one byte at a
// time, so decoding never fails.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace omniscore::utf8 {

std::u32string decode(std::string_view bytes);
void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

// White_Space property code points.
bool is_space(char32_t cp);

// Number of maximal runs of non-whitespace code points.
std::size_t count_words(std::string_view text);

// First `max_code_points` code points of `text`, never splitting a sequence.
std::string truncate(std::string_view text, std::size_t max_code_points);

}  // namespace omniscore::utf8
