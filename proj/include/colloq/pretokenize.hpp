// Copyright 2026 The colloq Authors.
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

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace colloq {

namespace detail {

// ASCII symbols that always split off as single-character tokens:
// ! " # $ % & ( ) * + / : ; < = > ? @ [ \ ] ^ _ ` { | } ~
// Apostrophe and hyphen never split; period and comma are handled
// separately (kept only between digits).
inline bool splits_always_13a(unsigned char c) {
    return (c >= 0x21 && c <= 0x26) || (c >= 0x28 && c <= 0x2B) || c == 0x2F ||
           (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

inline bool is_ascii_digit(unsigned char c) { return c >= '0' && c <= '9'; }

}  // namespace detail

// Deterministic punctuation-splitting pre-tokenizer for scoring, in the
// style of the classic mteval v13a rules:
//   - the ASCII symbols listed above become their own tokens;
//   - '.' and ',' split off unless both neighbours are ASCII digits,
//     so "3.5" survives but "Mr." becomes "Mr ." ;
//   - apostrophes, hyphens and all non-ASCII bytes are left in place;
//   - any whitespace run separates tokens.
inline std::vector<std::string> pretokenize_13a_style(std::string_view line) {
    std::string spaced;
    spaced.reserve(line.size() * 2);
    for (std::size_t i = 0; i < line.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(line[i]);
        bool split = detail::splits_always_13a(c);
        if (!split && (c == '.' || c == ',')) {
            const bool digit_before = i > 0 && detail::is_ascii_digit(static_cast<unsigned char>(line[i - 1]));
            const bool digit_after =
                i + 1 < line.size() && detail::is_ascii_digit(static_cast<unsigned char>(line[i + 1]));
            split = !(digit_before && digit_after);
        }
        if (split) {
            spaced.push_back(' ');
            spaced.push_back(static_cast<char>(c));
            spaced.push_back(' ');
        } else {
            spaced.push_back(static_cast<char>(c));
        }
    }

    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < spaced.size()) {
        while (i < spaced.size() && std::isspace(static_cast<unsigned char>(spaced[i]))) ++i;
        std::size_t j = i;
        while (j < spaced.size() && !std::isspace(static_cast<unsigned char>(spaced[j]))) ++j;
        if (j > i) tokens.push_back(spaced.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace colloq
