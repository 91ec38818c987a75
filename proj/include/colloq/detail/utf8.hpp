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

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "colloq/detail/unicode_data.hpp"

namespace colloq::detail {

inline constexpr std::uint32_t kReplacementChar = 0xFFFD;

// Decodes one code point starting at `pos`, advancing `pos` past it.
// Malformed bytes decode to U+FFFD one byte at a time, so decoding is
// total and never stalls.
inline std::uint32_t decode_utf8(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
    const unsigned char b0 = byte(pos);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (b0 < 0x80) {
        pos += 1;
        return b0;
    } else if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        pos += 1;
        return kReplacementChar;
    }
    if (pos + len > s.size()) {
        pos += 1;
        return kReplacementChar;
    }
    for (std::size_t i = 1; i < len; ++i) {
        const unsigned char b = byte(pos + i);
        if ((b & 0xC0) != 0x80) {
            pos += 1;
            return kReplacementChar;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms and surrogates.
    static constexpr std::uint32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinByLen[len] || (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
        pos += 1;
        return kReplacementChar;
    }
    pos += len;
    return cp;
}

inline void encode_utf8(std::uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::vector<std::uint32_t> decode_all(std::string_view s) {
    std::vector<std::uint32_t> cps;
    cps.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) cps.push_back(decode_utf8(s, pos));
    return cps;
}

inline std::string encode_all(const std::vector<std::uint32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (const std::uint32_t cp : cps) encode_utf8(cp, out);
    return out;
}

template <std::size_t N>
inline bool in_ranges(const CodepointRange (&ranges)[N], std::uint32_t cp) {
    const auto* end = std::end(ranges);
    const auto* it = std::upper_bound(std::begin(ranges), end, cp,
                                      [](std::uint32_t v, const CodepointRange& r) { return v < r.lo; });
    return it != std::begin(ranges) && cp <= (it - 1)->hi;
}

// Word characters are Unicode letters and numbers; everything else
// counts as a symbol for tokenization purposes.
inline bool is_word_char(std::uint32_t cp) { return in_ranges(kWordRanges, cp); }

inline bool is_space_char(std::uint32_t cp) { return in_ranges(kSpaceRanges, cp); }

template <std::size_t N>
inline std::uint32_t map_case(const CaseMapping (&table)[N], std::uint32_t cp) {
    const auto* end = std::end(table);
    const auto* it = std::lower_bound(std::begin(table), end, cp,
                                      [](const CaseMapping& m, std::uint32_t v) { return m.from < v; });
    return (it != end && it->from == cp) ? it->to : cp;
}

inline std::uint32_t to_lower_cp(std::uint32_t cp) { return map_case(kToLower, cp); }
inline std::uint32_t to_upper_cp(std::uint32_t cp) { return map_case(kToUpper, cp); }

inline bool is_upper_cp(std::uint32_t cp) { return to_lower_cp(cp) != cp; }
inline bool is_lower_cp(std::uint32_t cp) { return to_upper_cp(cp) != cp; }
inline bool is_cased_cp(std::uint32_t cp) { return is_upper_cp(cp) || is_lower_cp(cp); }

inline std::string lowercase(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) encode_utf8(to_lower_cp(decode_utf8(s, pos)), out);
    return out;
}

}  // namespace colloq::detail
