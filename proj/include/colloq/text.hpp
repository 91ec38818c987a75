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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "colloq/detail/utf8.hpp"
#include "colloq/errors.hpp"

namespace colloq {

enum class TokenKind { word, punctuation };

// Detokenization hint: which neighbour a punctuation token glues to.
// Word tokens are always `none`.
enum class Attach { none, left, right };

struct Token {
    std::string surface;
    TokenKind kind = TokenKind::word;
    Attach attach = Attach::none;

    bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

enum class CasingPattern { all_lower, initial_capital, all_caps, mixed };

inline Token make_word(std::string surface) { return Token{std::move(surface), TokenKind::word, Attach::none}; }

inline Token make_punct(std::string surface, Attach attach = Attach::none) {
    return Token{std::move(surface), TokenKind::punctuation, attach};
}

// Whitespace-splitting tokenizer. Each whitespace-delimited chunk yields
// at most three tokens: a maximal run of leading symbols, the word core
// (first through last letter/digit, internal symbols kept inside), and a
// maximal run of trailing symbols. Chunks with no letter/digit become a
// single standalone punctuation token. Whitespace runs collapse, so the
// output is identical for any whitespace normalization of the input.
inline Sentence tokenize(std::string_view text) {
    Sentence out;
    const std::vector<std::uint32_t> cps = detail::decode_all(text);
    std::size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && detail::is_space_char(cps[i])) ++i;
        std::size_t j = i;
        while (j < cps.size() && !detail::is_space_char(cps[j])) ++j;
        if (i == j) break;
        // Chunk is cps[i, j).
        std::size_t first = i;
        while (first < j && !detail::is_word_char(cps[first])) ++first;
        if (first == j) {
            out.push_back(make_punct(detail::encode_all({cps.begin() + i, cps.begin() + j})));
        } else {
            std::size_t last = j;  // one past the last word char
            while (last > first && !detail::is_word_char(cps[last - 1])) --last;
            if (first > i)
                out.push_back(make_punct(detail::encode_all({cps.begin() + i, cps.begin() + first}), Attach::right));
            out.push_back(make_word(detail::encode_all({cps.begin() + first, cps.begin() + last})));
            if (last < j)
                out.push_back(make_punct(detail::encode_all({cps.begin() + last, cps.begin() + j}), Attach::left));
        }
        i = j;
    }
    return out;
}

// Inverse of tokenize up to whitespace normalization: words are joined
// by single spaces, left-attaching punctuation glues to the previous
// token and right-attaching punctuation to the next one.
inline std::string detokenize(const Sentence& sentence) {
    std::string out;
    bool prev_attaches_right = false;
    for (const Token& tok : sentence) {
        if (!out.empty() && tok.attach != Attach::left && !prev_attaches_right) out.push_back(' ');
        out += tok.surface;
        prev_attaches_right = (tok.attach == Attach::right);
    }
    return out;
}

// Classifies a word token by its cased letters; code points without a
// case (digits, symbols, combining marks) are ignored, so "Ab1" and
// "A1b" both read as initial-capital. Words with no cased letters at
// all count as all-lower, which makes apply_casing a no-op for them.
inline CasingPattern classify_casing(const Token& word) {
    if (word.kind != TokenKind::word)
        throw ValidationError("classify_casing: punctuation token '" + word.surface + "'");
    const std::vector<std::uint32_t> cps = detail::decode_all(word.surface);
    std::size_t cased = 0, upper = 0;
    bool first_cased_is_upper = false;
    bool tail_all_lower = true;
    for (const std::uint32_t cp : cps) {
        if (!detail::is_cased_cp(cp)) continue;
        const bool up = detail::is_upper_cp(cp);
        if (cased == 0)
            first_cased_is_upper = up;
        else if (up)
            tail_all_lower = false;
        ++cased;
        if (up) ++upper;
    }
    if (upper == 0) return CasingPattern::all_lower;
    if (upper == cased) return cased == 1 ? CasingPattern::initial_capital : CasingPattern::all_caps;
    if (first_cased_is_upper && tail_all_lower) return CasingPattern::initial_capital;
    return CasingPattern::mixed;
}

// Re-applies a casing pattern to an all-lowercase replacement word.
// all_lower and mixed leave the replacement unchanged.
inline std::string apply_casing(CasingPattern pattern, std::string_view replacement) {
    switch (pattern) {
        case CasingPattern::all_lower:
        case CasingPattern::mixed:
            return std::string(replacement);
        case CasingPattern::all_caps: {
            std::string out;
            out.reserve(replacement.size());
            std::size_t pos = 0;
            while (pos < replacement.size())
                detail::encode_utf8(detail::to_upper_cp(detail::decode_utf8(replacement, pos)), out);
            return out;
        }
        case CasingPattern::initial_capital: {
            std::string out;
            out.reserve(replacement.size());
            std::size_t pos = 0;
            bool done = false;
            while (pos < replacement.size()) {
                std::uint32_t cp = detail::decode_utf8(replacement, pos);
                if (!done && detail::is_cased_cp(cp)) {
                    cp = detail::to_upper_cp(cp);
                    done = true;
                }
                detail::encode_utf8(cp, out);
            }
            return out;
        }
    }
    return std::string(replacement);
}

inline std::string lowercase(std::string_view s) { return detail::lowercase(s); }

inline std::size_t count_word_tokens(const Sentence& sentence) {
    std::size_t n = 0;
    for (const Token& t : sentence)
        if (t.kind == TokenKind::word) ++n;
    return n;
}

}  // namespace colloq
