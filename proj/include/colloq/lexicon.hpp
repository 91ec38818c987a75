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

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "colloq/errors.hpp"
#include "colloq/text.hpp"

namespace colloq {

// One formal word mapped to its colloquial variants. Everything is
// lowercased on load; variants keep first-seen order and never contain
// the key itself.
struct LexiconEntry {
    std::string formal;
    std::vector<std::string> variants;

    bool operator==(const LexiconEntry&) const = default;
};

class Lexicon {
public:
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // Case-insensitive exact match on the lowercase form.
    const LexiconEntry* lookup(std::string_view word) const {
        const auto it = entries_.find(lowercase(word));
        return it == entries_.end() ? nullptr : &it->second;
    }

    // Punctuation tokens never match.
    const LexiconEntry* lookup(const Token& token) const {
        if (token.kind != TokenKind::word) return nullptr;
        return lookup(token.surface);
    }

    // Merges variants into the entry for `formal` (both already
    // lowercase), dropping duplicates and variants equal to the key.
    void add(const std::string& formal, const std::vector<std::string>& variants) {
        LexiconEntry& entry = entries_[formal];
        entry.formal = formal;
        for (const std::string& v : variants) {
            if (v == formal) continue;
            bool seen = false;
            for (const std::string& existing : entry.variants) seen = seen || existing == v;
            if (!seen) entry.variants.push_back(v);
        }
    }

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    std::map<std::string, LexiconEntry> entries_;  // ordered for deterministic serialization
};

struct LexiconIssue {
    std::size_t line = 0;
    std::string message;
};

namespace detail {

// A lexicon key or variant must be one word token on its own: no
// whitespace, at least one letter or digit, no detachable punctuation.
inline bool is_single_word(const std::string& s) {
    const Sentence toks = tokenize(s);
    return toks.size() == 1 && toks[0].kind == TokenKind::word && toks[0].surface == s;
}

inline std::vector<std::string> split_commas(const std::string& field) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= field.size()) {
        const std::size_t comma = field.find(',', start);
        const std::size_t end = comma == std::string::npos ? field.size() : comma;
        if (end > start) out.push_back(field.substr(start, end - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Shared parser. With `issues` set, problems are collected and the bad
// lines skipped; otherwise the first problem throws (parse problems as
// FormatError, entries left without variants as ValidationError).
inline Lexicon parse_lexicon(std::istream& in, std::vector<LexiconIssue>* issues) {
    const auto report = [&](std::size_t line, const std::string& msg, bool parse_problem) {
        if (issues) {
            issues->push_back({line, msg});
            return;
        }
        const std::string full = "lexicon line " + std::to_string(line) + ": " + msg;
        if (parse_problem) throw FormatError(full);
        throw ValidationError(full);
    };

    Lexicon lex;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (raw.empty() || raw[0] == '#') continue;
        const std::size_t tab = raw.find('\t');
        if (tab == std::string::npos) {
            report(line_no, "expected '<formal>\\t<variant,...>', no tab found", true);
            continue;
        }
        const std::string key = lowercase(std::string_view(raw).substr(0, tab));
        if (key.empty()) {
            report(line_no, "empty formal key", true);
            continue;
        }
        if (!is_single_word(key)) {
            report(line_no, "formal key '" + key + "' is not a single word", true);
            continue;
        }
        std::vector<std::string> variants;
        bool bad_variant = false;
        for (const std::string& field : split_commas(raw.substr(tab + 1))) {
            const std::string v = lowercase(field);
            if (!is_single_word(v)) {
                report(line_no, "variant '" + v + "' is not a single word", true);
                bad_variant = true;
                break;
            }
            variants.push_back(v);
        }
        if (bad_variant) continue;
        if (variants.empty()) {
            report(line_no, "empty variant list", true);
            continue;
        }
        std::size_t usable = 0;
        for (const std::string& v : variants) usable += (v != key) ? 1 : 0;
        if (usable == 0) {
            report(line_no, "entry for '" + key + "' has no variants distinct from the key", false);
            continue;
        }
        lex.add(key, variants);
    }
    return lex;
}

}  // namespace detail

inline Lexicon load_lexicon(std::istream& in) { return detail::parse_lexicon(in, nullptr); }

inline Lexicon load_lexicon(const std::string& text) {
    std::istringstream in(text);
    return load_lexicon(in);
}

inline Lexicon load_lexicon_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open lexicon file: " + path);
    return load_lexicon(in);
}

// Full-file validation for `dict-validate`: returns every issue instead
// of stopping at the first.
inline std::vector<LexiconIssue> validate_lexicon(std::istream& in) {
    std::vector<LexiconIssue> issues;
    detail::parse_lexicon(in, &issues);
    return issues;
}

// Canonical TSV form: keys in byte order, variants in first-seen order.
// load(serialize(load(x))) == load(x).
inline std::string serialize_lexicon(const Lexicon& lex) {
    std::string out;
    for (const auto& [key, entry] : lex) {
        out += key;
        out.push_back('\t');
        for (std::size_t i = 0; i < entry.variants.size(); ++i) {
            if (i > 0) out.push_back(',');
            out += entry.variants[i];
        }
        out.push_back('\n');
    }
    return out;
}

// Fraction of corpus tokens (punctuation included in the denominator)
// whose lowercase form is a lexicon key. This equals the transformed
// percentage of a saturating threshold=1 augmentation run.
inline double coverage(const Lexicon& lex, const std::vector<Sentence>& corpus) {
    std::size_t total = 0, matched = 0;
    for (const Sentence& s : corpus) {
        total += s.size();
        for (const Token& t : s)
            if (lex.lookup(t) != nullptr) ++matched;
    }
    if (total == 0) throw ValidationError("coverage: corpus has no tokens");
    return static_cast<double>(matched) / static_cast<double>(total);
}

}  // namespace colloq
