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
#include <fstream>
#include <istream>
#include <queue>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "colloq/detail/utf8.hpp"
#include "colloq/errors.hpp"
#include "colloq/text.hpp"

namespace colloq {

struct MergeRule {
    std::string left;
    std::string right;
    std::string merged;  // left + right

    bool operator==(const MergeRule&) const = default;
};

// Learned byte-pair-encoding model: merge rules in learning order plus
// the end-of-word marker convention. Words are segmented into Unicode
// code points with the marker appended as a separate trailing symbol.
class BpeModel {
public:
    static constexpr std::string_view kEndMarker = "</w>";
    // Continuation suffix on every non-final subword in rendered text.
    static constexpr std::string_view kJoiner = "@@";

    BpeModel() = default;
    explicit BpeModel(std::vector<MergeRule> merges) : merges_(std::move(merges)) {}

    const std::vector<MergeRule>& merges() const { return merges_; }
    std::size_t merge_count() const { return merges_.size(); }

    bool operator==(const BpeModel&) const = default;

private:
    std::vector<MergeRule> merges_;
};

namespace detail {

inline std::vector<std::string> word_symbols(std::string_view word) {
    std::vector<std::string> symbols;
    std::size_t pos = 0;
    while (pos < word.size()) {
        const std::size_t start = pos;
        decode_utf8(word, pos);
        symbols.emplace_back(word.substr(start, pos - start));
    }
    symbols.emplace_back(BpeModel::kEndMarker);
    return symbols;
}

using SymbolPair = std::pair<std::string, std::string>;

struct SymbolPairHash {
    std::size_t operator()(const SymbolPair& p) const {
        const std::size_t h1 = std::hash<std::string>{}(p.first);
        const std::size_t h2 = std::hash<std::string>{}(p.second);
        return h1 ^ (h2 * 0x9E3779B97F4A7C15ULL + (h1 << 6) + (h1 >> 2));
    }
};

// Merges every adjacent (left, right) occurrence. One left-to-right
// pass is exhaustive: the merged symbol is strictly longer than either
// component, so it can never recreate the pair being merged.
inline void merge_in_place(std::vector<std::string>& symbols, const MergeRule& rule) {
    std::vector<std::string> next;
    next.reserve(symbols.size());
    std::size_t i = 0;
    while (i < symbols.size()) {
        if (i + 1 < symbols.size() && symbols[i] == rule.left && symbols[i + 1] == rule.right) {
            next.push_back(rule.merged);
            i += 2;
        } else {
            next.push_back(symbols[i]);
            i += 1;
        }
    }
    symbols = std::move(next);
}

}  // namespace detail

// Greedy BPE learner: repeatedly merge the most frequent adjacent
// symbol pair, weighted by word frequency, until `num_merges` rules are
// learned or no pair occurs at least twice. Frequency ties go to the
// lexicographically smallest (left, right) pair, so learning is fully
// deterministic. Operates on word tokens; punctuation never enters the
// symbol alphabet.
inline BpeModel learn_bpe(const std::vector<Sentence>& corpus, std::size_t num_merges) {
    std::unordered_map<std::string, std::size_t> word_freq;
    for (const Sentence& s : corpus)
        for (const Token& t : s)
            if (t.kind == TokenKind::word) ++word_freq[t.surface];
    if (word_freq.empty()) throw ValidationError("learn_bpe: corpus has no word tokens");

    std::vector<std::vector<std::string>> words;
    std::vector<std::size_t> freqs;
    words.reserve(word_freq.size());
    for (const auto& [word, freq] : word_freq) {
        words.push_back(detail::word_symbols(word));
        freqs.push_back(freq);
    }

    using detail::SymbolPair;
    std::unordered_map<SymbolPair, std::size_t, detail::SymbolPairHash> pair_counts;
    std::unordered_map<SymbolPair, std::unordered_set<std::size_t>, detail::SymbolPairHash> pair_words;

    struct HeapEntry {
        std::size_t count;
        SymbolPair pair;
        // Max-heap on count; on ties the lexicographically smallest
        // pair must surface first, so it compares as the "largest".
        bool operator<(const HeapEntry& other) const {
            if (count != other.count) return count < other.count;
            return pair > other.pair;
        }
    };
    std::priority_queue<HeapEntry> heap;

    const auto add_word_pairs = [&](std::size_t w, bool push_heap) {
        const auto& symbols = words[w];
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
            SymbolPair p{symbols[i], symbols[i + 1]};
            pair_counts[p] += freqs[w];
            pair_words[p].insert(w);
            if (push_heap) heap.push({pair_counts[p], p});
        }
    };
    const auto remove_word_pairs = [&](std::size_t w) {
        const auto& symbols = words[w];
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
            SymbolPair p{symbols[i], symbols[i + 1]};
            auto it = pair_counts.find(p);
            it->second -= freqs[w];
            if (it->second == 0) {
                pair_counts.erase(it);
                pair_words.erase(p);
            } else {
                pair_words[p].erase(w);
                heap.push({it->second, p});
            }
        }
    };

    for (std::size_t w = 0; w < words.size(); ++w) add_word_pairs(w, false);
    for (const auto& [pair, count] : pair_counts) heap.push({count, pair});

    std::vector<MergeRule> merges;
    while (merges.size() < num_merges && !heap.empty()) {
        const HeapEntry top = heap.top();
        heap.pop();
        const auto it = pair_counts.find(top.pair);
        if (it == pair_counts.end() || it->second != top.count) continue;  // stale snapshot
        if (top.count < 2) break;

        const MergeRule rule{top.pair.first, top.pair.second, top.pair.first + top.pair.second};
        merges.push_back(rule);

        const std::unordered_set<std::size_t> affected = pair_words[top.pair];
        for (const std::size_t w : affected) {
            remove_word_pairs(w);
            detail::merge_in_place(words[w], rule);
            add_word_pairs(w, true);
        }
    }
    return BpeModel(std::move(merges));
}

// Segments one word: code points plus the end marker, then every merge
// rule in learned order, each applied exhaustively. Concatenating the
// result and removing the marker reproduces the word exactly.
inline std::vector<std::string> apply_bpe(const BpeModel& model, std::string_view word) {
    std::vector<std::string> symbols = detail::word_symbols(word);
    if (symbols.size() > 1) {
        std::unordered_set<std::string> present(symbols.begin(), symbols.end());
        for (const MergeRule& rule : model.merges()) {
            if (symbols.size() < 2) break;
            if (present.count(rule.left) == 0 || present.count(rule.right) == 0) continue;
            const std::size_t before = symbols.size();
            detail::merge_in_place(symbols, rule);
            if (symbols.size() != before)
                present = std::unordered_set<std::string>(symbols.begin(), symbols.end());
        }
    }
    return symbols;
}

// Renders a word's subword symbols as text: the end marker is stripped
// and every non-final piece carries the "@@" continuation suffix.
inline std::vector<std::string> render_subwords(const std::vector<std::string>& symbols) {
    std::vector<std::string> pieces;
    pieces.reserve(symbols.size());
    for (const std::string& s : symbols) pieces.push_back(s);
    std::string& last = pieces.back();
    if (last == BpeModel::kEndMarker) {
        pieces.pop_back();
    } else if (last.size() > BpeModel::kEndMarker.size() &&
               std::string_view(last).substr(last.size() - BpeModel::kEndMarker.size()) ==
                   BpeModel::kEndMarker) {
        last.resize(last.size() - BpeModel::kEndMarker.size());
    }
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) pieces[i] += BpeModel::kJoiner;
    return pieces;
}

// Replaces each word token by its subword pieces; punctuation tokens
// pass through with their attachment intact.
inline Sentence segment_sentence(const BpeModel& model, const Sentence& sentence) {
    Sentence out;
    for (const Token& token : sentence) {
        if (token.kind != TokenKind::word) {
            out.push_back(token);
            continue;
        }
        for (std::string& piece : render_subwords(apply_bpe(model, token.surface)))
            out.push_back(make_word(std::move(piece)));
    }
    return out;
}

inline std::vector<Sentence> segment_corpus(const BpeModel& model, const std::vector<Sentence>& corpus) {
    std::vector<Sentence> out;
    out.reserve(corpus.size());
    for (const Sentence& s : corpus) out.push_back(segment_sentence(model, s));
    return out;
}

// Undoes the textual continuation convention.
inline std::string desegment(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    const std::string joiner_space = std::string(BpeModel::kJoiner) + ' ';
    while (pos < text.size()) {
        const std::size_t hit = text.find(joiner_space, pos);
        if (hit == std::string_view::npos) {
            out.append(text.substr(pos));
            break;
        }
        out.append(text.substr(pos, hit - pos));
        pos = hit + joiner_space.size();
    }
    return out;
}

inline constexpr std::string_view kMergesHeader = "#merges: v1";

inline std::string serialize_bpe(const BpeModel& model) {
    std::string out(kMergesHeader);
    out.push_back('\n');
    for (const MergeRule& rule : model.merges()) {
        out += rule.left;
        out.push_back(' ');
        out += rule.right;
        out.push_back('\n');
    }
    return out;
}

inline void save_bpe_file(const BpeModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write merges file: " + path);
    out << serialize_bpe(model);
    if (!out) throw IoError("failed writing merges file: " + path);
}

inline BpeModel load_bpe(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("merges file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kMergesHeader)
        throw FormatError("unsupported merges file header: '" + line + "'");
    std::vector<MergeRule> merges;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t space = line.find(' ');
        if (space == std::string::npos || space == 0 || space + 1 == line.size() ||
            line.find(' ', space + 1) != std::string::npos)
            throw FormatError("merges line " + std::to_string(line_no) +
                              ": expected '<left> <right>'");
        std::string left = line.substr(0, space);
        std::string right = line.substr(space + 1);
        merges.push_back({left, right, left + right});
    }
    return BpeModel(std::move(merges));
}

inline BpeModel load_bpe_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open merges file: " + path);
    return load_bpe(in);
}

}  // namespace colloq
