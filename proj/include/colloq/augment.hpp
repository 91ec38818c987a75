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
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "colloq/errors.hpp"
#include "colloq/lexicon.hpp"
#include "colloq/rng.hpp"
#include "colloq/text.hpp"

namespace colloq {

struct AugmentationConfig {
    // Probability that a dictionary-matched word is replaced. The dice
    // roll is uniform on [0, 1), so threshold 1.0 replaces every match
    // and 0.0 replaces none.
    double threshold = 1.0;
    std::uint64_t master_seed = 0;
    // Re-apply the original word's casing pattern to the replacement.
    // When off, replacements stay lowercase as written in the lexicon.
    bool preserve_casing = true;
};

// One aligned sentence pair. The target side is an opaque byte string
// that the transform never touches.
struct ParallelPair {
    Sentence source;
    std::string target;
    std::size_t index = 0;
};

struct PairCounts {
    std::size_t index = 0;
    std::size_t tokens = 0;
    std::size_t matched = 0;
    std::size_t transformed = 0;
};

struct TransformReport {
    std::size_t tokens_total = 0;
    std::size_t tokens_matched = 0;
    std::size_t tokens_transformed = 0;
    double threshold = 0.0;
    std::uint64_t master_seed = 0;
    std::vector<PairCounts> per_pair;
};

struct SentenceTransform {
    Sentence sentence;
    std::size_t matched = 0;
    std::size_t transformed = 0;
};

namespace detail {

inline void check_threshold(double threshold) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw ValidationError("threshold must be in [0, 1], got " + std::to_string(threshold));
}

}  // namespace detail

// Word-level substitution pass over one sentence. For every word token
// found in the lexicon, one uniform draw decides replacement (u <
// threshold) and, only if it replaces, a second draw picks the variant
// uniformly. Unmatched and punctuation tokens consume no draws. This
// draw discipline is part of the contract: outputs are reproducible
// from (lexicon, config, stream) alone.
inline SentenceTransform transform_sentence(const Sentence& sentence, const Lexicon& lex,
                                            const AugmentationConfig& cfg, RandomStream& rng) {
    detail::check_threshold(cfg.threshold);
    SentenceTransform result;
    result.sentence.reserve(sentence.size());
    for (const Token& token : sentence) {
        const LexiconEntry* entry = lex.lookup(token);
        if (entry == nullptr) {
            result.sentence.push_back(token);
            continue;
        }
        ++result.matched;
        if (rng.next_unit() < cfg.threshold) {
            const std::string& variant = entry->variants[rng.next_index(entry->variants.size())];
            std::string surface =
                cfg.preserve_casing ? apply_casing(classify_casing(token), variant) : variant;
            result.sentence.push_back(make_word(std::move(surface)));
            ++result.transformed;
        } else {
            result.sentence.push_back(token);
        }
    }
    return result;
}

// Corpus-level transform. Each pair gets its own stream derived from
// (master_seed, pair.index), so the result is independent of worker
// count and processing order; targets are copied through untouched.
inline std::pair<std::vector<ParallelPair>, TransformReport> transform_corpus(
    const std::vector<ParallelPair>& pairs, const Lexicon& lex, const AugmentationConfig& cfg,
    unsigned num_workers = 1) {
    detail::check_threshold(cfg.threshold);
    {
        std::unordered_set<std::size_t> seen;
        for (const ParallelPair& p : pairs)
            if (!seen.insert(p.index).second)
                throw ValidationError("duplicate pair index " + std::to_string(p.index));
    }

    std::vector<ParallelPair> out(pairs.size());
    std::vector<PairCounts> counts(pairs.size());
    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RandomStream rng = derive_stream(cfg.master_seed, pairs[i].index);
            SentenceTransform st = transform_sentence(pairs[i].source, lex, cfg, rng);
            counts[i] = {pairs[i].index, pairs[i].source.size(), st.matched, st.transformed};
            out[i] = ParallelPair{std::move(st.sentence), pairs[i].target, pairs[i].index};
        }
    };

    const std::size_t n = pairs.size();
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(num_workers, n ? n : 1));
    if (workers <= 1) {
        work(0, n);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back(work, begin, end);
        }
        for (std::thread& t : threads) t.join();
    }

    TransformReport report;
    report.threshold = cfg.threshold;
    report.master_seed = cfg.master_seed;
    report.per_pair = std::move(counts);
    for (const PairCounts& c : report.per_pair) {
        report.tokens_total += c.tokens;
        report.tokens_matched += c.matched;
        report.tokens_transformed += c.transformed;
    }
    return {std::move(out), std::move(report)};
}

// Report document with stable key order; transformed_pct is null when
// the corpus had no tokens.
inline nlohmann::ordered_json report_to_json(const TransformReport& report) {
    nlohmann::ordered_json j;
    j["tokens_total"] = report.tokens_total;
    j["tokens_matched"] = report.tokens_matched;
    j["tokens_transformed"] = report.tokens_transformed;
    if (report.tokens_total > 0)
        j["transformed_pct"] =
            static_cast<double>(report.tokens_transformed) / static_cast<double>(report.tokens_total);
    else
        j["transformed_pct"] = nullptr;
    j["threshold"] = report.threshold;
    j["master_seed"] = report.master_seed;
    return j;
}

}  // namespace colloq
