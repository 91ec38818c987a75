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

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "colloq/errors.hpp"

namespace colloq {

inline constexpr std::size_t kBleuMaxOrder = 4;

struct BleuScore {
    double score = 0.0;  // 0..100
    std::array<double, kBleuMaxOrder> precisions{};
    std::array<std::size_t, kBleuMaxOrder> matches{};  // clipped n-gram matches
    std::array<std::size_t, kBleuMaxOrder> totals{};   // hypothesis n-gram counts
    double brevity_penalty = 0.0;
    std::size_t hyp_length = 0;
    std::size_t ref_length = 0;
};

struct BleuOptions {
    // Substitute numerator for populated orders with zero matches; 0
    // disables smoothing, making any such order zero the whole score.
    double epsilon = 0.0;
};

// 1 when the hypothesis is at least as long as the reference, else
// exp(1 - ref/hyp); an empty hypothesis gets 0 by convention.
inline double brevity_penalty(std::size_t hyp_len, std::size_t ref_len) {
    if (ref_len == 0) throw ValidationError("brevity_penalty: reference length is zero");
    if (hyp_len == 0) return 0.0;
    if (hyp_len >= ref_len) return 1.0;
    return std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
}

namespace detail {

// Tokens must not contain spaces (any whitespace tokenization
// guarantees that), so a space-joined n-gram is a unique key.
inline void count_ngrams(const std::vector<std::string>& tokens, std::size_t order,
                         std::unordered_map<std::string, std::size_t>& counts) {
    counts.clear();
    if (tokens.size() < order) return;
    for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (std::size_t j = 1; j < order; ++j) {
            key.push_back(' ');
            key += tokens[i + j];
        }
        ++counts[key];
    }
}

}  // namespace detail

// Corpus-level BLEU-4 with one reference per hypothesis: clipped n-gram
// matches are pooled over the whole corpus, the geometric mean runs
// over the orders the hypotheses actually populate, and the brevity
// penalty uses pooled lengths.
inline BleuScore corpus_bleu(const std::vector<std::vector<std::string>>& hypotheses,
                             const std::vector<std::vector<std::string>>& references,
                             const BleuOptions& options = {}) {
    if (hypotheses.empty()) throw ValidationError("corpus_bleu: empty corpus");
    if (hypotheses.size() != references.size())
        throw ValidationError("corpus_bleu: " + std::to_string(hypotheses.size()) + " hypotheses vs " +
                              std::to_string(references.size()) + " references");

    BleuScore result;
    std::unordered_map<std::string, std::size_t> hyp_counts, ref_counts;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        result.hyp_length += hypotheses[i].size();
        result.ref_length += references[i].size();
        for (std::size_t order = 1; order <= kBleuMaxOrder; ++order) {
            detail::count_ngrams(hypotheses[i], order, hyp_counts);
            detail::count_ngrams(references[i], order, ref_counts);
            for (const auto& [gram, count] : hyp_counts) {
                result.totals[order - 1] += count;
                const auto it = ref_counts.find(gram);
                if (it != ref_counts.end()) result.matches[order - 1] += std::min(count, it->second);
            }
        }
    }

    result.brevity_penalty = brevity_penalty(result.hyp_length, result.ref_length);

    double log_sum = 0.0;
    std::size_t populated = 0;
    bool zero_precision = false;
    for (std::size_t n = 0; n < kBleuMaxOrder; ++n) {
        if (result.totals[n] == 0) continue;  // order not populated; excluded from the mean
        ++populated;
        double numerator = static_cast<double>(result.matches[n]);
        if (result.matches[n] == 0) {
            if (options.epsilon > 0.0)
                numerator = options.epsilon;
            else
                zero_precision = true;
        }
        result.precisions[n] = numerator / static_cast<double>(result.totals[n]);
        if (numerator > 0.0) log_sum += std::log(result.precisions[n]);
    }

    if (populated == 0 || zero_precision) {
        result.score = 0.0;
    } else {
        // A self-score stays exactly 100: every log is exactly 0 and
        // exp(0) is exactly 1.
        result.score =
            100.0 * result.brevity_penalty * std::exp(log_sum / static_cast<double>(populated));
    }
    return result;
}

inline nlohmann::ordered_json bleu_to_json(const BleuScore& score) {
    nlohmann::ordered_json j;
    j["score"] = score.score;
    j["precisions"] = score.precisions;
    j["matches"] = score.matches;
    j["totals"] = score.totals;
    j["brevity_penalty"] = score.brevity_penalty;
    j["hyp_length"] = score.hyp_length;
    j["ref_length"] = score.ref_length;
    return j;
}

// One-line summary with the score at one decimal place.
inline std::string bleu_summary(const BleuScore& s) {
    char buf[256];
    const double ratio =
        s.ref_length == 0 ? 0.0 : static_cast<double>(s.hyp_length) / static_cast<double>(s.ref_length);
    std::snprintf(buf, sizeof(buf),
                  "BLEU = %.1f  %.1f/%.1f/%.1f/%.1f  (BP = %.3f, ratio = %.3f, hyp_len = %zu, ref_len = %zu)",
                  s.score, 100.0 * s.precisions[0], 100.0 * s.precisions[1], 100.0 * s.precisions[2],
                  100.0 * s.precisions[3], s.brevity_penalty, ratio, s.hyp_length, s.ref_length);
    return buf;
}

}  // namespace colloq
