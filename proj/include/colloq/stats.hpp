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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "colloq/errors.hpp"
#include "colloq/text.hpp"

namespace colloq {

// Reference wordlist for OOV measurement; membership is exact on the
// lowercase form.
class Vocabulary {
public:
    void add(std::string_view word) { words_.insert(lowercase(word)); }
    bool contains(std::string_view lowercase_word) const {
        return words_.count(std::string(lowercase_word)) > 0;
    }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

inline Vocabulary load_vocabulary(std::istream& in) {
    Vocabulary vocab;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) vocab.add(line);
    }
    return vocab;
}

inline Vocabulary load_vocabulary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open vocabulary file: " + path);
    return load_vocabulary(in);
}

struct CorpusStats {
    std::size_t sentences = 0;
    std::size_t total_tokens = 0;
    std::optional<double> oov_rate;
    std::optional<double> avg_tokens_per_sentence;
    std::optional<double> perplexity;
};

inline CorpusStats basic_stats(const std::vector<Sentence>& corpus) {
    CorpusStats stats;
    stats.sentences = corpus.size();
    for (const Sentence& s : corpus) stats.total_tokens += s.size();
    if (stats.sentences > 0)
        stats.avg_tokens_per_sentence =
            static_cast<double>(stats.total_tokens) / static_cast<double>(stats.sentences);
    return stats;
}

// Fraction of word tokens whose lowercase form is missing from the
// vocabulary. Punctuation is excluded from both sides of the ratio.
inline double oov_rate(const std::vector<Sentence>& corpus, const Vocabulary& vocab) {
    std::size_t words = 0, oov = 0;
    for (const Sentence& s : corpus) {
        for (const Token& t : s) {
            if (t.kind != TokenKind::word) continue;
            ++words;
            if (!vocab.contains(lowercase(t.surface))) ++oov;
        }
    }
    if (words == 0) throw ValidationError("oov_rate: corpus has no word tokens");
    return static_cast<double>(oov) / static_cast<double>(words);
}

struct NgramOptions {
    std::size_t order = 3;
    double add_k = 0.1;
    // Replace training tokens seen only once by the unknown symbol, so
    // the model reserves realistic mass for unseen words.
    bool map_singletons = false;
};

// Add-k smoothed n-gram language model over lowercased word tokens.
// Sentences are padded with (order-1) start symbols and one end symbol
// for order >= 2; a unigram model has no boundary symbols, so the
// uniform-corpus identity PPL == vocabulary size holds exactly. The
// conditional distribution for any context is normalized over the event
// space (trained types + unknown + end symbol when present).
class NgramModel {
public:
    static constexpr std::uint32_t kUnkId = 0;
    static constexpr std::uint32_t kBosId = 1;
    static constexpr std::uint32_t kEosId = 2;

    NgramModel(std::size_t order, double add_k) : order_(order), add_k_(add_k) {
        ids_["<unk>"] = kUnkId;
        ids_["<s>"] = kBosId;
        ids_["</s>"] = kEosId;
        symbols_ = {"<unk>", "<s>", "</s>"};
    }

    std::size_t order() const { return order_; }
    double add_k() const { return add_k_; }

    // trained types + <unk> (+ </s> for order >= 2); the denominator of
    // every conditional.
    std::size_t event_space_size() const {
        return type_count_ + 1 + (order_ >= 2 ? 1 : 0);
    }

    std::vector<std::string> event_symbols() const {
        std::vector<std::string> out;
        out.reserve(event_space_size());
        for (std::uint32_t id = 0; id < symbols_.size(); ++id) {
            if (id == kBosId) continue;
            if (id == kEosId && order_ < 2) continue;
            out.push_back(symbols_[id]);
        }
        return out;
    }

    // Raw counts, for inspection and oracle tests. Words must be given
    // in their trained (lowercase) form; unseen words count as <unk>.
    std::size_t ngram_occurrences(const std::vector<std::string>& gram) const {
        const auto it = ngram_counts_.find(key_of(gram));
        return it == ngram_counts_.end() ? 0 : it->second;
    }
    std::size_t context_occurrences(const std::vector<std::string>& context) const {
        const auto it = context_counts_.find(key_of(context));
        return it == context_counts_.end() ? 0 : it->second;
    }

    double probability(const std::vector<std::string>& context, const std::string& word) const {
        if (context.size() + 1 != order_)
            throw ValidationError("probability: context must have order-1 words");
        std::vector<std::uint32_t> gram = ids_of(context);
        gram.push_back(id_of(word));
        return prob_ids(gram);
    }

    double sentence_log_prob(const Sentence& sentence, std::size_t* scored_tokens) const {
        std::vector<std::uint32_t> stream;
        if (order_ >= 2) stream.assign(order_ - 1, kBosId);
        for (const Token& t : sentence)
            if (t.kind == TokenKind::word) stream.push_back(id_of(lowercase(t.surface)));
        const std::size_t first_scored = order_ >= 2 ? order_ - 1 : 0;
        if (order_ >= 2) stream.push_back(kEosId);
        double log_prob = 0.0;
        for (std::size_t i = first_scored; i < stream.size(); ++i) {
            std::vector<std::uint32_t> gram(stream.begin() + (i + 1 - order_), stream.begin() + i + 1);
            const double p = prob_ids(gram);
            if (!(p > 0.0)) throw ValidationError("zero-probability event while scoring");
            log_prob += std::log(p);
            ++*scored_tokens;
        }
        return log_prob;
    }

private:
    friend NgramModel train_ngram(const std::vector<Sentence>&, const NgramOptions&);

    using Key = std::vector<std::uint32_t>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t h = 0xCBF29CE484222325ULL;
            for (const std::uint32_t v : k) {
                h ^= v;
                h *= 0x100000001B3ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };

    std::uint32_t intern(const std::string& word) {
        const auto [it, inserted] = ids_.emplace(word, static_cast<std::uint32_t>(symbols_.size()));
        if (inserted) {
            symbols_.push_back(word);
            ++type_count_;
        }
        return it->second;
    }

    std::uint32_t id_of(const std::string& word) const {
        const auto it = ids_.find(word);
        return it == ids_.end() ? kUnkId : it->second;
    }

    std::vector<std::uint32_t> ids_of(const std::vector<std::string>& words) const {
        std::vector<std::uint32_t> out;
        out.reserve(words.size());
        for (const std::string& w : words) out.push_back(id_of(w));
        return out;
    }

    Key key_of(const std::vector<std::string>& words) const { return ids_of(words); }

    double prob_ids(const std::vector<std::uint32_t>& gram) const {
        const auto it = ngram_counts_.find(gram);
        const double num = (it == ngram_counts_.end() ? 0.0 : static_cast<double>(it->second)) + add_k_;
        const Key context(gram.begin(), gram.end() - 1);
        const auto ctx_it = context_counts_.find(context);
        const double ctx = ctx_it == context_counts_.end() ? 0.0 : static_cast<double>(ctx_it->second);
        return num / (ctx + add_k_ * static_cast<double>(event_space_size()));
    }

    std::size_t order_;
    double add_k_;
    std::size_t type_count_ = 0;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::vector<std::string> symbols_;
    std::unordered_map<Key, std::size_t, KeyHash> ngram_counts_;
    std::unordered_map<Key, std::size_t, KeyHash> context_counts_;
};

inline NgramModel train_ngram(const std::vector<Sentence>& corpus, const NgramOptions& options) {
    if (options.order < 1) throw ValidationError("train_ngram: order must be >= 1");
    if (!(options.add_k > 0.0)) throw ValidationError("train_ngram: smoothing constant must be > 0");

    std::vector<std::vector<std::string>> streams;
    std::unordered_map<std::string, std::size_t> freq;
    std::size_t word_tokens = 0;
    for (const Sentence& s : corpus) {
        std::vector<std::string> stream;
        for (const Token& t : s) {
            if (t.kind != TokenKind::word) continue;
            stream.push_back(lowercase(t.surface));
            ++freq[stream.back()];
            ++word_tokens;
        }
        streams.push_back(std::move(stream));
    }
    if (word_tokens == 0) throw ValidationError("train_ngram: corpus has no word tokens");

    NgramModel model(options.order, options.add_k);
    for (auto& stream : streams) {
        std::vector<std::uint32_t> ids;
        if (model.order_ >= 2) ids.assign(model.order_ - 1, NgramModel::kBosId);
        for (const std::string& w : stream) {
            if (options.map_singletons && freq[w] == 1)
                ids.push_back(NgramModel::kUnkId);
            else
                ids.push_back(model.intern(w));
        }
        if (model.order_ >= 2) ids.push_back(NgramModel::kEosId);
        if (ids.size() < model.order_) continue;
        for (std::size_t i = 0; i + model.order_ <= ids.size(); ++i) {
            NgramModel::Key gram(ids.begin() + i, ids.begin() + i + model.order_);
            ++model.ngram_counts_[gram];
            gram.pop_back();
            ++model.context_counts_[gram];
        }
    }
    return model;
}

inline NgramModel train_ngram(const std::vector<Sentence>& corpus, std::size_t order, double add_k) {
    return train_ngram(corpus, NgramOptions{order, add_k, false});
}

// exp of the mean negative log-likelihood per scored token (natural
// log; end-of-sentence symbols are scored for order >= 2).
inline double perplexity(const NgramModel& model, const std::vector<Sentence>& corpus) {
    double log_prob = 0.0;
    std::size_t scored = 0;
    for (const Sentence& s : corpus) log_prob += model.sentence_log_prob(s, &scored);
    if (scored == 0) throw ValidationError("perplexity: corpus has no scorable tokens");
    return std::exp(-log_prob / static_cast<double>(scored));
}

// Fraction of corpus tokens an augmentation run actually replaced.
template <typename Report>
inline double transformed_percentage(const Report& report) {
    if (report.tokens_total == 0) throw ValidationError("transformed_percentage: report has no tokens");
    return static_cast<double>(report.tokens_transformed) / static_cast<double>(report.tokens_total);
}

inline nlohmann::ordered_json stats_to_json(const CorpusStats& stats) {
    nlohmann::ordered_json j;
    j["sentences"] = stats.sentences;
    j["total_tokens"] = stats.total_tokens;
    j["oov_rate"] = stats.oov_rate ? nlohmann::ordered_json(*stats.oov_rate) : nlohmann::ordered_json(nullptr);
    j["avg_tokens_per_sentence"] =
        stats.avg_tokens_per_sentence ? nlohmann::ordered_json(*stats.avg_tokens_per_sentence) : nlohmann::ordered_json(nullptr);
    j["perplexity"] = stats.perplexity ? nlohmann::ordered_json(*stats.perplexity) : nlohmann::ordered_json(nullptr);
    return j;
}

namespace detail {

inline std::string fixed1(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
}

}  // namespace detail

// Renders rows in the classic corpus-analysis layout: Source,
// Sentences, Total Words, OOV, AVG Token / Sent, PPL. Missing values
// print as "-".
inline std::string render_stats_table(
    const std::vector<std::pair<std::string, CorpusStats>>& rows) {
    static const char* kHeaders[6] = {"Source", "Sentences", "Total Words", "OOV",
                                      "AVG Token / Sent", "PPL"};
    std::vector<std::vector<std::string>> cells;
    for (const auto& [name, stats] : rows) {
        cells.push_back({name, std::to_string(stats.sentences), std::to_string(stats.total_tokens),
                         stats.oov_rate ? detail::fixed1(*stats.oov_rate * 100.0) + "%" : "-",
                         stats.avg_tokens_per_sentence ? detail::fixed1(*stats.avg_tokens_per_sentence) : "-",
                         stats.perplexity ? detail::fixed1(*stats.perplexity) : "-"});
    }
    cells.insert(cells.begin(),
                 {kHeaders[0], kHeaders[1], kHeaders[2], kHeaders[3], kHeaders[4], kHeaders[5]});
    std::size_t width[6];
    for (std::size_t c = 0; c < 6; ++c) {
        width[c] = 0;
        for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
    }
    std::string out;
    for (const auto& row : cells) {
        std::string line;
        for (std::size_t c = 0; c < 6; ++c) {
            if (c > 0) line += "  ";
            // Source column is left-aligned, numbers right-aligned.
            const std::string pad(width[c] - row[c].size(), ' ');
            line += (c == 0) ? row[c] + pad : pad + row[c];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace colloq
