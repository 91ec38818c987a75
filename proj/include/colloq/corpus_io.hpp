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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "colloq/errors.hpp"
#include "colloq/text.hpp"

namespace colloq {

enum class CorpusFormat { tsv_pairs, mono };

inline CorpusFormat parse_corpus_format(std::string_view name) {
    if (name == "tsv-pairs") return CorpusFormat::tsv_pairs;
    if (name == "mono") return CorpusFormat::mono;
    throw ValidationError("unknown corpus format: '" + std::string(name) + "'");
}

// One corpus line. `raw` keeps the original line (CR stripped) so
// untouched records can be written back verbatim.
struct CorpusRecord {
    std::string source;
    std::string target;  // empty and unused for mono corpora
    std::string raw;
};

struct Corpus {
    CorpusFormat format = CorpusFormat::mono;
    std::vector<CorpusRecord> records;
    bool trailing_newline = true;
};

inline Corpus parse_corpus(std::string_view text, CorpusFormat format, const std::string& name) {
    Corpus corpus;
    corpus.format = format;
    corpus.trailing_newline = !text.empty() && text.back() == '\n';
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        ++line_no;
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        CorpusRecord record;
        record.raw = std::string(line);
        if (format == CorpusFormat::tsv_pairs) {
            const std::size_t tab = line.find('\t');
            if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos)
                throw FormatError(name + " line " + std::to_string(line_no) +
                                  ": tsv-pairs lines must contain exactly one tab");
            record.source = std::string(line.substr(0, tab));
            record.target = std::string(line.substr(tab + 1));
        } else {
            record.source = std::string(line);
        }
        corpus.records.push_back(std::move(record));
    }
    return corpus;
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("failed reading file: " + path);
    return buf.str();
}

inline Corpus read_corpus_file(const std::string& path, CorpusFormat format) {
    return parse_corpus(read_file_bytes(path), format, path);
}

inline std::string render_record(const CorpusRecord& record, CorpusFormat format) {
    if (format == CorpusFormat::tsv_pairs) return record.source + '\t' + record.target;
    return record.source;
}

inline std::string render_corpus(const Corpus& corpus) {
    std::string out;
    for (std::size_t i = 0; i < corpus.records.size(); ++i) {
        if (i > 0) out.push_back('\n');
        out += render_record(corpus.records[i], corpus.format);
    }
    if (!corpus.records.empty() && corpus.trailing_newline) out.push_back('\n');
    return out;
}

// Writes via a temporary file in the same directory plus rename, so
// readers never observe a half-written output. Refuses to replace an
// existing file unless `force` is set.
inline void atomic_write_file(const std::string& path, std::string_view bytes, bool force) {
    namespace fs = std::filesystem;
    if (!force && fs::exists(path))
        throw ValidationError("output file exists (use --force to overwrite): " + path);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write file: " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw IoError("failed writing file: " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

struct FilterResult {
    Corpus corpus;
    std::size_t kept = 0;
    std::size_t dropped = 0;
};

// Keeps records whose source side has at least `min_tokens` tokens
// ("less than" is strict); pairs are kept or dropped atomically and
// order is preserved.
inline FilterResult filter_min_tokens(const Corpus& corpus, std::size_t min_tokens) {
    if (min_tokens < 1) throw ValidationError("min-tokens must be >= 1");
    FilterResult result;
    result.corpus.format = corpus.format;
    result.corpus.trailing_newline = corpus.trailing_newline;
    for (const CorpusRecord& record : corpus.records) {
        if (tokenize(record.source).size() >= min_tokens) {
            result.corpus.records.push_back(record);
            ++result.kept;
        } else {
            ++result.dropped;
        }
    }
    return result;
}

}  // namespace colloq
