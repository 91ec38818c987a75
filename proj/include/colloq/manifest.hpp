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

#include <openssl/evp.h>

#include <cstdint>
#include <ctime>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "colloq/corpus_io.hpp"
#include "colloq/errors.hpp"
#include "colloq/version.hpp"

namespace colloq {

inline std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw IoError("sha256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

inline std::string sha256_file(const std::string& path) { return sha256_hex(read_file_bytes(path)); }

struct FileDigest {
    std::string path;
    std::string sha256;
};

// Provenance record written next to every produced file: enough to
// audit that a rerun of the same command over the same inputs
// reproduced the same outputs byte for byte.
struct PipelineManifest {
    std::string tool_version = kVersion;
    std::string command;
    std::vector<FileDigest> inputs;
    std::vector<FileDigest> outputs;
    std::optional<std::uint64_t> master_seed;
    std::optional<double> threshold;
    std::string started_at;
    std::string finished_at;
};

inline std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::ordered_json manifest_to_json(const PipelineManifest& m) {
    nlohmann::ordered_json j;
    j["tool_version"] = m.tool_version;
    j["command"] = m.command;
    auto digests = [](const std::vector<FileDigest>& files) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const FileDigest& f : files) arr.push_back({{"path", f.path}, {"sha256", f.sha256}});
        return arr;
    };
    j["inputs"] = digests(m.inputs);
    j["outputs"] = digests(m.outputs);
    j["master_seed"] = m.master_seed ? nlohmann::ordered_json(*m.master_seed) : nlohmann::ordered_json(nullptr);
    j["threshold"] = m.threshold ? nlohmann::ordered_json(*m.threshold) : nlohmann::ordered_json(nullptr);
    j["started_at"] = m.started_at;
    j["finished_at"] = m.finished_at;
    return j;
}

inline void write_manifest(const PipelineManifest& m, const std::string& path, bool force) {
    atomic_write_file(path, manifest_to_json(m).dump(2) + "\n", force);
}

}  // namespace colloq
