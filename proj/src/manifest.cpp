/*
 *  Copyright 2026 The genlaw Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include <openssl/evp.h>

#include "genlaw/pipeline.hpp"

namespace fs = std::filesystem;

namespace genlaw {

std::string sha256_hex(const fs::path& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        data_error("cannot read " + file.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
        numerical_error("sha256 initialization failed");
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::string hex;
    char byte[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(byte, sizeof(byte), "%02x", digest[i]);
        hex += byte;
    }
    return hex;
}

namespace {

std::string relative_to(const fs::path& p, const fs::path& dir)
{
    return fs::weakly_canonical(p).lexically_relative(fs::weakly_canonical(dir)).generic_string();
}

nlohmann::json file_entries(const std::vector<fs::path>& files, const fs::path& dir)
{
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& f : files) {
        if (!fs::exists(f))
            data_error("manifest: referenced file " + f.string() + " does not exist");
        entries.emplace_back(relative_to(f, dir), sha256_hex(f));
    }
    std::sort(entries.begin(), entries.end());
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [path, hash] : entries)
        out.push_back({{"path", path}, {"sha256", hash}});
    return out;
}

}  // namespace

void write_manifest(const fs::path& dir, const std::string& command, const nlohmann::json& config,
                    const std::vector<fs::path>& inputs, const std::vector<fs::path>& artifacts)
{
    nlohmann::json m = {{"tool", kToolName},
                        {"version", kToolVersion},
                        {"command", command},
                        {"config", config},
                        {"inputs", file_entries(inputs, dir)},
                        {"artifacts", file_entries(artifacts, dir)}};
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out)
        data_error("cannot write " + (dir / "manifest.json").string());
    out << m.dump(2) << '\n';
}

nlohmann::json verify_manifest(const fs::path& dir)
{
    const fs::path path = dir / "manifest.json";
    std::ifstream in(path, std::ios::binary);
    if (!in)
        data_error("missing manifest " + path.string());
    nlohmann::json m;
    try {
        m = nlohmann::json::parse(in);
        for (const auto& a : m.at("artifacts")) {
            const fs::path file = dir / a.at("path").get<std::string>();
            if (!fs::exists(file))
                data_error("manifest " + path.string() + ": artifact " + file.string() + " is missing");
            if (sha256_hex(file) != a.at("sha256").get<std::string>())
                data_error("manifest " + path.string() + ": hash mismatch for " + file.string() +
                           " (file was modified after it was written)");
        }
    } catch (const nlohmann::json::exception& e) {
        data_error("malformed manifest " + path.string() + ": " + e.what());
    }
    return m;
}

}  // namespace genlaw
