#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace ekrf {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::string command_line;
    nlohmann::json parameters = nlohmann::json::object();
    std::string tool_version = kToolVersion;
    double elapsed = 0.0;
    std::string output;          // file name the digest covers
    std::string output_sha256;   // lowercase hex

    nlohmann::json to_json() const;
};

std::string sha256_hex(std::string_view bytes);

/// Path of the manifest written next to `output_path`.
std::string manifest_path(const std::string& output_path);

/// Hashes the output file and writes `<output>.manifest.json`.
void write_manifest(RunManifest manifest, const std::string& output_path);

/// True when the manifest next to `output_path` matches the file's bytes.
bool verify_manifest(const std::string& output_path);

}  // namespace ekrf
