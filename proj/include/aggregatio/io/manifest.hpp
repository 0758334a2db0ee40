#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace aggregatio::io {

/// Record of one CLI run: the command, its fully resolved parameters, and
/// the emitted files with their content digests.
struct ResultManifest {
    std::string command;
    nlohmann::json params;
    std::string version;
    double duration_seconds = 0.0;

    struct Output {
        std::string path;  // relative to the manifest's directory
        std::uint64_t bytes = 0;
        std::string sha256;
    };
    std::vector<Output> outputs;

    nlohmann::json to_json() const;
    static ResultManifest from_json(const nlohmann::json& j);

    /// Digest and record a file that already exists on disk.
    void record_output(const std::filesystem::path& dir, const std::string& name);
};

void write_manifest(const ResultManifest& manifest, const std::filesystem::path& path);

/// Recompute the digest of every listed output; returns the mismatches
/// (empty means the manifest verifies).
std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path);

}  // namespace aggregatio::io
