#include "aggregatio/io/manifest.hpp"

#include "aggregatio/errors.hpp"
#include "aggregatio/io/csv.hpp"
#include "aggregatio/io/sha256.hpp"

namespace aggregatio::io {

nlohmann::json ResultManifest::to_json() const {
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& o : outputs)
        outs.push_back({{"path", o.path}, {"bytes", o.bytes}, {"sha256", o.sha256}});
    return nlohmann::json{{"command", command},
                          {"params", params},
                          {"version", version},
                          {"duration_seconds", duration_seconds},
                          {"outputs", outs}};
}

ResultManifest ResultManifest::from_json(const nlohmann::json& j) {
    ResultManifest m;
    m.command = j.at("command").get<std::string>();
    m.params = j.at("params");
    m.version = j.at("version").get<std::string>();
    m.duration_seconds = j.at("duration_seconds").get<double>();
    for (const auto& o : j.at("outputs")) {
        Output out;
        out.path = o.at("path").get<std::string>();
        out.bytes = o.at("bytes").get<std::uint64_t>();
        out.sha256 = o.at("sha256").get<std::string>();
        m.outputs.push_back(std::move(out));
    }
    return m;
}

void ResultManifest::record_output(const std::filesystem::path& dir,
                                   const std::string& name) {
    const std::string content = read_file(dir / name);
    outputs.push_back(Output{name, content.size(), sha256_hex(content)});
}

void write_manifest(const ResultManifest& manifest, const std::filesystem::path& path) {
    write_file_atomic(path, manifest.to_json().dump(2) + "\n");
}

std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path) {
    const auto manifest =
        ResultManifest::from_json(nlohmann::json::parse(read_file(manifest_path)));
    const std::filesystem::path dir = manifest_path.parent_path();
    std::vector<std::string> mismatches;
    for (const auto& o : manifest.outputs) {
        const auto file = dir / o.path;
        if (!std::filesystem::exists(file)) {
            mismatches.push_back(o.path + ": missing");
            continue;
        }
        const std::string content = read_file(file);
        if (content.size() != o.bytes)
            mismatches.push_back(o.path + ": size mismatch");
        else if (sha256_hex(content) != o.sha256)
            mismatches.push_back(o.path + ": digest mismatch");
    }
    return mismatches;
}

}  // namespace aggregatio::io
