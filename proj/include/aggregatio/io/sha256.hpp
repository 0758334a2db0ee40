#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace aggregatio::io {

/// SHA-256 digest of a byte string, as lowercase hex.
std::string sha256_hex(std::string_view bytes);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace aggregatio::io
