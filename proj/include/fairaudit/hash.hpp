#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace fairaudit {

std::string sha256_hex(std::string_view data);

/// nullopt when the file cannot be read.
std::optional<std::string> sha256_file_hex(const std::filesystem::path& path);

}  // namespace fairaudit
