#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fairaudit {

struct ExtractResult {
  bool ok = false;
  std::string error;  // set when !ok
  std::size_t files_written = 0;
  std::vector<std::string> skipped_unsafe;  // entries escaping the root, not extracted
};

/// Extracts a gzip-compressed ustar/pax archive (the format the hosting
/// providers serve) into dest_dir, creating it if needed. Entry paths are
/// normalized; absolute paths and ".." segments are skipped and reported.
/// Symlinks and hard links inside the archive are recorded as skipped, never
/// materialized.
ExtractResult extract_tar_gz(const std::filesystem::path& archive,
                             const std::filesystem::path& dest_dir);

}  // namespace fairaudit
