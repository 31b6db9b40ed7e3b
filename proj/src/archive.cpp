#include "fairaudit/archive.hpp"

#include <zlib.h>

#include <array>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>

#include "fairaudit/strings.hpp"

namespace fairaudit {

namespace fs = std::filesystem;

namespace {

constexpr size_t kBlockSize = 512;

struct TarHeader {
  std::string name;
  std::uint64_t size = 0;
  char typeflag = '0';
};

std::optional<std::uint64_t> parse_octal(const char* field, size_t len) {
  std::uint64_t value = 0;
  bool seen_digit = false;
  for (size_t i = 0; i < len; ++i) {
    char c = field[i];
    if (c == '\0') break;
    if (c == ' ') {
      if (seen_digit) break;
      continue;
    }
    if (c < '0' || c > '7') return std::nullopt;
    value = value * 8 + static_cast<std::uint64_t>(c - '0');
    seen_digit = true;
  }
  return value;
}

bool verify_checksum(const std::array<char, kBlockSize>& block) {
  auto stored = parse_octal(block.data() + 148, 8);
  if (!stored) return false;
  unsigned sum = 0;
  for (size_t i = 0; i < kBlockSize; ++i) {
    // the checksum field itself counts as spaces
    sum += (i >= 148 && i < 156) ? ' ' : static_cast<unsigned char>(block[i]);
  }
  return sum == *stored;
}

bool is_zero_block(const std::array<char, kBlockSize>& block) {
  for (char c : block) {
    if (c != 0) return false;
  }
  return true;
}

std::string field_string(const char* field, size_t len) {
  size_t n = strnlen(field, len);
  return std::string(field, n);
}

// Normalized relative path, or nullopt when the entry would escape the root.
std::optional<std::string> sanitize_entry_path(const std::string& raw) {
  std::string path = raw;
  replace_all(path, "\\", "/");
  if (!path.empty() && path.front() == '/') return std::nullopt;
  std::vector<std::string> segments;
  for (auto& seg : split(path, '/')) {
    if (seg.empty() || seg == ".") continue;
    if (seg == "..") return std::nullopt;
    segments.push_back(seg);
  }
  if (segments.empty()) return std::nullopt;
  std::string out;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (i > 0) out += "/";
    out += segments[i];
  }
  return out;
}

// pax extended headers: a sequence of "<len> <key>=<value>\n" records.
std::optional<std::string> pax_path_override(const std::string& data) {
  size_t pos = 0;
  while (pos < data.size()) {
    size_t space = data.find(' ', pos);
    if (space == std::string::npos) return std::nullopt;
    size_t len = 0;
    for (size_t i = pos; i < space; ++i) {
      char c = data[i];
      if (c < '0' || c > '9') return std::nullopt;
      len = len * 10 + static_cast<size_t>(c - '0');
    }
    if (len == 0 || pos + len > data.size()) return std::nullopt;
    std::string record = data.substr(space + 1, pos + len - space - 2);  // drop trailing \n
    if (record.rfind("path=", 0) == 0) return record.substr(5);
    pos += len;
  }
  return std::nullopt;
}

class GzReader {
 public:
  explicit GzReader(const fs::path& path)
      : file_(gzopen(path.string().c_str(), "rb")) {}
  ~GzReader() {
    if (file_) gzclose(file_);
  }
  GzReader(const GzReader&) = delete;
  GzReader& operator=(const GzReader&) = delete;

  bool open() const { return file_ != nullptr; }

  // Returns bytes read; -1 on stream error, 0 on clean EOF.
  int read(char* buf, unsigned len) { return gzread(file_, buf, len); }

  std::string error() {
    int errnum = 0;
    const char* msg = gzerror(file_, &errnum);
    if (errnum == Z_OK) return "unexpected end of archive";
    return msg != nullptr ? msg : "gzip stream error";
  }

  // After EOF: true only when the gzip stream closed properly.
  bool stream_ok() {
    int errnum = 0;
    gzerror(file_, &errnum);
    return errnum == Z_OK || errnum == Z_STREAM_END;
  }

 private:
  gzFile file_;
};

}  // namespace

ExtractResult extract_tar_gz(const fs::path& archive, const fs::path& dest_dir) {
  ExtractResult result;
  GzReader reader(archive);
  if (!reader.open()) {
    result.error = "cannot open archive: " + archive.string();
    return result;
  }
  std::error_code ec;
  fs::create_directories(dest_dir, ec);
  if (ec) {
    result.error = "cannot create destination: " + ec.message();
    return result;
  }

  std::array<char, kBlockSize> block;
  std::optional<std::string> pending_longname;  // GNU 'L' or pax path=
  int zero_blocks = 0;

  auto read_block = [&](std::array<char, kBlockSize>& out) -> int {
    int got = reader.read(out.data(), kBlockSize);
    if (got == 0) return 0;
    if (got != static_cast<int>(kBlockSize)) return -1;
    return 1;
  };

  while (true) {
    int rc = read_block(block);
    if (rc == 0) {
      // EOF; archives may omit the trailing zero blocks, but the gzip
      // stream itself must have ended cleanly.
      if (!reader.stream_ok()) {
        result.error = "corrupt archive: " + reader.error();
        return result;
      }
      break;
    }
    if (rc < 0) {
      result.error = "corrupt archive: " + reader.error();
      return result;
    }
    if (is_zero_block(block)) {
      if (++zero_blocks >= 2) break;
      continue;
    }
    zero_blocks = 0;

    if (!verify_checksum(block)) {
      result.error = "corrupt archive: header checksum mismatch";
      return result;
    }
    TarHeader header;
    header.name = field_string(block.data(), 100);
    std::string prefix = field_string(block.data() + 345, 155);
    if (!prefix.empty()) header.name = prefix + "/" + header.name;
    auto size = parse_octal(block.data() + 124, 12);
    if (!size) {
      result.error = "corrupt archive: bad size field";
      return result;
    }
    header.size = *size;
    header.typeflag = block[156];
    if (pending_longname) {
      header.name = *pending_longname;
      pending_longname.reset();
    }

    std::uint64_t padded = (header.size + kBlockSize - 1) / kBlockSize * kBlockSize;
    auto read_data = [&](std::string* into) -> bool {
      std::uint64_t remaining = padded;
      std::uint64_t content = header.size;
      std::array<char, kBlockSize> data;
      while (remaining > 0) {
        if (read_block(data) <= 0) return false;
        if (into && content > 0) {
          auto take = static_cast<size_t>(std::min<std::uint64_t>(content, kBlockSize));
          into->append(data.data(), take);
          content -= take;
        }
        remaining -= kBlockSize;
      }
      return true;
    };

    switch (header.typeflag) {
      case 'L': {  // GNU long name: data block carries the real path
        std::string name;
        if (!read_data(&name)) {
          result.error = "corrupt archive: truncated long-name entry";
          return result;
        }
        auto nul = name.find('\0');
        if (nul != std::string::npos) name.resize(nul);
        pending_longname = name;
        break;
      }
      case 'x': {  // pax per-file header: may override the path
        std::string data;
        if (!read_data(&data)) {
          result.error = "corrupt archive: truncated pax header";
          return result;
        }
        if (auto path = pax_path_override(data)) pending_longname = path;
        break;
      }
      case 'g':  // pax global header: skip payload
      case 'K':  // GNU long link target
      case '1':  // hard link
      case '2':  // symlink: never materialized
        if (!read_data(nullptr)) {
          result.error = "corrupt archive: truncated entry";
          return result;
        }
        if (header.typeflag == '1' || header.typeflag == '2') {
          result.skipped_unsafe.push_back(header.name);
        }
        break;
      case '5': {  // directory
        auto safe = sanitize_entry_path(header.name);
        if (!safe) {
          result.skipped_unsafe.push_back(header.name);
          break;
        }
        fs::create_directories(dest_dir / fs::path(*safe), ec);
        if (ec) {
          result.error = "cannot create directory " + *safe + ": " + ec.message();
          return result;
        }
        break;
      }
      case '0':
      case '\0': {  // regular file
        std::string data;
        if (!read_data(&data)) {
          result.error = "corrupt archive: truncated file data";
          return result;
        }
        auto safe = sanitize_entry_path(header.name);
        if (!safe) {
          result.skipped_unsafe.push_back(header.name);
          break;
        }
        fs::path target = dest_dir / fs::path(*safe);
        fs::create_directories(target.parent_path(), ec);
        std::ofstream out(target, std::ios::binary | std::ios::trunc);
        if (!out) {
          result.error = "cannot write " + safe.value();
          return result;
        }
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) {
          result.error = "short write on " + safe.value();
          return result;
        }
        ++result.files_written;
        break;
      }
      default:  // character/block devices, fifos: skip payload
        if (!read_data(nullptr)) {
          result.error = "corrupt archive: truncated entry";
          return result;
        }
        break;
    }
  }

  result.ok = true;
  return result;
}

}  // namespace fairaudit
