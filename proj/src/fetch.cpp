#include "fairaudit/fetch.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <chrono>
#include <fstream>
#include <system_error>

#include <httplib.h>

#include "fairaudit/archive.hpp"
#include "fairaudit/hash.hpp"
#include "fairaudit/strings.hpp"
#include "fairaudit/uri.hpp"

namespace fs = std::filesystem;

namespace fairaudit {

namespace {

bool is_redirect(int status) {
  return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

struct Download {
  bool transport_ok = false;
  int status = 0;
  std::string final_uri;
  std::string body;  // final hop only
  std::string error;
  bool timed_out = false;
  bool truncated = false;  // max_payload_bytes exceeded
};

Download download_uri(const std::string& uri, const FetchPolicy& policy) {
  Download dl;
  std::string current = uri;

  for (int hops = 0; hops <= policy.probe.max_redirects; ++hops) {
    auto parsed = parse_uri(current);
    if (!parsed) {
      dl.error = "unsupported or malformed URI";
      return dl;
    }

    httplib::Client cli(parsed->origin());
    cli.set_follow_location(false);
    cli.set_connection_timeout(policy.probe.timeout_s, 0);
    cli.set_read_timeout(policy.probe.timeout_s, 0);
    cli.set_write_timeout(policy.probe.timeout_s, 0);
    cli.set_default_headers({{"User-Agent", policy.probe.user_agent}});
    cli.enable_server_certificate_verification(false);

    dl.body.clear();
    bool over_budget = false;
    const auto begun = std::chrono::steady_clock::now();
    httplib::Result res =
        cli.Get(parsed->target(), [&](const char* data, size_t len) {
          if (dl.body.size() + len > policy.max_payload_bytes) {
            over_budget = true;
            return false;
          }
          dl.body.append(data, len);
          return true;
        });
    const auto elapsed = std::chrono::steady_clock::now() - begun;

    if (!res) {
      if (over_budget) {
        dl.truncated = true;
        dl.error = "payload exceeds size budget";
        return dl;
      }
      dl.error = httplib::to_string(res.error());
      const bool ran_out = elapsed >= std::chrono::seconds(policy.probe.timeout_s);
      dl.timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                     (ran_out && (res.error() == httplib::Error::Read ||
                                  res.error() == httplib::Error::Write ||
                                  res.error() == httplib::Error::Connection));
      return dl;
    }

    if (is_redirect(res->status)) {
      std::string loc = res->get_header_value("Location");
      auto next = loc.empty() ? std::nullopt : resolve_reference(current, loc);
      if (!next) {
        dl.error = "unresolvable redirect";
        return dl;
      }
      current = *next;
      continue;
    }

    dl.transport_ok = true;
    dl.status = res->status;
    dl.final_uri = current;
    return dl;
  }

  dl.error = "redirect chain exceeded " + std::to_string(policy.probe.max_redirects) + " hops";
  return dl;
}

/// Advisory lock guarding one download directory against concurrent writers.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) {
    fd_ = ::open((dir / ".lock").c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

bool write_file(const fs::path& path, const std::string& data, std::string& error) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    error = "cannot open " + path.string() + " for writing";
    return false;
  }
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) {
    error = "short write to " + path.string();
    return false;
  }
  return true;
}

std::string file_name_from_uri(const std::string& uri) {
  auto parsed = parse_uri(uri);
  std::string path = parsed ? parsed->path : uri;
  auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  if (name.empty()) name = "download";
  return name;
}

/// Moves the extracted tree into place. Provider tarballs wrap everything in
/// one "<name>-<ref>/" directory; unwrap it so the tree lives directly under
/// <dest>.
bool place_extracted_tree(const fs::path& staging, const fs::path& dest, std::string& error) {
  std::error_code ec;
  fs::remove_all(dest, ec);

  std::vector<fs::path> top;
  for (const auto& entry : fs::directory_iterator(staging, ec)) top.push_back(entry.path());
  if (ec) {
    error = "cannot list extracted archive: " + ec.message();
    return false;
  }

  if (top.size() == 1 && fs::is_directory(top[0])) {
    fs::rename(top[0], dest, ec);
  } else {
    fs::rename(staging, dest, ec);
  }
  if (ec) {
    error = "cannot move extracted tree into place: " + ec.message();
    return false;
  }
  fs::remove_all(staging, ec);
  return true;
}

Finding classify_failure(const Download& dl, const std::string& uri) {
  if (dl.transport_ok) {
    if (dl.status == 401 || dl.status == 403) {
      return make_finding(codes::kAuthWall, Severity::Blocker,
                          "access denied with HTTP " + std::to_string(dl.status), uri);
    }
    if (dl.status == 404 || dl.status == 410) {
      return make_finding(codes::kGone, Severity::Blocker,
                          "resource gone with HTTP " + std::to_string(dl.status), uri);
    }
    return make_finding(codes::kFetchFailed, Severity::Blocker,
                        "unexpected HTTP " + std::to_string(dl.status), uri);
  }
  if (dl.timed_out) {
    return make_finding(codes::kTimeout, Severity::Blocker, "retrieval timed out: " + dl.error,
                        uri);
  }
  return make_finding(codes::kFetchFailed, Severity::Blocker, "transport failure: " + dl.error,
                      uri);
}

}  // namespace

FetchResult fetch_artifact(const Location& location, const FetchPolicy& policy,
                           const ProviderRegistry& registry) {
  FetchResult result;

  std::error_code ec;
  fs::create_directories(policy.download_dir, ec);
  if (ec) {
    result.io_fault = true;
    result.io_error = "cannot create " + policy.download_dir.string() + ": " + ec.message();
    return result;
  }
  {
    std::ofstream probe_file(policy.download_dir / ".writable", std::ios::trunc);
    if (!probe_file) {
      result.io_fault = true;
      result.io_error = "download directory is not writable: " + policy.download_dir.string();
      return result;
    }
  }
  fs::remove(policy.download_dir / ".writable", ec);

  DirLock lock(policy.download_dir);

  const ProviderClassification cls = registry.classify(location.uri);
  const bool as_archive = cls.kind != ProviderKind::generic && cls.coords.has_value();

  Download dl;
  std::string fetched_uri;
  if (as_archive) {
    bool saw_missing = false;
    for (const auto& ref : policy.refs) {
      auto url = registry.archive_url(cls, ref);
      if (!url) break;
      fetched_uri = *url;
      dl = download_uri(fetched_uri, policy);
      if (dl.transport_ok && dl.status >= 200 && dl.status < 300) break;
      if (dl.transport_ok && (dl.status == 404 || dl.status == 410)) {
        saw_missing = true;
        continue;  // branch name mismatch; try the next ref candidate
      }
      break;  // auth walls, timeouts and transport errors are not ref-specific
    }
    if (!(dl.transport_ok && dl.status >= 200 && dl.status < 300) && saw_missing &&
        !(dl.transport_ok && (dl.status == 401 || dl.status == 403))) {
      // Every ref candidate came back missing.
      if (!dl.transport_ok && dl.error.empty()) {
        dl.transport_ok = true;
        dl.status = 404;
      }
    }
  } else {
    fetched_uri = location.uri;
    dl = download_uri(fetched_uri, policy);
  }

  if (!(dl.transport_ok && dl.status >= 200 && dl.status < 300)) {
    result.findings.push_back(classify_failure(dl, fetched_uri));
    return result;
  }

  RetrievedArtifact artifact;
  artifact.source = location;
  artifact.retrieved_at = std::chrono::system_clock::now();
  artifact.byte_size = dl.body.size();
  artifact.content_hash = sha256_hex(dl.body);

  std::string io_error;
  if (as_archive) {
    const fs::path payload = policy.download_dir / "payload.tar.gz";
    if (!write_file(payload, dl.body, io_error)) {
      result.io_fault = true;
      result.io_error = io_error;
      return result;
    }
    const fs::path staging = policy.download_dir / ".extract";
    fs::remove_all(staging, ec);
    fs::create_directories(staging, ec);
    ExtractResult extracted = extract_tar_gz(payload, staging);
    if (!extracted.ok) {
      fs::remove_all(staging, ec);
      result.findings.push_back(make_finding(codes::kCorrupted, Severity::Blocker,
                                             extracted.error, fetched_uri));
      return result;
    }
    for (const auto& skipped : extracted.skipped_unsafe) {
      result.findings.push_back(make_finding(
          codes::kUnsafeArchivePath, Severity::Warning,
          "archive entry escaping the extraction root was skipped", skipped));
    }
    const fs::path dest = policy.download_dir / cls.coords->name;
    if (!place_extracted_tree(staging, dest, io_error)) {
      result.io_fault = true;
      result.io_error = io_error;
      return result;
    }
    artifact.form = ArtifactForm::archive_extracted;
    artifact.root_path = dest;
    artifact.payload_path = payload;
  } else {
    const fs::path dir = policy.download_dir / "file";
    fs::remove_all(dir, ec);
    fs::create_directories(dir, ec);
    const fs::path file = dir / file_name_from_uri(dl.final_uri);
    if (!write_file(file, dl.body, io_error)) {
      result.io_fault = true;
      result.io_error = io_error;
      return result;
    }
    artifact.form = ArtifactForm::single_file;
    artifact.root_path = dir;
    artifact.payload_path = file;
  }

  result.artifact = std::move(artifact);
  return result;
}

CheckOutcome accessibility_check(const Location& location, const FetchPolicy& policy,
                                 const ProviderRegistry& registry) {
  CheckOutcome outcome;
  outcome.check = CheckId::accessibility;

  FetchResult fetched = fetch_artifact(location, policy, registry);
  outcome.findings = std::move(fetched.findings);
  if (fetched.io_fault) {
    outcome.status = CheckStatus::Error;
    outcome.findings.push_back(
        make_finding(codes::kIoFault, Severity::Blocker, fetched.io_error));
    return outcome;
  }
  if (fetched.artifact) {
    outcome.status = CheckStatus::Pass;
    outcome.payload = OutcomePayload{std::move(*fetched.artifact)};
  } else {
    outcome.status = CheckStatus::Fail;
  }
  return outcome;
}

}  // namespace fairaudit
