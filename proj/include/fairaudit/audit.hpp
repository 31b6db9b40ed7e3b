#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/core.hpp"
#include "fairaudit/environment.hpp"
#include "fairaudit/provider.hpp"
#include "fairaudit/report.hpp"

namespace fairaudit {

enum class OutputMode { text, json };

struct RunConfig {
  std::vector<std::string> targets;
  std::vector<CheckId> checks{kAllChecks.begin(), kAllChecks.end()};
  std::optional<std::filesystem::path> env_manifest_path;
  std::filesystem::path download_dir = "./fair-audit-artifacts";
  OutputMode output = OutputMode::text;
  int timeout_s = 10;
  int max_redirects = 10;
  int concurrency = 1;
  bool offline = false;
  bool verbose = false;
  std::string interpreter = "python3";  // used when no manifest is supplied
  ProviderRegistry providers;
};

/// Empty on success, otherwise the reason the config cannot run.
std::optional<std::string> validate_config(const RunConfig& config);

struct CliParse {
  std::optional<RunConfig> config;  // set iff parsing and validation succeeded
  std::string error;
  bool help_requested = false;
  std::string message;  // help or version text when requested
};

/// Parses flags, an optional JSON config file (--config or $FAIR_AUDIT_CONFIG)
/// and a targets file. Command-line values override config-file values.
/// Never exits the process.
CliParse parse_cli(int argc, const char* const* argv);

/// True when the target names something on the local filesystem rather than a
/// URI or identifier to resolve.
bool is_local_target(const std::string& target);

/// Deterministic per-target working-directory name, unique within a run.
std::string target_slug(const std::string& target, std::size_t index);

struct EnvironmentCapture {
  std::optional<EnvironmentManifest> manifest;
  std::string error;  // set when manifest is empty
};

/// Queries an interpreter for its version and installed packages and shapes
/// the answer as a manifest. Used when --env-manifest is not given.
EnvironmentCapture capture_environment(const std::string& interpreter = "python3");

/// Runs every selected check against every target, up to config.concurrency
/// targets at a time, and assembles the report in input order.
AuditReport run_audit(const RunConfig& config);

/// Full CLI behavior: parse, audit, render to `out`, errors to `err`.
/// Returns the process exit code (0 pass, 1 fail, 2 error/usage).
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fairaudit
