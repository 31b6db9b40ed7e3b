#include "fairaudit/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairaudit/check_runner.hpp"
#include "fairaudit/fetch.hpp"
#include "fairaudit/interop.hpp"
#include "fairaudit/probe.hpp"
#include "fairaudit/requirements.hpp"
#include "fairaudit/reuse.hpp"
#include "fairaudit/strings.hpp"

namespace fs = std::filesystem;

namespace fairaudit {

namespace {

bool has_check(const std::vector<CheckId>& checks, CheckId id) {
  return std::find(checks.begin(), checks.end(), id) != checks.end();
}

/// Canonicalizes a check subset into FAIR order, dropping duplicates.
std::vector<CheckId> canonical_checks(const std::vector<CheckId>& requested) {
  std::vector<CheckId> out;
  for (CheckId id : kAllChecks) {
    if (has_check(requested, id)) out.push_back(id);
  }
  return out;
}

std::optional<std::vector<CheckId>> parse_check_list(const std::string& list,
                                                     std::string& error) {
  std::vector<CheckId> checks;
  for (const auto& piece : split(list, ',')) {
    std::string name = trim(piece);
    if (name.empty()) continue;
    auto id = parse_check_id(to_lower(name));
    if (!id) {
      error = "unknown check '" + name + "' (expected findability, accessibility, "
              "interoperability or reusability)";
      return std::nullopt;
    }
    checks.push_back(*id);
  }
  if (checks.empty()) {
    error = "check list is empty";
    return std::nullopt;
  }
  return canonical_checks(checks);
}

std::optional<std::vector<std::string>> read_targets_file(const fs::path& path,
                                                          std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot read targets file: " + path.string();
    return std::nullopt;
  }
  std::vector<std::string> targets;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    targets.push_back(std::move(t));
  }
  return targets;
}

struct ConfigFile {
  RunConfig values;  // only the fields present are meaningful
  bool has_targets = false, has_checks = false, has_env_manifest = false;
  bool has_download_dir = false, has_output = false, has_timeout = false;
  bool has_max_redirects = false, has_concurrency = false, has_offline = false;
  bool has_verbose = false, has_interpreter = false;
};

std::optional<ConfigFile> load_config_file(const fs::path& path, std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot read config file: " + path.string();
    return std::nullopt;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j = nlohmann::json::parse(buffer.str(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    error = "config file is not a JSON object: " + path.string();
    return std::nullopt;
  }

  ConfigFile cfg;
  try {
    if (j.contains("targets")) {
      cfg.values.targets = j["targets"].get<std::vector<std::string>>();
      cfg.has_targets = true;
    }
    if (j.contains("checks")) {
      std::string list;
      if (j["checks"].is_array()) {
        for (const auto& c : j["checks"]) {
          if (!list.empty()) list += ',';
          list += c.get<std::string>();
        }
      } else {
        list = j["checks"].get<std::string>();
      }
      auto checks = parse_check_list(list, error);
      if (!checks) return std::nullopt;
      cfg.values.checks = *checks;
      cfg.has_checks = true;
    }
    if (j.contains("env_manifest")) {
      cfg.values.env_manifest_path = fs::path(j["env_manifest"].get<std::string>());
      cfg.has_env_manifest = true;
    }
    if (j.contains("download_dir")) {
      cfg.values.download_dir = fs::path(j["download_dir"].get<std::string>());
      cfg.has_download_dir = true;
    }
    if (j.contains("output")) {
      std::string mode = j["output"].get<std::string>();
      if (mode != "json" && mode != "text") {
        error = "config output must be json or text";
        return std::nullopt;
      }
      cfg.values.output = mode == "json" ? OutputMode::json : OutputMode::text;
      cfg.has_output = true;
    }
    if (j.contains("timeout")) {
      cfg.values.timeout_s = j["timeout"].get<int>();
      cfg.has_timeout = true;
    }
    if (j.contains("max_redirects")) {
      cfg.values.max_redirects = j["max_redirects"].get<int>();
      cfg.has_max_redirects = true;
    }
    if (j.contains("concurrency")) {
      cfg.values.concurrency = j["concurrency"].get<int>();
      cfg.has_concurrency = true;
    }
    if (j.contains("offline")) {
      cfg.values.offline = j["offline"].get<bool>();
      cfg.has_offline = true;
    }
    if (j.contains("verbose")) {
      cfg.values.verbose = j["verbose"].get<bool>();
      cfg.has_verbose = true;
    }
    if (j.contains("interpreter")) {
      cfg.values.interpreter = j["interpreter"].get<std::string>();
      cfg.has_interpreter = true;
    }
    if (j.contains("providers")) {
      for (const auto& p : j["providers"]) {
        std::string host = p.at("host").get<std::string>();
        auto kind = parse_provider_kind(p.value("kind", "generic"));
        std::string tmpl = p.value("archive_template", std::string());
        if (!kind || host.empty()) {
          error = "config providers entries need host and a known kind";
          return std::nullopt;
        }
        cfg.values.providers.add_host(host, *kind, tmpl);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    error = std::string("config file: ") + e.what();
    return std::nullopt;
  }
  return cfg;
}

ArtifactMetadata metadata_for_target(const std::string& target) {
  ArtifactMetadata md;
  md.display_name = target;
  if (target.rfind("http://", 0) == 0 || target.rfind("https://", 0) == 0) {
    md.candidate_locations.push_back(target);
  } else {
    md.identifier = target;
  }
  return md;
}

CheckOutcome skipped_outcome(CheckId check, const std::string& why) {
  CheckOutcome outcome;
  outcome.check = check;
  outcome.status = CheckStatus::Pass;
  outcome.started_at = std::chrono::system_clock::now();
  outcome.duration_ms = 0;
  outcome.findings.push_back(make_finding(codes::kSkippedOffline, Severity::Info, why));
  return outcome;
}

CheckOutcome upstream_fail_outcome(CheckId check, const std::string& why) {
  CheckOutcome outcome;
  outcome.check = check;
  outcome.status = CheckStatus::Fail;
  outcome.started_at = std::chrono::system_clock::now();
  outcome.duration_ms = 0;
  outcome.findings.push_back(make_finding(codes::kUpstreamUnavailable, Severity::Blocker, why));
  return outcome;
}

CheckOutcome no_environment_outcome(const std::string& why) {
  CheckOutcome outcome;
  outcome.check = CheckId::interoperability;
  outcome.status = CheckStatus::Error;
  outcome.started_at = std::chrono::system_clock::now();
  outcome.duration_ms = 0;
  outcome.findings.push_back(make_finding(
      codes::kNoEnvironment, Severity::Blocker,
      why + "; supply one with --env-manifest"));
  return outcome;
}

/// The per-run shared state every worker reads.
struct RunContext {
  const RunConfig& config;
  ProbePolicy probe;
  std::optional<EnvironmentManifest> environment;
  std::string environment_error;  // set when environment is empty
};

TargetRecord audit_one_target(const RunContext& ctx, std::size_t index) {
  const std::string& target = ctx.config.targets[index];
  const auto& checks = ctx.config.checks;
  TargetRecord record;
  record.target = target;

  const bool local = is_local_target(target);
  const bool wants_find = has_check(checks, CheckId::findability);
  const bool wants_access = has_check(checks, CheckId::accessibility);
  const bool wants_interop = has_check(checks, CheckId::interoperability);
  const bool wants_reuse = has_check(checks, CheckId::reusability);
  const bool wants_tree = wants_interop || wants_reuse;

  CheckRunner runner;
  runner.bind(CheckId::findability, [&ctx](const CheckInput& input) {
    return findability_check(*input.metadata, ctx.probe);
  });
  FetchPolicy fetch_policy;
  fetch_policy.probe = ctx.probe;
  fetch_policy.download_dir = ctx.config.download_dir / target_slug(target, index);
  runner.bind(CheckId::accessibility, [&ctx, &fetch_policy](const CheckInput& input) {
    return accessibility_check(*input.location, fetch_policy, ctx.config.providers);
  });
  runner.bind(CheckId::interoperability, [&ctx](const CheckInput& input) {
    return interoperability_check(*input.tree, input.tree_findings,
                                  make_fs_reader(input.tree->root), *input.environment);
  });
  runner.bind(CheckId::reusability, [](const CheckInput& input) {
    return reusability_check(*input.tree, input.tree_findings,
                             make_fs_reader(input.tree->root));
  });

  CheckInput input;
  input.environment = ctx.environment;

  bool upstream_failed = false;
  std::string upstream_reason;

  if (local) {
    fs::path root(target);
    if (fs::is_directory(root)) {
      input.tree = enumerate_tree(root, &input.tree_findings);
    }
    // A missing or non-directory path leaves the tree empty; interoperability
    // and reusability then report precondition errors.
  } else {
    input.metadata = metadata_for_target(target);

    CheckOutcome found = runner.run(CheckId::findability, input);
    if (found.status == CheckStatus::Pass && found.payload) {
      input.location = std::get<Location>(*found.payload);
    } else {
      upstream_failed = true;
      upstream_reason = "no candidate location resolved for " + target;
    }
    if (wants_find) record.outcomes.push_back(std::move(found));

    if (!upstream_failed && (wants_access || wants_tree)) {
      CheckOutcome fetched = runner.run(CheckId::accessibility, input);
      if (fetched.status == CheckStatus::Pass && fetched.payload) {
        input.artifact = std::get<RetrievedArtifact>(*fetched.payload);
        input.tree = enumerate_tree(*input.artifact, &input.tree_findings);
      } else {
        upstream_failed = true;
        upstream_reason = "artifact retrieval failed for " + target;
      }
      if (wants_access) record.outcomes.push_back(std::move(fetched));
    } else if (upstream_failed && wants_access) {
      record.outcomes.push_back(
          upstream_fail_outcome(CheckId::accessibility, upstream_reason));
    }
  }

  for (CheckId check : {CheckId::interoperability, CheckId::reusability}) {
    if (!has_check(checks, check)) continue;
    if (!local && upstream_failed) {
      record.outcomes.push_back(upstream_fail_outcome(check, upstream_reason));
      continue;
    }
    if (check == CheckId::interoperability && !input.environment && input.tree) {
      record.outcomes.push_back(no_environment_outcome(ctx.environment_error));
      continue;
    }
    record.outcomes.push_back(runner.run(check, input));
  }

  if (local && (wants_find || wants_access)) {
    // Insert the skip markers in FAIR order ahead of the real outcomes.
    std::vector<CheckOutcome> shaped;
    if (wants_find) {
      shaped.push_back(skipped_outcome(CheckId::findability,
                                       "network check skipped for local target"));
    }
    if (wants_access) {
      shaped.push_back(skipped_outcome(CheckId::accessibility,
                                       "network check skipped for local target"));
    }
    for (auto& outcome : record.outcomes) shaped.push_back(std::move(outcome));
    record.outcomes = std::move(shaped);
  }

  return record;
}

}  // namespace

std::optional<std::string> validate_config(const RunConfig& config) {
  if (config.targets.empty()) return "no targets given";
  if (config.checks.empty()) return "no checks selected";
  if (config.concurrency < 1) return "concurrency must be at least 1";
  if (config.timeout_s < 1) return "timeout must be at least 1 second";
  if (config.max_redirects < 0) return "max-redirects must not be negative";
  if (config.offline) {
    for (const auto& target : config.targets) {
      if (!is_local_target(target)) {
        return "offline mode requires local-path targets, got: " + target;
      }
    }
  }
  return std::nullopt;
}

bool is_local_target(const std::string& target) {
  if (target.rfind("http://", 0) == 0 || target.rfind("https://", 0) == 0) return false;
  if (target.rfind("10.", 0) == 0 && target.find('/') != std::string::npos) return false;
  std::string lowered = to_lower(target);
  if (lowered.rfind("doi:", 0) == 0) return false;
  return true;
}

std::string target_slug(const std::string& target, std::size_t index) {
  std::string slug = "t" + std::to_string(index) + "-";
  bool last_dash = false;
  for (char c : target) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_';
    if (keep) {
      slug += c;
      last_dash = false;
    } else if (!last_dash) {
      slug += '-';
      last_dash = true;
    }
  }
  while (!slug.empty() && slug.back() == '-') slug.pop_back();
  if (slug.size() > 80) slug.resize(80);
  return slug;
}

EnvironmentCapture capture_environment(const std::string& interpreter) {
  EnvironmentCapture capture;

  auto run = [](const std::string& command) -> std::optional<std::string> {
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string output;
    char chunk[4096];
    size_t got;
    while ((got = ::fread(chunk, 1, sizeof chunk, pipe)) > 0) output.append(chunk, got);
    int status = ::pclose(pipe);
    if (status != 0) return std::nullopt;
    return output;
  };

  auto version_out = run(interpreter +
                         " -c \"import sys; print('.'.join(str(v) for v in "
                         "sys.version_info[:3]))\" 2>/dev/null");
  if (!version_out) {
    capture.error = "interpreter not reachable: " + interpreter;
    return capture;
  }
  auto interpreter_version = parse_version(trim(*version_out));
  if (!interpreter_version) {
    capture.error = "could not parse interpreter version from: " + trim(*version_out);
    return capture;
  }

  EnvironmentManifest manifest;
  manifest.interpreter_version = *interpreter_version;

  auto freeze_out = run(interpreter +
                        " -m pip list --format=freeze --disable-pip-version-check"
                        " 2>/dev/null");
  if (freeze_out) {
    for (const auto& raw_line : split(*freeze_out, '\n')) {
      std::string line = trim(raw_line);
      auto sep = line.find("==");
      if (line.empty() || line[0] == '-' || sep == std::string::npos) continue;
      std::string name = normalize_package_name(line.substr(0, sep));
      auto version = parse_version(trim(std::string_view(line).substr(sep + 2)));
      // Packages with local or otherwise exotic versions are left out rather
      // than guessed at.
      if (!name.empty() && version) manifest.packages[name] = *version;
    }
  }

  capture.manifest = std::move(manifest);
  return capture;
}

AuditReport run_audit(const RunConfig& config) {
  RunContext ctx{config, {}, std::nullopt, {}};
  ctx.probe.timeout_s = config.timeout_s;
  ctx.probe.max_redirects = config.max_redirects;
  ctx.probe.user_agent = "fair-audit/" + std::string(kToolVersion);

  if (has_check(config.checks, CheckId::interoperability)) {
    if (config.env_manifest_path) {
      std::ifstream in(*config.env_manifest_path);
      if (!in) {
        ctx.environment_error =
            "cannot read environment manifest: " + config.env_manifest_path->string();
      } else {
        std::stringstream buffer;
        buffer << in.rdbuf();
        EnvironmentParse parsed = parse_environment_manifest(buffer.str());
        if (parsed.manifest) {
          ctx.environment = std::move(parsed.manifest);
        } else {
          ctx.environment_error = "environment manifest " +
                                  config.env_manifest_path->string() + ": " + parsed.error;
        }
      }
    } else {
      EnvironmentCapture captured = capture_environment(config.interpreter);
      if (captured.manifest) {
        ctx.environment = std::move(captured.manifest);
      } else {
        ctx.environment_error = captured.error;
      }
    }
  }

  std::vector<TargetRecord> records(config.targets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= config.targets.size()) return;
      records[i] = audit_one_target(ctx, i);
    }
  };

  const std::size_t pool = std::min<std::size_t>(
      static_cast<std::size_t>(config.concurrency), config.targets.size());
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  AuditReport report;
  report.generated_at = std::chrono::system_clock::now();
  report.targets = std::move(records);
  return report;
}

CliParse parse_cli(int argc, const char* const* argv) {
  CliParse result;

  CLI::App app{"Audits research-software repositories for findability, accessibility,\n"
               "interoperability and reusability.",
               "fair-audit"};
  app.get_formatter()->column_width(28);

  std::vector<std::string> targets;
  std::string targets_file, checks_list, env_manifest, download_dir, output, config_path;
  int timeout = 0, max_redirects = -1, concurrency = 0;
  bool offline = false, verbose = false, version = false;

  app.add_option("targets", targets, "Repository URLs, DOIs, or local paths");
  auto* opt_targets_file =
      app.add_option("--targets-file", targets_file,
                     "File with one target per line ('#' starts a comment)");
  auto* opt_checks =
      app.add_option("--checks", checks_list,
                     "Comma-separated subset of findability,accessibility,"
                     "interoperability,reusability");
  auto* opt_env =
      app.add_option("--env-manifest", env_manifest,
                     "Environment manifest file (otherwise captured from the interpreter)");
  auto* opt_dir = app.add_option("--download-dir", download_dir,
                                 "Where artifacts are downloaded (default ./fair-audit-artifacts)");
  auto* opt_output =
      app.add_option("--output", output, "Report format: text or json (default text)")
          ->check(CLI::IsMember({"text", "json"}));
  auto* opt_timeout =
      app.add_option("--timeout", timeout, "Per-request timeout in seconds (default 10)");
  auto* opt_redirects =
      app.add_option("--max-redirects", max_redirects, "Redirect budget per probe (default 10)");
  auto* opt_conc =
      app.add_option("--concurrency", concurrency, "Targets audited in parallel (default 1)");
  auto* opt_offline = app.add_flag("--offline", offline,
                                   "Skip network checks; all targets must be local paths");
  app.add_flag("--verbose", verbose, "Show info-level findings in text output");
  app.add_option("--config", config_path,
                 "JSON config file (default taken from $FAIR_AUDIT_CONFIG)");
  app.add_flag("--version", version, "Print the tool version and exit");

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp&) {
    result.help_requested = true;
    result.message = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    result.error = e.what();
    return result;
  }

  if (version) {
    result.help_requested = true;
    result.message = "fair-audit " + std::string(kToolVersion) + "\n";
    return result;
  }

  RunConfig config;

  if (config_path.empty()) {
    if (const char* env = std::getenv("FAIR_AUDIT_CONFIG"); env && *env) config_path = env;
  }
  if (!config_path.empty()) {
    std::string error;
    auto loaded = load_config_file(config_path, error);
    if (!loaded) {
      result.error = error;
      return result;
    }
    if (loaded->has_targets) config.targets = loaded->values.targets;
    if (loaded->has_checks) config.checks = loaded->values.checks;
    if (loaded->has_env_manifest) config.env_manifest_path = loaded->values.env_manifest_path;
    if (loaded->has_download_dir) config.download_dir = loaded->values.download_dir;
    if (loaded->has_output) config.output = loaded->values.output;
    if (loaded->has_timeout) config.timeout_s = loaded->values.timeout_s;
    if (loaded->has_max_redirects) config.max_redirects = loaded->values.max_redirects;
    if (loaded->has_concurrency) config.concurrency = loaded->values.concurrency;
    if (loaded->has_offline) config.offline = loaded->values.offline;
    if (loaded->has_verbose) config.verbose = loaded->values.verbose;
    if (loaded->has_interpreter) config.interpreter = loaded->values.interpreter;
    config.providers = loaded->values.providers;
  }

  if (!targets.empty() || opt_targets_file->count() > 0) config.targets.clear();
  for (auto& t : targets) config.targets.push_back(std::move(t));
  if (opt_targets_file->count() > 0) {
    std::string error;
    auto from_file = read_targets_file(targets_file, error);
    if (!from_file) {
      result.error = error;
      return result;
    }
    for (auto& t : *from_file) config.targets.push_back(std::move(t));
  }

  if (opt_checks->count() > 0) {
    std::string error;
    auto checks = parse_check_list(checks_list, error);
    if (!checks) {
      result.error = error;
      return result;
    }
    config.checks = *checks;
  }
  if (opt_env->count() > 0) config.env_manifest_path = fs::path(env_manifest);
  if (opt_dir->count() > 0) config.download_dir = fs::path(download_dir);
  if (opt_output->count() > 0) config.output = output == "json" ? OutputMode::json : OutputMode::text;
  if (opt_timeout->count() > 0) config.timeout_s = timeout;
  if (opt_redirects->count() > 0) config.max_redirects = max_redirects;
  if (opt_conc->count() > 0) config.concurrency = concurrency;
  if (opt_offline->count() > 0) config.offline = offline;
  if (verbose) config.verbose = true;

  if (auto problem = validate_config(config)) {
    result.error = *problem;
    return result;
  }
  result.config = std::move(config);
  return result;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliParse cli = parse_cli(argc, argv);
  if (cli.help_requested) {
    out << cli.message;
    return 0;
  }
  if (!cli.config) {
    err << "fair-audit: " << cli.error << "\n";
    err << "Run with --help for usage.\n";
    return 2;
  }

  AuditReport report = run_audit(*cli.config);
  if (cli.config->output == OutputMode::json) {
    out << render_report_json(report);
  } else {
    out << render_report_text(report, cli.config->verbose);
  }
  return report_exit_code(report);
}

}  // namespace fairaudit
