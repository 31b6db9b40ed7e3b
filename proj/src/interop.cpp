#include "fairaudit/interop.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "fairaudit/strings.hpp"

namespace fairaudit {

namespace fs = std::filesystem;

FileReader make_fs_reader(fs::path root) {
  return [root = std::move(root)](const std::string& rel) -> std::optional<std::string> {
    std::ifstream in(root / fs::path(rel), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return std::nullopt;
    return buf.str();
  };
}

namespace {

constexpr std::string_view kManifestName = "requirements.txt";
constexpr std::string_view kBuildMetadataFiles[] = {"setup.py", "pyproject.toml"};
constexpr std::string_view kVersionFile = ".python-version";
constexpr std::string_view kWorkflowDir = ".github/workflows/";

bool is_workflow_path(std::string_view rel) {
  if (!rel.starts_with(kWorkflowDir)) return false;
  auto rest = rel.substr(kWorkflowDir.size());
  if (rest.find('/') != std::string_view::npos) return false;
  return rest.ends_with(".yml") || rest.ends_with(".yaml");
}

std::optional<std::string> extract_quoted_value(const std::string& text,
                                                const std::regex& key_re) {
  std::smatch m;
  if (std::regex_search(text, m, key_re) && m.size() > 1) return m[1].str();
  return std::nullopt;
}

// Widens a bare interpreter pin "3.10" to ">=3.10,<3.11": the pin names a
// release line, not an exact padded version.
std::optional<std::vector<VersionConstraint>> pin_to_constraints(const Version& pin) {
  if (pin.pre) return std::nullopt;
  Version upper = pin;
  upper.release.back() += 1;
  upper.raw.clear();
  for (size_t i = 0; i < upper.release.size(); ++i) {
    if (i > 0) upper.raw += ".";
    upper.raw += std::to_string(upper.release[i]);
  }
  return std::vector<VersionConstraint>{{ConstraintOp::ge, pin},
                                        {ConstraintOp::lt, std::move(upper)}};
}

}  // namespace

std::vector<Finding> detect_build_metadata(const RepoTree& tree) {
  std::vector<Finding> findings;
  for (auto name : kBuildMetadataFiles) {
    const auto* entry = tree.find(name);
    if (entry && entry->kind == TreeEntryKind::file) {
      findings.push_back(make_finding(codes::kBuildMetadataFound, Severity::Info,
                                      "build metadata file present",
                                      std::string(name)));
    }
  }
  if (findings.empty()) {
    findings.push_back(make_finding(codes::kNoBuildMetadata, Severity::Warning,
                                    "no setup.py or pyproject.toml at the repository root"));
  }
  return findings;
}

const std::vector<std::string>& ci_invocation_patterns() {
  static const std::vector<std::string> patterns = {
      R"(\bpython(3(\.\d+)?)?\b)",  // interpreter executable at a word boundary
      R"(setup-python)",            // hosted setup action
  };
  return patterns;
}

std::vector<Finding> scan_ci_workflows(const RepoTree& tree, const FileReader& read,
                                       const std::vector<std::string>& patterns) {
  std::vector<Finding> findings;
  std::vector<std::regex> compiled;
  compiled.reserve(patterns.size());
  for (const auto& p : patterns) compiled.emplace_back(p);

  bool any_workflow = false;
  for (const auto& entry : tree.entries) {
    if (entry.kind != TreeEntryKind::file || !is_workflow_path(entry.relative_path)) {
      continue;
    }
    any_workflow = true;
    auto text = read(entry.relative_path);
    if (!text) {
      findings.push_back(make_finding(codes::kFileUnreadable, Severity::Warning,
                                      "workflow file could not be read",
                                      entry.relative_path));
      continue;
    }
    bool invokes = false;
    for (const auto& re : compiled) {
      if (std::regex_search(*text, re)) {
        invokes = true;
        break;
      }
    }
    if (invokes) {
      findings.push_back(make_finding(codes::kCiInvokesInterpreter, Severity::Info,
                                      "workflow invokes the Python interpreter",
                                      entry.relative_path));
    } else {
      findings.push_back(make_finding(codes::kCiPresentNoInterpreter, Severity::Info,
                                      "workflow present, no interpreter invocation matched",
                                      entry.relative_path));
    }
  }
  if (!any_workflow) {
    findings.push_back(make_finding(codes::kNoCiWorkflow, Severity::Warning,
                                    "no CI workflow files found"));
  }
  return findings;
}

std::optional<InterpreterRequirement> find_interpreter_requirement(const RepoTree& tree,
                                                                   const FileReader& read) {
  // pyproject.toml: requires-python = ">=3.8"
  if (tree.find("pyproject.toml")) {
    if (auto text = read("pyproject.toml")) {
      static const std::regex re(R"(requires-python\s*=\s*["']([^"']+)["'])");
      if (auto value = extract_quoted_value(*text, re)) {
        if (auto constraints = parse_constraint_list(*value); constraints) {
          return InterpreterRequirement{std::move(*constraints), "pyproject.toml"};
        }
      }
    }
  }
  // setup.py: python_requires=">=3.8"
  if (tree.find("setup.py")) {
    if (auto text = read("setup.py")) {
      static const std::regex re(R"(python_requires\s*=\s*["']([^"']+)["'])");
      if (auto value = extract_quoted_value(*text, re)) {
        if (auto constraints = parse_constraint_list(*value); constraints) {
          return InterpreterRequirement{std::move(*constraints), "setup.py"};
        }
      }
    }
  }
  // .python-version: a bare pin
  if (tree.find(std::string(kVersionFile))) {
    if (auto text = read(std::string(kVersionFile))) {
      auto first_line = split(*text, '\n').front();
      if (auto pin = parse_version(trim_view(first_line))) {
        if (auto constraints = pin_to_constraints(*pin)) {
          return InterpreterRequirement{std::move(*constraints), std::string(kVersionFile)};
        }
      }
    }
  }
  return std::nullopt;
}

std::pair<bool, Finding> check_interpreter_compat(
    const std::optional<InterpreterRequirement>& required, const EnvironmentManifest& env) {
  if (!required) {
    return {true, make_finding(codes::kNoInterpreterConstraint, Severity::Info,
                               "no required interpreter version declared")};
  }
  const auto spec = render(required->constraints);
  if (satisfies_all(env.interpreter_version, required->constraints)) {
    return {true, make_finding(codes::kInterpreterCompatible, Severity::Info,
                               "environment interpreter " + env.interpreter_version.raw +
                                   " satisfies " + spec,
                               required->source)};
  }
  return {false, make_finding(codes::kInterpreterIncompatible, Severity::Blocker,
                              "environment interpreter " + env.interpreter_version.raw +
                                  " violates required " + spec,
                              required->source)};
}

std::vector<Finding> resolve_dependencies(const std::vector<Requirement>& reqs,
                                          const EnvironmentManifest& env) {
  std::vector<Finding> findings;
  for (const auto& req : reqs) {
    auto ref = req.source_file + ":" + std::to_string(req.source_line);
    auto installed = env.package_version(req.name);
    if (!installed) {
      findings.push_back(make_finding(codes::kDepMissing, Severity::Blocker,
                                      "package \"" + req.name +
                                          "\" not present in the environment",
                                      ref));
      continue;
    }
    if (!satisfies_all(*installed, req.constraints)) {
      findings.push_back(make_finding(
          codes::kDepVersionConflict, Severity::Blocker,
          "installed " + req.name + " " + installed->raw + " violates \"" +
              render(req.constraints) + "\"",
          ref));
      continue;
    }
    std::string detail = req.constraints.empty()
                             ? "any version accepted"
                             : "satisfies \"" + render(req.constraints) + "\"";
    findings.push_back(make_finding(codes::kDepOk, Severity::Info,
                                    req.name + " " + installed->raw + " " + detail, ref));
  }
  return findings;
}

CheckOutcome interoperability_check(const RepoTree& tree,
                                    const std::vector<Finding>& tree_findings,
                                    const FileReader& read, const EnvironmentManifest& env) {
  CheckOutcome outcome;
  outcome.check = CheckId::interoperability;
  outcome.findings = tree_findings;

  bool manifest_ok = false;
  const auto* manifest_entry = tree.find(kManifestName);
  if (!manifest_entry || manifest_entry->kind != TreeEntryKind::file) {
    outcome.findings.push_back(make_finding(codes::kNoDependencyManifest, Severity::Blocker,
                                            "no requirements.txt at the repository root"));
  } else if (auto text = read(std::string(kManifestName)); !text) {
    outcome.findings.push_back(make_finding(codes::kFileUnreadable, Severity::Blocker,
                                            "requirements.txt could not be read",
                                            std::string(kManifestName)));
  } else {
    auto parsed = parse_requirements(*text, std::string(kManifestName));
    bool encoding_ok = true;
    for (auto& f : parsed.findings) {
      if (f.code == codes::kEncodingInvalid) encoding_ok = false;
      outcome.findings.push_back(std::move(f));
    }
    if (encoding_ok) {
      manifest_ok = true;
      if (parsed.requirements.empty()) {
        outcome.findings.push_back(make_finding(codes::kDepOk, Severity::Info,
                                                "requirements.txt declares no dependencies",
                                                std::string(kManifestName)));
      } else {
        for (auto& f : resolve_dependencies(parsed.requirements, env)) {
          outcome.findings.push_back(std::move(f));
        }
      }
    }
  }

  auto [interpreter_ok, interpreter_finding] =
      check_interpreter_compat(find_interpreter_requirement(tree, read), env);
  outcome.findings.push_back(std::move(interpreter_finding));

  for (auto& f : detect_build_metadata(tree)) outcome.findings.push_back(std::move(f));
  for (auto& f : scan_ci_workflows(tree, read)) outcome.findings.push_back(std::move(f));

  bool deps_ok = !outcome.has_finding(codes::kDepMissing) &&
                 !outcome.has_finding(codes::kDepVersionConflict);
  outcome.status = (manifest_ok && interpreter_ok && deps_ok) ? CheckStatus::Pass
                                                              : CheckStatus::Fail;
  return outcome;
}

}  // namespace fairaudit
