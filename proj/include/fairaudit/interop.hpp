#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairaudit/core.hpp"
#include "fairaudit/environment.hpp"
#include "fairaudit/provider.hpp"
#include "fairaudit/requirements.hpp"
#include "fairaudit/version.hpp"

namespace fairaudit {

/// Reads a file by tree-relative path; nullopt when unreadable. Checks take a
/// reader instead of touching the filesystem directly so fixtures can stub it.
using FileReader = std::function<std::optional<std::string>(const std::string&)>;

FileReader make_fs_reader(std::filesystem::path root);

/// Info finding per build metadata file at the root (setup.py,
/// pyproject.toml); Warning NO_BUILD_METADATA when none exist.
std::vector<Finding> detect_build_metadata(const RepoTree& tree);

/// Default interpreter-invocation patterns (ECMAScript regex, applied
/// line-wise to workflow text). Documented in docs/finding-codes.md.
const std::vector<std::string>& ci_invocation_patterns();

std::vector<Finding> scan_ci_workflows(const RepoTree& tree, const FileReader& read,
                                       const std::vector<std::string>& patterns =
                                           ci_invocation_patterns());

struct InterpreterRequirement {
  std::vector<VersionConstraint> constraints;
  std::string source;  // file the requirement came from
};

/// Declared interpreter requirement, by priority: pyproject.toml
/// requires-python, setup.py python_requires, then .python-version (a pin
/// "X.Y" is widened to ">=X.Y,<X.Y+1"). nullopt when nothing parseable is
/// declared.
std::optional<InterpreterRequirement> find_interpreter_requirement(const RepoTree& tree,
                                                                   const FileReader& read);

std::pair<bool, Finding> check_interpreter_compat(
    const std::optional<InterpreterRequirement>& required, const EnvironmentManifest& env);

/// Per requirement: DEP_OK, DEP_MISSING or DEP_VERSION_CONFLICT.
std::vector<Finding> resolve_dependencies(const std::vector<Requirement>& reqs,
                                          const EnvironmentManifest& env);

/// The interoperability fitness function body. Pass iff the dependency
/// manifest exists and parses, the interpreter requirement holds, and no
/// dependency is missing or conflicting. Build-metadata and CI findings
/// attach regardless of status. Timing is stamped by the check runner.
CheckOutcome interoperability_check(const RepoTree& tree,
                                    const std::vector<Finding>& tree_findings,
                                    const FileReader& read, const EnvironmentManifest& env);

}  // namespace fairaudit
