#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairaudit/core.hpp"
#include "fairaudit/version.hpp"

namespace fairaudit {

/// One parsed dependency declaration. Names are normalized: lowercased with
/// runs of "-", "_" and "." folded to a single "-".
struct Requirement {
  std::string name;
  std::vector<std::string> extras;  // normalized, sorted, unique
  std::vector<VersionConstraint> constraints;  // conjunction; empty = any version
  std::optional<std::string> marker;  // recorded verbatim, never evaluated
  std::string source_file;
  int source_line = 0;
};

struct ParsedRequirements {
  std::vector<Requirement> requirements;  // input order preserved
  std::vector<Finding> findings;
};

/// Parses requirements.txt content. Blank lines and "#" comments are skipped,
/// backslash continuations joined, "-" directives skipped with a finding, and
/// unparseable lines surfaced as findings rather than dropped silently.
/// Invalid UTF-8 aborts the whole file with an ENCODING_INVALID finding.
ParsedRequirements parse_requirements(std::string_view text,
                                      const std::string& filename = "requirements.txt");

/// Canonical single-line form: name[extras]constraints[; marker]. Reparsing
/// the result yields a structurally equal Requirement.
std::string render_requirement(const Requirement& req);

std::string normalize_package_name(std::string_view name);

bool is_valid_utf8(std::string_view text);

}  // namespace fairaudit
