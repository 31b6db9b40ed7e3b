#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairaudit/core.hpp"
#include "fairaudit/interop.hpp"
#include "fairaudit/provider.hpp"

namespace fairaudit {

enum class IndicatorKind {
  readme,
  license,
  container_spec,
  env_spec,
  notebook,
  workflow,
  citation_metadata,
};

std::string_view to_string(IndicatorKind kind);

/// A detected reuse-readiness feature of the tree.
struct ReuseIndicator {
  IndicatorKind kind;
  std::string path;
  bool well_formed = true;
  std::optional<std::string> note;
};

struct IndicatorRule {
  IndicatorKind kind;
  std::vector<std::string> patterns;  // file names, or globs for tree-wide kinds
  bool mandatory;
  bool root_only;
  bool case_insensitive;
};

/// The closed pattern table. Exactly two mandatory kinds: readme and license.
const std::vector<IndicatorRule>& indicator_table();

/// All indicators present in the tree, with well-formedness judged from file
/// contents (readme/license non-empty; CITATION.cff carries a cff-version
/// key). Unreadable files surface as Warning findings.
std::vector<ReuseIndicator> detect_indicators(const RepoTree& tree, const FileReader& read,
                                              std::vector<Finding>* findings = nullptr);

/// The reusability fitness function body: Pass iff a well-formed README and a
/// license are present. Optional kinds yield Info when present, Warning when
/// absent. Timing is stamped by the check runner.
CheckOutcome reusability_check(const RepoTree& tree,
                               const std::vector<Finding>& tree_findings,
                               const FileReader& read);

}  // namespace fairaudit
