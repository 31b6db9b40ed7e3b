#include "fairaudit/reuse.hpp"

#include <algorithm>

#include "fairaudit/strings.hpp"

namespace fairaudit {

namespace {

bool is_root_entry(std::string_view rel) {
  return rel.find('/') == std::string_view::npos;
}

bool matches_pattern(std::string_view rel, const IndicatorRule& rule,
                     const std::string& pattern) {
  if (rule.kind == IndicatorKind::notebook) {
    return rel.ends_with(".ipynb");
  }
  if (rule.kind == IndicatorKind::workflow) {
    constexpr std::string_view dir = ".github/workflows/";
    if (!rel.starts_with(dir)) return false;
    auto rest = rel.substr(dir.size());
    if (rest.find('/') != std::string_view::npos) return false;
    return rest.ends_with(".yml") || rest.ends_with(".yaml");
  }
  if (rule.root_only && !is_root_entry(rel)) return false;
  return rule.case_insensitive ? iequals(rel, pattern) : rel == pattern;
}

// Minimal cff well-formedness: key:value lines including a cff-version key.
bool citation_well_formed(const std::string& text) {
  for (auto& line : split(text, '\n')) {
    auto sv = trim_view(line);
    if (sv.starts_with("cff-version") && sv.find(':') != std::string_view::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(IndicatorKind kind) {
  switch (kind) {
    case IndicatorKind::readme: return "readme";
    case IndicatorKind::license: return "license";
    case IndicatorKind::container_spec: return "container_spec";
    case IndicatorKind::env_spec: return "env_spec";
    case IndicatorKind::notebook: return "notebook";
    case IndicatorKind::workflow: return "workflow";
    case IndicatorKind::citation_metadata: return "citation_metadata";
  }
  return "unknown";
}

const std::vector<IndicatorRule>& indicator_table() {
  static const std::vector<IndicatorRule> table = {
      {IndicatorKind::readme, {"README.md"}, true, true, true},
      {IndicatorKind::license, {"LICENSE", "LICENSE.txt", "LICENSE.md", "COPYING"}, true,
       true, true},
      {IndicatorKind::container_spec, {"Dockerfile"}, false, true, false},
      {IndicatorKind::env_spec, {"environment.yml", "environment.yaml"}, false, true, false},
      {IndicatorKind::notebook, {"*.ipynb"}, false, false, false},
      {IndicatorKind::workflow, {".github/workflows/*.yml", ".github/workflows/*.yaml"},
       false, false, false},
      {IndicatorKind::citation_metadata, {"CITATION.cff"}, false, true, false},
  };
  return table;
}

std::vector<ReuseIndicator> detect_indicators(const RepoTree& tree, const FileReader& read,
                                              std::vector<Finding>* findings) {
  std::vector<ReuseIndicator> out;
  for (const auto& rule : indicator_table()) {
    for (const auto& entry : tree.entries) {
      if (entry.kind != TreeEntryKind::file) continue;
      bool matched = std::any_of(rule.patterns.begin(), rule.patterns.end(),
                                 [&](const std::string& p) {
                                   return matches_pattern(entry.relative_path, rule, p);
                                 });
      if (!matched) continue;

      ReuseIndicator indicator{rule.kind, entry.relative_path, true, std::nullopt};
      bool needs_content = rule.kind == IndicatorKind::readme ||
                           rule.kind == IndicatorKind::license ||
                           rule.kind == IndicatorKind::citation_metadata;
      if (needs_content) {
        auto text = read(entry.relative_path);
        if (!text) {
          indicator.well_formed = false;
          indicator.note = "unreadable";
          if (findings) {
            findings->push_back(make_finding(codes::kFileUnreadable, Severity::Warning,
                                             "indicator file could not be read",
                                             entry.relative_path));
          }
        } else if (rule.kind == IndicatorKind::citation_metadata) {
          indicator.well_formed = citation_well_formed(*text);
          if (!indicator.well_formed) indicator.note = "no cff-version key";
        } else {
          indicator.well_formed = !trim_view(*text).empty();
          if (!indicator.well_formed) indicator.note = "empty";
        }
      }
      out.push_back(std::move(indicator));
    }
  }
  return out;
}

CheckOutcome reusability_check(const RepoTree& tree,
                               const std::vector<Finding>& tree_findings,
                               const FileReader& read) {
  CheckOutcome outcome;
  outcome.check = CheckId::reusability;
  outcome.findings = tree_findings;

  auto indicators = detect_indicators(tree, read, &outcome.findings);
  auto first_of = [&](IndicatorKind kind) -> const ReuseIndicator* {
    for (const auto& i : indicators) {
      if (i.kind == kind) return &i;
    }
    return nullptr;
  };
  auto first_well_formed = [&](IndicatorKind kind) -> const ReuseIndicator* {
    for (const auto& i : indicators) {
      if (i.kind == kind && i.well_formed) return &i;
    }
    return nullptr;
  };

  // Mandatory set: readme + license, both well-formed.
  bool pass = true;
  if (const auto* readme = first_well_formed(IndicatorKind::readme)) {
    outcome.findings.push_back(make_finding(codes::kIndicatorPresent, Severity::Info,
                                            "readme present", readme->path));
  } else if (const auto* present = first_of(IndicatorKind::readme)) {
    pass = false;
    outcome.findings.push_back(make_finding(codes::kReadmeEmpty, Severity::Blocker,
                                            "README.md is empty", present->path));
  } else {
    pass = false;
    outcome.findings.push_back(make_finding(codes::kMissingReadme, Severity::Blocker,
                                            "no README.md at the repository root"));
  }
  if (const auto* license = first_well_formed(IndicatorKind::license)) {
    outcome.findings.push_back(make_finding(codes::kIndicatorPresent, Severity::Info,
                                            "license present", license->path));
  } else if (const auto* present = first_of(IndicatorKind::license)) {
    pass = false;
    outcome.findings.push_back(make_finding(codes::kLicenseEmpty, Severity::Blocker,
                                            "license file is empty", present->path));
  } else {
    pass = false;
    outcome.findings.push_back(make_finding(codes::kMissingLicense, Severity::Blocker,
                                            "no license file at the repository root"));
  }

  for (const auto& rule : indicator_table()) {
    if (rule.mandatory) continue;
    bool any = false;
    for (const auto& indicator : indicators) {
      if (indicator.kind != rule.kind) continue;
      any = true;
      if (indicator.well_formed) {
        outcome.findings.push_back(make_finding(
            codes::kIndicatorPresent, Severity::Info,
            std::string(to_string(rule.kind)) + " present", indicator.path));
      } else if (rule.kind == IndicatorKind::citation_metadata) {
        outcome.findings.push_back(make_finding(
            codes::kCitationMalformed, Severity::Warning,
            "CITATION.cff present but " + indicator.note.value_or("malformed"),
            indicator.path));
      }
    }
    if (!any) {
      outcome.findings.push_back(make_finding(
          codes::kIndicatorAbsent, Severity::Warning,
          std::string(to_string(rule.kind)) + " absent"));
    }
  }

  outcome.status = pass ? CheckStatus::Pass : CheckStatus::Fail;
  return outcome;
}

}  // namespace fairaudit
