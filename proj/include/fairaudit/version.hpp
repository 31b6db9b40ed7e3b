#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairaudit {

enum class PrePhase { alpha, beta, rc };  // a < b < rc, all before the final release

struct PreRelease {
  PrePhase phase = PrePhase::alpha;
  int number = 0;

  bool operator==(const PreRelease&) const = default;
};

/// Dotted-integer version with an optional attached pre-release suffix
/// ("1.2.0rc1"). Trailing zeros carry no meaning: comparisons zero-pad both
/// releases to equal length, so 1.0 == 1.0.0.
struct Version {
  std::vector<int> release;
  std::optional<PreRelease> pre;
  std::string raw;  // original string, round-trips through parse_version
};

std::optional<Version> parse_version(std::string_view s);

/// Total order: zero-padded lexicographic release comparison; on equal
/// releases a pre-release sorts before the final version (a < b < rc < final).
/// Returns <0, 0 or >0.
int compare_versions(const Version& a, const Version& b);

enum class ConstraintOp { eq, ne, le, ge, lt, gt, compatible };

struct VersionConstraint {
  ConstraintOp op = ConstraintOp::eq;
  Version version;
};

/// ~= requires a release of length >= 2 in the constraint version.
bool constraint_valid(const VersionConstraint& c);

bool satisfies(const Version& v, const VersionConstraint& c);
bool satisfies_all(const Version& v, const std::vector<VersionConstraint>& cs);

/// Parses a conjunctive specifier list like ">=1.2, <2.0" or "~=1.4.2".
/// An empty input yields an empty list (any version). nullopt on any
/// unparseable clause.
std::optional<std::vector<VersionConstraint>> parse_constraint_list(std::string_view s);

std::string_view to_string(ConstraintOp op);
std::string render(const VersionConstraint& c);
std::string render(const std::vector<VersionConstraint>& cs);

}  // namespace fairaudit
