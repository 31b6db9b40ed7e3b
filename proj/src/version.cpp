#include "fairaudit/version.hpp"

#include <algorithm>
#include <cctype>

#include "fairaudit/strings.hpp"

namespace fairaudit {

namespace {

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

std::optional<int> parse_int(std::string_view s) {
  if (!is_digits(s) || s.size() > 9) return std::nullopt;
  int value = 0;
  for (char c : s) value = value * 10 + (c - '0');
  return value;
}

int phase_rank(const std::optional<PreRelease>& pre) {
  if (!pre) return 3;  // final release ranks above every pre-release
  switch (pre->phase) {
    case PrePhase::alpha: return 0;
    case PrePhase::beta: return 1;
    case PrePhase::rc: return 2;
  }
  return 3;
}

}  // namespace

std::optional<Version> parse_version(std::string_view input) {
  std::string_view s = trim_view(input);
  std::string raw(s);
  if (!s.empty() && (s.front() == 'v' || s.front() == 'V')) s.remove_prefix(1);
  if (s.empty()) return std::nullopt;

  // Split off an attached pre-release suffix: "a<N>", "b<N>" or "rc<N>"
  // immediately after the last release digit.
  std::optional<PreRelease> pre;
  auto suffix_start = s.find_first_not_of("0123456789.");
  if (suffix_start != std::string_view::npos) {
    auto suffix = s.substr(suffix_start);
    s = s.substr(0, suffix_start);
    PrePhase phase;
    if (suffix.size() >= 3 && suffix.substr(0, 2) == "rc") {
      phase = PrePhase::rc;
      suffix.remove_prefix(2);
    } else if (suffix.size() >= 2 && suffix[0] == 'a') {
      phase = PrePhase::alpha;
      suffix.remove_prefix(1);
    } else if (suffix.size() >= 2 && suffix[0] == 'b') {
      phase = PrePhase::beta;
      suffix.remove_prefix(1);
    } else {
      return std::nullopt;
    }
    auto number = parse_int(suffix);
    if (!number) return std::nullopt;
    pre = PreRelease{phase, *number};
  }

  Version v;
  for (auto& segment : split(s, '.')) {
    auto value = parse_int(segment);
    if (!value) return std::nullopt;
    v.release.push_back(*value);
  }
  if (v.release.empty()) return std::nullopt;
  v.pre = pre;
  v.raw = std::move(raw);
  return v;
}

int compare_versions(const Version& a, const Version& b) {
  size_t len = std::max(a.release.size(), b.release.size());
  for (size_t i = 0; i < len; ++i) {
    int av = i < a.release.size() ? a.release[i] : 0;
    int bv = i < b.release.size() ? b.release[i] : 0;
    if (av != bv) return av < bv ? -1 : 1;
  }
  int ar = phase_rank(a.pre);
  int br = phase_rank(b.pre);
  if (ar != br) return ar < br ? -1 : 1;
  if (a.pre && b.pre && a.pre->number != b.pre->number) {
    return a.pre->number < b.pre->number ? -1 : 1;
  }
  return 0;
}

bool constraint_valid(const VersionConstraint& c) {
  if (c.op == ConstraintOp::compatible) return c.version.release.size() >= 2;
  return !c.version.release.empty();
}

bool satisfies(const Version& v, const VersionConstraint& c) {
  int cmp = compare_versions(v, c.version);
  switch (c.op) {
    case ConstraintOp::eq: return cmp == 0;
    case ConstraintOp::ne: return cmp != 0;
    case ConstraintOp::le: return cmp <= 0;
    case ConstraintOp::ge: return cmp >= 0;
    case ConstraintOp::lt: return cmp < 0;
    case ConstraintOp::gt: return cmp > 0;
    case ConstraintOp::compatible: {
      // v >= c and v's release starts with c's release minus its last segment.
      if (cmp < 0) return false;
      if (c.version.release.size() < 2) return false;
      size_t prefix_len = c.version.release.size() - 1;
      for (size_t i = 0; i < prefix_len; ++i) {
        int vv = i < v.release.size() ? v.release[i] : 0;
        if (vv != c.version.release[i]) return false;
      }
      return true;
    }
  }
  return false;
}

bool satisfies_all(const Version& v, const std::vector<VersionConstraint>& cs) {
  return std::all_of(cs.begin(), cs.end(),
                     [&](const VersionConstraint& c) { return satisfies(v, c); });
}

std::optional<std::vector<VersionConstraint>> parse_constraint_list(std::string_view s) {
  std::vector<VersionConstraint> out;
  auto trimmed = trim_view(s);
  if (trimmed.empty()) return out;
  for (auto& clause_str : split(trimmed, ',')) {
    auto clause = trim_view(clause_str);
    if (clause.empty()) return std::nullopt;
    ConstraintOp op;
    size_t op_len = 2;
    if (clause.rfind("===", 0) == 0) return std::nullopt;  // arbitrary equality unsupported
    if (clause.rfind("~=", 0) == 0) op = ConstraintOp::compatible;
    else if (clause.rfind("==", 0) == 0) op = ConstraintOp::eq;
    else if (clause.rfind("!=", 0) == 0) op = ConstraintOp::ne;
    else if (clause.rfind("<=", 0) == 0) op = ConstraintOp::le;
    else if (clause.rfind(">=", 0) == 0) op = ConstraintOp::ge;
    else if (clause[0] == '<') { op = ConstraintOp::lt; op_len = 1; }
    else if (clause[0] == '>') { op = ConstraintOp::gt; op_len = 1; }
    else return std::nullopt;
    auto version = parse_version(clause.substr(op_len));
    if (!version) return std::nullopt;  // rejects wildcards, epochs, local labels
    VersionConstraint c{op, std::move(*version)};
    if (!constraint_valid(c)) return std::nullopt;
    out.push_back(std::move(c));
  }
  return out;
}

std::string_view to_string(ConstraintOp op) {
  switch (op) {
    case ConstraintOp::eq: return "==";
    case ConstraintOp::ne: return "!=";
    case ConstraintOp::le: return "<=";
    case ConstraintOp::ge: return ">=";
    case ConstraintOp::lt: return "<";
    case ConstraintOp::gt: return ">";
    case ConstraintOp::compatible: return "~=";
  }
  return "?";
}

std::string render(const VersionConstraint& c) {
  return std::string(to_string(c.op)) + c.version.raw;
}

std::string render(const std::vector<VersionConstraint>& cs) {
  std::string out;
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i > 0) out += ",";
    out += render(cs[i]);
  }
  return out;
}

}  // namespace fairaudit
