#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "fairaudit/version.hpp"

namespace fairaudit {

/// The environment interoperability is judged against: an interpreter version
/// plus the installed package set, keyed by normalized name.
struct EnvironmentManifest {
  Version interpreter_version;
  std::map<std::string, Version> packages;

  std::optional<Version> package_version(std::string_view normalized_name) const;
};

struct EnvironmentParse {
  std::optional<EnvironmentManifest> manifest;
  std::string error;  // set when manifest is empty
};

/// File format: UTF-8 text, first non-comment line "interpreter <version>",
/// then one "name==version" per line. "#" comments and blank lines allowed.
EnvironmentParse parse_environment_manifest(std::string_view text);

std::string serialize_environment_manifest(const EnvironmentManifest& env);

}  // namespace fairaudit
