#include "fairaudit/environment.hpp"

#include "fairaudit/requirements.hpp"
#include "fairaudit/strings.hpp"

namespace fairaudit {

std::optional<Version> EnvironmentManifest::package_version(
    std::string_view normalized_name) const {
  auto it = packages.find(std::string(normalized_name));
  if (it == packages.end()) return std::nullopt;
  return it->second;
}

EnvironmentParse parse_environment_manifest(std::string_view text) {
  EnvironmentParse out;
  if (!is_valid_utf8(text)) {
    out.error = "environment manifest is not valid UTF-8";
    return out;
  }
  EnvironmentManifest env;
  bool have_interpreter = false;
  int line_no = 0;
  for (auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto sv = trim_view(line);
    if (sv.empty() || sv.front() == '#') continue;
    if (!have_interpreter) {
      if (!sv.starts_with("interpreter")) {
        out.error = "line " + std::to_string(line_no) +
                    ": expected \"interpreter <version>\" as the first entry";
        return out;
      }
      auto version = parse_version(trim_view(sv.substr(11)));
      if (!version) {
        out.error = "line " + std::to_string(line_no) + ": unparseable interpreter version";
        return out;
      }
      env.interpreter_version = std::move(*version);
      have_interpreter = true;
      continue;
    }
    auto eq = sv.find("==");
    if (eq == std::string_view::npos) {
      out.error = "line " + std::to_string(line_no) + ": expected \"name==version\"";
      return out;
    }
    auto name = trim_view(sv.substr(0, eq));
    auto version = parse_version(trim_view(sv.substr(eq + 2)));
    if (name.empty() || !version) {
      out.error = "line " + std::to_string(line_no) + ": unparseable package entry";
      return out;
    }
    env.packages[normalize_package_name(name)] = std::move(*version);
  }
  if (!have_interpreter) {
    out.error = "missing \"interpreter <version>\" line";
    return out;
  }
  out.manifest = std::move(env);
  return out;
}

std::string serialize_environment_manifest(const EnvironmentManifest& env) {
  std::string out = "interpreter " + env.interpreter_version.raw + "\n";
  for (const auto& [name, version] : env.packages) {
    out += name + "==" + version.raw + "\n";
  }
  return out;
}

}  // namespace fairaudit
