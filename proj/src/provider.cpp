#include "fairaudit/provider.hpp"

#include <algorithm>
#include <system_error>

#include "fairaudit/strings.hpp"
#include "fairaudit/uri.hpp"

namespace fairaudit {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kGithubTemplate =
    "https://github.com/{owner}/{name}/archive/refs/heads/{ref}.tar.gz";
constexpr std::string_view kGitlabTemplate =
    "https://gitlab.com/{owner}/{name}/-/archive/{ref}/{name}-{ref}.tar.gz";
constexpr std::string_view kBitbucketTemplate =
    "https://bitbucket.org/{owner}/{name}/get/{ref}.tar.gz";

std::string strip_www(std::string host) {
  if (host.rfind("www.", 0) == 0) host.erase(0, 4);
  return host;
}

std::optional<RepoCoords> coords_from_path(const std::string& path) {
  std::vector<std::string> segments;
  for (auto& seg : split(path, '/')) {
    if (!seg.empty()) segments.push_back(seg);
  }
  if (segments.size() < 2) return std::nullopt;
  RepoCoords coords{segments[0], segments[1]};
  if (coords.name.size() > 4 && coords.name.ends_with(".git")) {
    coords.name.erase(coords.name.size() - 4);
  }
  if (coords.owner.empty() || coords.name.empty()) return std::nullopt;
  return coords;
}

std::string fill_template(std::string tmpl, const RepoCoords& coords, const std::string& ref) {
  replace_all(tmpl, "{owner}", coords.owner);
  replace_all(tmpl, "{name}", coords.name);
  replace_all(tmpl, "{ref}", ref);
  return tmpl;
}

}  // namespace

ProviderRegistry::ProviderRegistry() {
  hosts_["github.com"] = {ProviderKind::github, std::string(kGithubTemplate)};
  hosts_["gitlab.com"] = {ProviderKind::gitlab, std::string(kGitlabTemplate)};
  hosts_["bitbucket.org"] = {ProviderKind::bitbucket, std::string(kBitbucketTemplate)};
}

void ProviderRegistry::add_host(const std::string& host, ProviderKind kind,
                                std::string archive_template) {
  hosts_[strip_www(to_lower(host))] = {kind, std::move(archive_template)};
}

ProviderClassification ProviderRegistry::classify(const std::string& uri) const {
  ProviderClassification out;
  auto parsed = parse_uri(uri);
  if (!parsed) return out;
  auto it = hosts_.find(strip_www(parsed->host));
  if (it == hosts_.end()) return out;
  out.kind = it->second.kind;
  out.archive_template = it->second.archive_template;
  out.coords = coords_from_path(parsed->path);
  return out;
}

std::optional<std::string> ProviderRegistry::archive_url(const ProviderClassification& c,
                                                         const std::string& ref) const {
  if (c.kind == ProviderKind::generic || !c.coords || c.archive_template.empty()) {
    return std::nullopt;
  }
  return fill_template(c.archive_template, *c.coords, ref);
}

const ProviderRegistry& default_provider_registry() {
  static const ProviderRegistry registry;
  return registry;
}

ProviderClassification classify_provider(const std::string& uri) {
  return default_provider_registry().classify(uri);
}

std::optional<std::string> archive_url(ProviderKind kind, const RepoCoords& coords,
                                       const std::string& ref) {
  std::string_view tmpl;
  switch (kind) {
    case ProviderKind::github: tmpl = kGithubTemplate; break;
    case ProviderKind::gitlab: tmpl = kGitlabTemplate; break;
    case ProviderKind::bitbucket: tmpl = kBitbucketTemplate; break;
    case ProviderKind::generic: return std::nullopt;
  }
  return fill_template(std::string(tmpl), coords, ref);
}

bool RepoTree::contains(std::string_view relative_path) const {
  return find(relative_path) != nullptr;
}

const RepoTreeEntry* RepoTree::find(std::string_view relative_path) const {
  for (const auto& e : entries) {
    if (e.relative_path == relative_path) return &e;
  }
  return nullptr;
}

std::vector<const RepoTreeEntry*> RepoTree::files() const {
  std::vector<const RepoTreeEntry*> out;
  for (const auto& e : entries) {
    if (e.kind == TreeEntryKind::file) out.push_back(&e);
  }
  return out;
}

namespace {

void walk(const fs::path& root, const fs::path& dir, const std::string& prefix,
          std::vector<RepoTreeEntry>& entries, std::vector<Finding>* findings) {
  std::error_code ec;
  std::vector<fs::directory_entry> children;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    children.push_back(*it);
  }
  if (ec && findings) {
    findings->push_back(make_finding(codes::kFileUnreadable, Severity::Warning,
                                     "could not list directory: " + ec.message(),
                                     prefix.empty() ? dir.string() : prefix));
  }
  std::sort(children.begin(), children.end(),
            [](const fs::directory_entry& a, const fs::directory_entry& b) {
              return a.path().filename().string() < b.path().filename().string();
            });
  for (const auto& child : children) {
    std::string name = child.path().filename().string();
    std::string rel = prefix.empty() ? name : prefix + "/" + name;
    std::error_code sec;
    auto status = child.symlink_status(sec);
    if (sec) {
      if (findings) {
        findings->push_back(make_finding(codes::kFileUnreadable, Severity::Warning,
                                         "could not stat entry: " + sec.message(), rel));
      }
      continue;
    }
    if (fs::is_symlink(status)) {
      // recorded, never followed
      RepoTreeEntry entry{rel, TreeEntryKind::file, 0};
      entries.push_back(std::move(entry));
      continue;
    }
    if (fs::is_directory(status)) {
      entries.push_back({rel, TreeEntryKind::directory, 0});
      walk(root, child.path(), rel, entries, findings);
    } else if (fs::is_regular_file(status)) {
      std::error_code fec;
      auto size = fs::file_size(child.path(), fec);
      entries.push_back({rel, TreeEntryKind::file, fec ? 0 : size});
    }
    // sockets, fifos and other special files are not part of an artifact tree
  }
}

}  // namespace

RepoTree enumerate_tree(const fs::path& root, std::vector<Finding>* findings) {
  RepoTree tree;
  tree.root = root;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return tree;
  walk(root, root, "", tree.entries, findings);
  std::sort(tree.entries.begin(), tree.entries.end(),
            [](const RepoTreeEntry& a, const RepoTreeEntry& b) {
              return a.relative_path < b.relative_path;
            });
  return tree;
}

RepoTree enumerate_tree(const RetrievedArtifact& artifact, std::vector<Finding>* findings) {
  return enumerate_tree(artifact.root_path, findings);
}

}  // namespace fairaudit
