#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairaudit/core.hpp"

namespace fairaudit {

struct RepoCoords {
  std::string owner;
  std::string name;  // trailing ".git" stripped
};

struct ProviderClassification {
  ProviderKind kind = ProviderKind::generic;
  std::optional<RepoCoords> coords;
  // Archive URL template with {owner} {name} {ref} placeholders; empty for
  // generic targets.
  std::string archive_template;
};

/// Host-based provider classification with the three built-in hosts plus any
/// configured institutional mappings. Classification is total: unknown hosts
/// map to generic.
class ProviderRegistry {
 public:
  ProviderRegistry();

  void add_host(const std::string& host, ProviderKind kind, std::string archive_template);

  ProviderClassification classify(const std::string& uri) const;
  std::optional<std::string> archive_url(const ProviderClassification& c,
                                         const std::string& ref) const;

 private:
  struct HostRule {
    ProviderKind kind;
    std::string archive_template;
  };
  std::map<std::string, HostRule> hosts_;
};

const ProviderRegistry& default_provider_registry();

ProviderClassification classify_provider(const std::string& uri);

/// Archive URL for the built-in providers; nullopt for generic.
std::optional<std::string> archive_url(ProviderKind kind, const RepoCoords& coords,
                                       const std::string& ref);

enum class TreeEntryKind { file, directory };

struct RepoTreeEntry {
  std::string relative_path;  // forward slashes, no "..", no leading "/"
  TreeEntryKind kind = TreeEntryKind::file;
  std::uint64_t byte_size = 0;
};

/// Enumerated artifact file tree. Entries are sorted by relative path, which
/// places every directory before its children.
struct RepoTree {
  std::filesystem::path root;
  std::vector<RepoTreeEntry> entries;

  bool contains(std::string_view relative_path) const;
  const RepoTreeEntry* find(std::string_view relative_path) const;
  std::vector<const RepoTreeEntry*> files() const;
};

RepoTree enumerate_tree(const std::filesystem::path& root,
                        std::vector<Finding>* findings = nullptr);
RepoTree enumerate_tree(const RetrievedArtifact& artifact,
                        std::vector<Finding>* findings = nullptr);

}  // namespace fairaudit
