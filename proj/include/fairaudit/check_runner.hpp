#pragma once

#include <functional>
#include <map>
#include <optional>

#include "fairaudit/core.hpp"
#include "fairaudit/environment.hpp"
#include "fairaudit/provider.hpp"

namespace fairaudit {

/// Check-specific input bundle. Each check reads only its own slots:
/// findability wants metadata, accessibility a location, interoperability a
/// tree plus environment, reusability a tree. tree_findings carries
/// diagnostics from producing the tree so they travel with the bundle.
struct CheckInput {
  std::optional<ArtifactMetadata> metadata;
  std::optional<Location> location;
  std::optional<RetrievedArtifact> artifact;
  std::optional<RepoTree> tree;
  std::vector<Finding> tree_findings;
  std::optional<EnvironmentManifest> environment;
};

/// Precondition findings for running `check` on `input`; empty means the
/// check may run. Null or invalid inputs are reported here, never passed on.
std::vector<Finding> violated_preconditions(CheckId check, const CheckInput& input);

/// Binds check bodies and runs them behind the shared guard: precondition
/// violations yield an Error outcome without invoking the body, anything the
/// body throws becomes an Error with INTERNAL_FAULT, and timing fields are
/// stamped on every outcome.
class CheckRunner {
 public:
  using Body = std::function<CheckOutcome(const CheckInput&)>;

  void bind(CheckId check, Body body);
  bool bound(CheckId check) const;

  CheckOutcome run(CheckId check, const CheckInput& input) const;

 private:
  std::map<CheckId, Body> bodies_;
};

}  // namespace fairaudit
