#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fairaudit/core.hpp"
#include "fairaudit/probe.hpp"
#include "fairaudit/provider.hpp"

namespace fairaudit {

struct FetchPolicy {
  ProbePolicy probe;                              // timeout / redirect budget reuse
  std::filesystem::path download_dir;             // per-target working directory
  std::vector<std::string> refs = {"main", "master"};  // branch candidates, in order
  std::uint64_t max_payload_bytes = 512ull << 20;
};

struct FetchResult {
  std::optional<RetrievedArtifact> artifact;  // set iff retrieval succeeded
  std::vector<Finding> findings;
  bool io_fault = false;  // local filesystem problem; maps to an Error outcome
  std::string io_error;
};

/// Retrieves the artifact behind a resolved location. Recognized hosting
/// providers are fetched as repository archives (trying each ref candidate)
/// and extracted under download_dir; anything else is downloaded as a single
/// file. Failures are discriminated into AUTH_WALL / GONE / CORRUPTED /
/// TIMEOUT / FETCH_FAILED findings.
FetchResult fetch_artifact(const Location& location, const FetchPolicy& policy,
                           const ProviderRegistry& registry);

/// The accessibility fitness function body (timing stamped by the runner).
CheckOutcome accessibility_check(const Location& location, const FetchPolicy& policy,
                                 const ProviderRegistry& registry);

}  // namespace fairaudit
