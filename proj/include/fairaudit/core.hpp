#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fairaudit {

// The four checks, in FAIR order. This order is load-bearing: the catalog,
// report rendering and pipeline execution all follow it.
enum class CheckId { findability, accessibility, interoperability, reusability };

inline constexpr std::array<CheckId, 4> kAllChecks = {
    CheckId::findability, CheckId::accessibility, CheckId::interoperability,
    CheckId::reusability};

// Pass/Fail mirror the check's own verdict about the artifact. Error is
// reserved for violated preconditions and internal faults; an artifact that
// merely fails a check is never an Error.
enum class CheckStatus { Pass, Fail, Error };

enum class Severity { Info, Warning, Blocker };

enum class ProviderKind { github, gitlab, bitbucket, generic };

enum class UriScheme { https, http };

enum class ArtifactForm { archive_extracted, single_file };

/// One observation made by a check. Codes come from the closed catalog in
/// docs/finding-codes.md; downstream tooling matches on them.
struct Finding {
  std::string code;
  Severity severity = Severity::Info;
  std::string message;
  std::optional<std::string> context;  // path or URI the finding refers to
};

/// The findability input: everything we know about where an artifact might
/// live. Valid when at least one candidate location (after trimming) or the
/// identifier is non-empty.
struct ArtifactMetadata {
  std::vector<std::string> candidate_locations;  // probed in this order
  std::optional<std::string> identifier;         // DOI, "10.<registrant>/<suffix>"
  std::optional<std::string> display_name;

  bool valid() const;
};

/// A resolved, probe-confirmed URI. Produced by findability, consumed by
/// accessibility.
struct Location {
  std::string uri;  // absolute, post-redirect
  UriScheme scheme = UriScheme::https;
  std::string resolved_from;  // the metadata entry this came from
  std::optional<ProviderKind> provider_hint;
};

/// The downloaded object produced by accessibility. root_path is a directory:
/// the extracted tree for repository archives, the containing directory for
/// single-file downloads. payload_path keeps the raw download so content_hash
/// stays recomputable.
struct RetrievedArtifact {
  std::filesystem::path root_path;
  std::uint64_t byte_size = 0;
  std::string content_hash;  // sha256 hex of the raw payload
  Location source;
  std::chrono::system_clock::time_point retrieved_at{};
  ArtifactForm form = ArtifactForm::single_file;
  std::filesystem::path payload_path;
};

using OutcomePayload = std::variant<Location, RetrievedArtifact>;

/// Uniform result of one check run. The check's natural product (Location,
/// RetrievedArtifact) is preserved in payload; Pass/Fail/Error plus findings
/// carry everything a report needs.
struct CheckOutcome {
  CheckId check = CheckId::findability;
  CheckStatus status = CheckStatus::Error;
  std::vector<Finding> findings;
  std::chrono::system_clock::time_point started_at{};
  std::int64_t duration_ms = 0;
  std::optional<OutcomePayload> payload;

  bool has_finding(std::string_view code) const;
  bool has_blocker() const;
};

struct CheckInfo {
  CheckId id;
  std::string_view name;
  std::string_view description;
  std::string_view required_inputs;
};

/// The fixed catalog of checks, in FAIR order.
const std::array<CheckInfo, 4>& check_catalog();

std::string_view to_string(CheckId id);
std::string_view to_string(CheckStatus status);
std::string_view to_string(Severity severity);
std::string_view to_string(ProviderKind kind);
std::string_view to_string(UriScheme scheme);
std::string_view to_string(ArtifactForm form);

std::optional<CheckId> parse_check_id(std::string_view s);
std::optional<CheckStatus> parse_check_status(std::string_view s);
std::optional<Severity> parse_severity(std::string_view s);
std::optional<ProviderKind> parse_provider_kind(std::string_view s);
std::optional<ArtifactForm> parse_artifact_form(std::string_view s);

// Finding codes. The full table (code, severity, meaning) lives in
// docs/finding-codes.md; finding_catalog() is the in-code copy the docs are
// checked against.
namespace codes {
inline constexpr std::string_view kPreconditionViolated = "PRECONDITION_VIOLATED";
inline constexpr std::string_view kInternalFault = "INTERNAL_FAULT";
inline constexpr std::string_view kIoFault = "IO_FAULT";
inline constexpr std::string_view kLinkRot = "LINK_ROT";
inline constexpr std::string_view kHeadFallback = "HEAD_FALLBACK";
inline constexpr std::string_view kAuthWall = "AUTH_WALL";
inline constexpr std::string_view kGone = "GONE";
inline constexpr std::string_view kCorrupted = "CORRUPTED";
inline constexpr std::string_view kTimeout = "TIMEOUT";
inline constexpr std::string_view kFetchFailed = "FETCH_FAILED";
inline constexpr std::string_view kUnsafeArchivePath = "UNSAFE_ARCHIVE_PATH";
inline constexpr std::string_view kNoDependencyManifest = "NO_DEPENDENCY_MANIFEST";
inline constexpr std::string_view kEncodingInvalid = "ENCODING_INVALID";
inline constexpr std::string_view kDirectiveSkipped = "DIRECTIVE_SKIPPED";
inline constexpr std::string_view kUnparseableRequirement = "UNPARSEABLE_REQUIREMENT";
inline constexpr std::string_view kBuildMetadataFound = "BUILD_METADATA_FOUND";
inline constexpr std::string_view kNoBuildMetadata = "NO_BUILD_METADATA";
inline constexpr std::string_view kCiInvokesInterpreter = "CI_INVOKES_INTERPRETER";
inline constexpr std::string_view kCiPresentNoInterpreter = "CI_PRESENT_NO_INTERPRETER";
inline constexpr std::string_view kNoCiWorkflow = "NO_CI_WORKFLOW";
inline constexpr std::string_view kNoInterpreterConstraint = "NO_INTERPRETER_CONSTRAINT";
inline constexpr std::string_view kInterpreterCompatible = "INTERPRETER_COMPATIBLE";
inline constexpr std::string_view kInterpreterIncompatible = "INTERPRETER_INCOMPATIBLE";
inline constexpr std::string_view kDepOk = "DEP_OK";
inline constexpr std::string_view kDepMissing = "DEP_MISSING";
inline constexpr std::string_view kDepVersionConflict = "DEP_VERSION_CONFLICT";
inline constexpr std::string_view kMissingReadme = "MISSING_README";
inline constexpr std::string_view kReadmeEmpty = "README_EMPTY";
inline constexpr std::string_view kMissingLicense = "MISSING_LICENSE";
inline constexpr std::string_view kLicenseEmpty = "LICENSE_EMPTY";
inline constexpr std::string_view kIndicatorPresent = "INDICATOR_PRESENT";
inline constexpr std::string_view kIndicatorAbsent = "INDICATOR_ABSENT";
inline constexpr std::string_view kCitationMalformed = "CITATION_MALFORMED";
inline constexpr std::string_view kFileUnreadable = "FILE_UNREADABLE";
inline constexpr std::string_view kUpstreamUnavailable = "UPSTREAM_UNAVAILABLE";
inline constexpr std::string_view kSkippedOffline = "SKIPPED_OFFLINE";
inline constexpr std::string_view kNoEnvironment = "NO_ENVIRONMENT";
}  // namespace codes

struct FindingCodeInfo {
  std::string_view code;
  std::string_view severity;  // typical severity, human description
  std::string_view meaning;
};

/// Closed catalog of finding codes, for documentation and contract tests.
const std::vector<FindingCodeInfo>& finding_catalog();

Finding make_finding(std::string_view code, Severity severity, std::string message,
                     std::optional<std::string> context = std::nullopt);

// RFC 3339 UTC timestamps with millisecond precision, e.g.
// "2026-08-23T12:34:56.789Z".
std::string format_rfc3339(std::chrono::system_clock::time_point tp);
std::optional<std::chrono::system_clock::time_point> parse_rfc3339(std::string_view s);

}  // namespace fairaudit
