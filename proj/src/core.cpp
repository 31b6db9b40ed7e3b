#include "fairaudit/core.hpp"

#include <cstdio>
#include <ctime>

#include "fairaudit/strings.hpp"

namespace fairaudit {

bool ArtifactMetadata::valid() const {
  if (identifier && !trim_view(*identifier).empty()) return true;
  for (const auto& c : candidate_locations) {
    if (!trim_view(c).empty()) return true;
  }
  return false;
}

bool CheckOutcome::has_finding(std::string_view code) const {
  for (const auto& f : findings) {
    if (f.code == code) return true;
  }
  return false;
}

bool CheckOutcome::has_blocker() const {
  for (const auto& f : findings) {
    if (f.severity == Severity::Blocker) return true;
  }
  return false;
}

const std::array<CheckInfo, 4>& check_catalog() {
  static const std::array<CheckInfo, 4> catalog = {{
      {CheckId::findability, "findability",
       "Resolves the artifact's candidate locations and DOI via HTTP HEAD and "
       "reports the first reachable location.",
       "artifact metadata (candidate URIs and/or DOI)"},
      {CheckId::accessibility, "accessibility",
       "Retrieves the artifact from its resolved location via HTTP GET, "
       "extracting repository archives and discriminating failure causes.",
       "resolved location"},
      {CheckId::interoperability, "interoperability",
       "Parses the dependency manifest, inspects build metadata and CI "
       "workflows, and resolves interpreter and package requirements against "
       "an environment manifest.",
       "retrieved artifact tree and environment manifest"},
      {CheckId::reusability, "reusability",
       "Scans the artifact tree for documentation, license, environment "
       "encapsulation, notebook, workflow and citation-metadata indicators.",
       "retrieved artifact tree"},
  }};
  return catalog;
}

std::string_view to_string(CheckId id) {
  switch (id) {
    case CheckId::findability: return "findability";
    case CheckId::accessibility: return "accessibility";
    case CheckId::interoperability: return "interoperability";
    case CheckId::reusability: return "reusability";
  }
  return "unknown";
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Error: return "error";
  }
  return "unknown";
}

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::Info: return "info";
    case Severity::Warning: return "warning";
    case Severity::Blocker: return "blocker";
  }
  return "unknown";
}

std::string_view to_string(ProviderKind kind) {
  switch (kind) {
    case ProviderKind::github: return "github";
    case ProviderKind::gitlab: return "gitlab";
    case ProviderKind::bitbucket: return "bitbucket";
    case ProviderKind::generic: return "generic";
  }
  return "unknown";
}

std::string_view to_string(UriScheme scheme) {
  switch (scheme) {
    case UriScheme::https: return "https";
    case UriScheme::http: return "http";
  }
  return "unknown";
}

std::string_view to_string(ArtifactForm form) {
  switch (form) {
    case ArtifactForm::archive_extracted: return "archive_extracted";
    case ArtifactForm::single_file: return "single_file";
  }
  return "unknown";
}

std::optional<CheckId> parse_check_id(std::string_view s) {
  for (auto id : kAllChecks) {
    if (s == to_string(id)) return id;
  }
  return std::nullopt;
}

std::optional<CheckStatus> parse_check_status(std::string_view s) {
  for (auto st : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Error}) {
    if (s == to_string(st)) return st;
  }
  return std::nullopt;
}

std::optional<Severity> parse_severity(std::string_view s) {
  for (auto sev : {Severity::Info, Severity::Warning, Severity::Blocker}) {
    if (s == to_string(sev)) return sev;
  }
  return std::nullopt;
}

std::optional<ProviderKind> parse_provider_kind(std::string_view s) {
  for (auto k : {ProviderKind::github, ProviderKind::gitlab, ProviderKind::bitbucket,
                 ProviderKind::generic}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::optional<ArtifactForm> parse_artifact_form(std::string_view s) {
  for (auto f : {ArtifactForm::archive_extracted, ArtifactForm::single_file}) {
    if (s == to_string(f)) return f;
  }
  return std::nullopt;
}

const std::vector<FindingCodeInfo>& finding_catalog() {
  using namespace codes;
  static const std::vector<FindingCodeInfo> catalog = {
      {kPreconditionViolated, "blocker", "check input was null or invalid; the check body never ran"},
      {kInternalFault, "blocker", "unexpected internal failure while running a check"},
      {kIoFault, "blocker", "local filesystem problem (e.g. unwritable download directory)"},
      {kLinkRot, "blocker", "candidate location did not resolve (dead link, DNS/TLS failure, redirect loop)"},
      {kHeadFallback, "info", "server rejected HEAD; resolvability confirmed with a body-discarding GET"},
      {kAuthWall, "blocker", "retrieval blocked by an access restriction (HTTP 401/403)"},
      {kGone, "blocker", "resource no longer present at its location (HTTP 404/410)"},
      {kCorrupted, "blocker", "downloaded archive failed integrity checks or extraction"},
      {kTimeout, "blocker", "retrieval exceeded the configured timeout"},
      {kFetchFailed, "blocker", "retrieval failed for a reason outside the discriminated cases"},
      {kUnsafeArchivePath, "warning", "archive entry escaping the extraction root was skipped"},
      {kNoDependencyManifest, "blocker", "no requirements.txt at the repository root"},
      {kEncodingInvalid, "blocker", "manifest file is not valid UTF-8; parsing aborted for that file"},
      {kDirectiveSkipped, "warning", "requirements line starting with '-' (option/include) was skipped"},
      {kUnparseableRequirement, "warning", "requirements line did not match the supported grammar"},
      {kBuildMetadataFound, "info", "build metadata file present at the repository root"},
      {kNoBuildMetadata, "warning", "no setup.py or pyproject.toml at the repository root"},
      {kCiInvokesInterpreter, "info", "CI workflow invokes the Python interpreter"},
      {kCiPresentNoInterpreter, "info", "CI workflow present but no interpreter invocation matched"},
      {kNoCiWorkflow, "warning", "no CI workflow files found"},
      {kNoInterpreterConstraint, "info", "artifact declares no required interpreter version"},
      {kInterpreterCompatible, "info", "environment interpreter satisfies the declared requirement"},
      {kInterpreterIncompatible, "blocker", "environment interpreter violates the declared requirement"},
      {kDepOk, "info", "declared dependency satisfied by the environment"},
      {kDepMissing, "blocker", "declared dependency absent from the environment"},
      {kDepVersionConflict, "blocker", "environment package version violates a declared constraint"},
      {kMissingReadme, "blocker", "no README.md at the repository root"},
      {kReadmeEmpty, "blocker", "README.md present but empty after whitespace strip"},
      {kMissingLicense, "blocker", "no license file at the repository root"},
      {kLicenseEmpty, "blocker", "license file present but empty"},
      {kIndicatorPresent, "info", "optional reusability indicator present"},
      {kIndicatorAbsent, "warning", "optional reusability indicator absent"},
      {kCitationMalformed, "warning", "CITATION.cff present but missing a cff-version key"},
      {kFileUnreadable, "warning", "file or directory entry could not be read"},
      {kUpstreamUnavailable, "blocker", "a check this one depends on did not produce its input"},
      {kSkippedOffline, "info", "network check skipped for a local target; not counted in overall"},
      {kNoEnvironment, "blocker", "no environment manifest given and no interpreter found to capture one"},
  };
  return catalog;
}

Finding make_finding(std::string_view code, Severity severity, std::string message,
                     std::optional<std::string> context) {
  Finding f;
  f.code = std::string(code);
  f.severity = severity;
  f.message = std::move(message);
  f.context = std::move(context);
  return f;
}

std::string format_rfc3339(std::chrono::system_clock::time_point tp) {
  using namespace std::chrono;
  auto ms = duration_cast<milliseconds>(tp.time_since_epoch()).count();
  std::time_t secs = static_cast<std::time_t>(ms / 1000);
  int frac = static_cast<int>(ms % 1000);
  if (frac < 0) {  // pre-epoch timestamps
    frac += 1000;
    secs -= 1;
  }
  std::tm tm_utc{};
  gmtime_r(&secs, &tm_utc);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm_utc.tm_year + 1900, tm_utc.tm_mon + 1, tm_utc.tm_mday, tm_utc.tm_hour,
                tm_utc.tm_min, tm_utc.tm_sec, frac);
  return buf;
}

std::optional<std::chrono::system_clock::time_point> parse_rfc3339(std::string_view s) {
  int year, mon, day, hour, min, sec, milli = 0;
  char tail = 0;
  std::string str(s);
  int n = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3d%c", &year, &mon, &day,
                      &hour, &min, &sec, &milli, &tail);
  if (n == 8 && tail != 'Z') return std::nullopt;
  if (n < 7) {
    milli = 0;
    n = std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &year, &mon, &day, &hour,
                    &min, &sec, &tail);
    if (n != 7 || tail != 'Z') return std::nullopt;
  }
  std::tm tm_utc{};
  tm_utc.tm_year = year - 1900;
  tm_utc.tm_mon = mon - 1;
  tm_utc.tm_mday = day;
  tm_utc.tm_hour = hour;
  tm_utc.tm_min = min;
  tm_utc.tm_sec = sec;
  std::time_t secs = timegm(&tm_utc);
  if (secs == static_cast<std::time_t>(-1)) return std::nullopt;
  using namespace std::chrono;
  return system_clock::time_point(seconds(secs) + milliseconds(milli));
}

}  // namespace fairaudit
