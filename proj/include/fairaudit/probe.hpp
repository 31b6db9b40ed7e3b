#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fairaudit/core.hpp"

namespace fairaudit {

struct ProbePolicy {
  int timeout_s = 10;
  int max_redirects = 10;
  std::string user_agent = "fair-audit/0.1.0";
  bool head_fallback_to_get = true;
};

enum class ProbeMethod { Head, Get };

struct RedirectHop {
  std::string uri;  // the URI that answered with a redirect
  int status = 0;
};

/// The request ran to completion (any final status, including 4xx/5xx).
struct ProbeCompleted {
  int final_status = 0;
  std::string final_uri;
  std::vector<RedirectHop> redirect_chain;
};

/// DNS, connect, TLS, read or timeout failure before a final status.
struct ProbeTransportError {
  std::string message;
  std::string uri;  // where the failure happened
  bool timed_out = false;
};

struct ProbeTooManyRedirects {
  std::vector<RedirectHop> redirect_chain;
};

using ProbeResult = std::variant<ProbeCompleted, ProbeTransportError, ProbeTooManyRedirects>;

/// Issues one logical request, following redirects manually up to
/// policy.max_redirects. GET discards the body. Transport failures are a
/// result variant, never an exception.
ProbeResult probe_uri(const std::string& uri, ProbeMethod method, const ProbePolicy& policy);

struct ProbeCandidate {
  std::string uri;
  std::string source_entry;  // the metadata entry this candidate came from
};

/// Candidate order: candidate_locations as given (trimmed), then the DOI
/// expanded to "https://doi.org/<doi>" unless that URI is already present.
std::vector<ProbeCandidate> assemble_candidates(const ArtifactMetadata& metadata);

std::string expand_doi(std::string_view doi);

struct FindabilityResult {
  std::optional<Location> location;  // set iff the check passed
  std::vector<Finding> findings;
};

/// HEAD-probes candidates in order; first 2xx wins. Servers rejecting HEAD
/// with 405/501 are retried with GET when the policy allows, recorded as an
/// Info finding. Dead candidates surface as LINK_ROT findings.
FindabilityResult resolve_findability(const ArtifactMetadata& metadata,
                                      const ProbePolicy& policy);

/// The findability fitness function body (timing stamped by the runner).
CheckOutcome findability_check(const ArtifactMetadata& metadata, const ProbePolicy& policy);

}  // namespace fairaudit
