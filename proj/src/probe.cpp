#include "fairaudit/probe.hpp"

#include <algorithm>
#include <chrono>

#include <httplib.h>

#include "fairaudit/strings.hpp"
#include "fairaudit/uri.hpp"

namespace fairaudit {

namespace {

bool is_redirect(int status) {
  return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

struct HopResult {
  bool transport_ok = false;
  int status = 0;
  std::string location_header;
  std::string error;
  bool timed_out = false;
};

HopResult request_once(const ParsedUri& uri, ProbeMethod method, const ProbePolicy& policy) {
  HopResult hop;
  httplib::Client cli(uri.origin());
  cli.set_follow_location(false);  // redirects are followed by the caller
  cli.set_connection_timeout(policy.timeout_s, 0);
  cli.set_read_timeout(policy.timeout_s, 0);
  cli.set_write_timeout(policy.timeout_s, 0);
  cli.set_default_headers({{"User-Agent", policy.user_agent}});
  // Availability is what we audit, not certificate trust; keep probing usable
  // on hosts without a resolvable CA chain.
  cli.enable_server_certificate_verification(false);

  const auto begun = std::chrono::steady_clock::now();
  httplib::Result res = method == ProbeMethod::Head
                            ? cli.Head(uri.target())
                            : cli.Get(uri.target(), [](const char*, size_t) { return true; });
  const auto elapsed = std::chrono::steady_clock::now() - begun;

  if (!res) {
    hop.error = httplib::to_string(res.error());
    const bool ran_out = elapsed >= std::chrono::seconds(policy.timeout_s);
    hop.timed_out = res.error() == httplib::Error::ConnectionTimeout ||
                    (ran_out && (res.error() == httplib::Error::Read ||
                                 res.error() == httplib::Error::Write ||
                                 res.error() == httplib::Error::Connection));
    return hop;
  }
  hop.transport_ok = true;
  hop.status = res->status;
  if (res->has_header("Location")) hop.location_header = res->get_header_value("Location");
  return hop;
}

}  // namespace

ProbeResult probe_uri(const std::string& uri, ProbeMethod method, const ProbePolicy& policy) {
  std::vector<RedirectHop> chain;
  std::string current = uri;

  for (;;) {
    auto parsed = parse_uri(current);
    if (!parsed) {
      return ProbeTransportError{"unsupported or malformed URI", current, false};
    }

    HopResult hop = request_once(*parsed, method, policy);
    if (!hop.transport_ok) {
      return ProbeTransportError{hop.error, current, hop.timed_out};
    }

    if (!is_redirect(hop.status)) {
      return ProbeCompleted{hop.status, current, std::move(chain)};
    }

    chain.push_back({current, hop.status});
    if (static_cast<int>(chain.size()) > policy.max_redirects) {
      return ProbeTooManyRedirects{std::move(chain)};
    }
    if (hop.location_header.empty()) {
      return ProbeTransportError{"redirect without Location header", current, false};
    }
    auto next = resolve_reference(current, hop.location_header);
    if (!next) {
      return ProbeTransportError{"unresolvable redirect target: " + hop.location_header,
                                 current, false};
    }
    if (hop.status == 303) method = ProbeMethod::Get;
    current = *next;
  }
}

std::string expand_doi(std::string_view doi) {
  std::string d = trim(doi);
  // Accept identifiers already written as resolver URLs or with a doi: prefix.
  if (d.rfind("https://", 0) == 0 || d.rfind("http://", 0) == 0) return d;
  if (d.size() > 4 && (d.rfind("doi:", 0) == 0 || d.rfind("DOI:", 0) == 0)) {
    d = trim(std::string_view(d).substr(4));
  }
  return "https://doi.org/" + d;
}

std::vector<ProbeCandidate> assemble_candidates(const ArtifactMetadata& metadata) {
  std::vector<ProbeCandidate> out;
  auto seen = [&out](const std::string& uri) {
    return std::any_of(out.begin(), out.end(),
                       [&uri](const ProbeCandidate& c) { return c.uri == uri; });
  };
  for (const auto& entry : metadata.candidate_locations) {
    std::string uri = trim(entry);
    if (uri.empty() || seen(uri)) continue;
    out.push_back({uri, uri});
  }
  if (metadata.identifier) {
    std::string id = trim(*metadata.identifier);
    if (!id.empty()) {
      std::string uri = expand_doi(id);
      if (!seen(uri)) out.push_back({uri, id});
    }
  }
  return out;
}

FindabilityResult resolve_findability(const ArtifactMetadata& metadata,
                                      const ProbePolicy& policy) {
  FindabilityResult result;
  const auto candidates = assemble_candidates(metadata);

  for (const auto& candidate : candidates) {
    ProbeMethod method = ProbeMethod::Head;
    ProbeResult probed = probe_uri(candidate.uri, method, policy);

    if (auto* done = std::get_if<ProbeCompleted>(&probed)) {
      if ((done->final_status == 405 || done->final_status == 501) &&
          policy.head_fallback_to_get) {
        Finding fb = make_finding(codes::kHeadFallback, Severity::Info,
                                  "HEAD rejected with " + std::to_string(done->final_status) +
                                      ", retried with GET",
                                  candidate.uri);
        result.findings.push_back(std::move(fb));
        probed = probe_uri(candidate.uri, ProbeMethod::Get, policy);
      }
    }

    if (auto* done = std::get_if<ProbeCompleted>(&probed)) {
      if (done->final_status >= 200 && done->final_status < 300) {
        auto location = make_location(done->final_uri, candidate.source_entry);
        if (location) {
          result.location = std::move(*location);
          // Earlier dead candidates stop blocking once something resolved.
          for (auto& f : result.findings) {
            if (f.code == codes::kLinkRot) f.severity = Severity::Warning;
          }
          return result;
        }
        result.findings.push_back(make_finding(codes::kLinkRot, Severity::Blocker,
                                               "resolved to an unusable URI: " + done->final_uri,
                                               candidate.uri));
        continue;
      }
      result.findings.push_back(make_finding(codes::kLinkRot, Severity::Blocker,
                                             "final status " + std::to_string(done->final_status),
                                             candidate.uri));
      continue;
    }

    if (auto* err = std::get_if<ProbeTransportError>(&probed)) {
      std::string what = err->timed_out ? "timed out: " + err->message
                                        : "unreachable: " + err->message;
      result.findings.push_back(
          make_finding(codes::kLinkRot, Severity::Blocker, std::move(what), candidate.uri));
      continue;
    }

    const auto& loop = std::get<ProbeTooManyRedirects>(probed);
    result.findings.push_back(make_finding(
        codes::kLinkRot, Severity::Blocker,
        "redirect chain exceeded " + std::to_string(policy.max_redirects) + " hops",
        candidate.uri));
    (void)loop;
  }

  return result;
}

CheckOutcome findability_check(const ArtifactMetadata& metadata, const ProbePolicy& policy) {
  CheckOutcome outcome;
  outcome.check = CheckId::findability;

  FindabilityResult resolved = resolve_findability(metadata, policy);
  outcome.findings = std::move(resolved.findings);
  if (resolved.location) {
    outcome.status = CheckStatus::Pass;
    outcome.payload = OutcomePayload{std::move(*resolved.location)};
  } else {
    outcome.status = CheckStatus::Fail;
  }
  return outcome;
}

}  // namespace fairaudit
