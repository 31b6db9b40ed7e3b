#include "fairaudit/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fairaudit {

using ordered_json = nlohmann::ordered_json;

bool outcome_is_skip(const CheckOutcome& outcome) {
  return outcome.has_finding(codes::kSkippedOffline);
}

CheckStatus aggregate_status(const std::vector<CheckOutcome>& outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("aggregate_status: target has no recorded outcomes");
  }
  bool any_fail = false;
  for (const auto& outcome : outcomes) {
    if (outcome_is_skip(outcome)) continue;
    if (outcome.status == CheckStatus::Error) return CheckStatus::Error;
    if (outcome.status == CheckStatus::Fail) any_fail = true;
  }
  return any_fail ? CheckStatus::Fail : CheckStatus::Pass;
}

namespace {

ordered_json location_to_json(const Location& loc) {
  ordered_json j;
  j["type"] = "location";
  j["uri"] = loc.uri;
  j["scheme"] = std::string(to_string(loc.scheme));
  j["resolved_from"] = loc.resolved_from;
  if (loc.provider_hint) j["provider"] = std::string(to_string(*loc.provider_hint));
  return j;
}

ordered_json artifact_to_json(const RetrievedArtifact& artifact) {
  ordered_json j;
  j["type"] = "artifact";
  j["form"] = std::string(to_string(artifact.form));
  j["root_path"] = artifact.root_path.string();
  j["payload_path"] = artifact.payload_path.string();
  j["byte_size"] = artifact.byte_size;
  j["content_hash"] = artifact.content_hash;
  j["retrieved_at"] = format_rfc3339(artifact.retrieved_at);
  j["source"] = location_to_json(artifact.source);
  return j;
}

ordered_json finding_to_json(const Finding& finding) {
  ordered_json j;
  j["code"] = finding.code;
  j["severity"] = std::string(to_string(finding.severity));
  j["message"] = finding.message;
  if (finding.context) j["context"] = *finding.context;
  return j;
}

ordered_json outcome_to_json(const CheckOutcome& outcome) {
  ordered_json j;
  j["check"] = std::string(to_string(outcome.check));
  j["status"] = std::string(to_string(outcome.status));
  j["started_at"] = format_rfc3339(outcome.started_at);
  j["duration_ms"] = outcome.duration_ms;
  if (outcome.payload) {
    if (const auto* loc = std::get_if<Location>(&*outcome.payload)) {
      j["payload"] = location_to_json(*loc);
    } else {
      j["payload"] = artifact_to_json(std::get<RetrievedArtifact>(*outcome.payload));
    }
  }
  ordered_json findings = ordered_json::array();
  for (const auto& finding : outcome.findings) findings.push_back(finding_to_json(finding));
  j["findings"] = std::move(findings);
  return j;
}

std::optional<Location> location_from_json(const ordered_json& j) {
  Location loc;
  if (!j.contains("uri") || !j.contains("resolved_from")) return std::nullopt;
  loc.uri = j["uri"].get<std::string>();
  loc.resolved_from = j["resolved_from"].get<std::string>();
  loc.scheme = j.value("scheme", "https") == "http" ? UriScheme::http : UriScheme::https;
  if (j.contains("provider")) {
    loc.provider_hint = parse_provider_kind(j["provider"].get<std::string>());
  }
  return loc;
}

std::optional<RetrievedArtifact> artifact_from_json(const ordered_json& j) {
  RetrievedArtifact artifact;
  if (!j.contains("root_path") || !j.contains("content_hash") || !j.contains("source")) {
    return std::nullopt;
  }
  artifact.root_path = j["root_path"].get<std::string>();
  artifact.payload_path = j.value("payload_path", std::string());
  artifact.byte_size = j.value("byte_size", std::uint64_t{0});
  artifact.content_hash = j["content_hash"].get<std::string>();
  if (auto form = parse_artifact_form(j.value("form", "single_file"))) artifact.form = *form;
  if (auto at = parse_rfc3339(j.value("retrieved_at", std::string()))) {
    artifact.retrieved_at = *at;
  }
  auto source = location_from_json(j["source"]);
  if (!source) return std::nullopt;
  artifact.source = std::move(*source);
  return artifact;
}

const char* status_glyph(const CheckOutcome& outcome) {
  if (outcome_is_skip(outcome)) return "[SKIP]";
  switch (outcome.status) {
    case CheckStatus::Pass: return "[PASS]";
    case CheckStatus::Fail: return "[FAIL]";
    case CheckStatus::Error: return "[ERR!]";
  }
  return "[????]";
}

}  // namespace

std::string render_report_json(const AuditReport& report) {
  ordered_json j;
  j["schema_version"] = std::string(kReportSchemaVersion);
  j["tool_version"] = report.tool_version;
  j["generated_at"] = format_rfc3339(report.generated_at);
  ordered_json targets = ordered_json::array();
  for (const auto& record : report.targets) {
    ordered_json t;
    t["target"] = record.target;
    t["overall"] = std::string(to_string(aggregate_status(record.outcomes)));
    ordered_json checks = ordered_json::array();
    for (const auto& outcome : record.outcomes) checks.push_back(outcome_to_json(outcome));
    t["checks"] = std::move(checks);
    targets.push_back(std::move(t));
  }
  j["targets"] = std::move(targets);
  return j.dump(2) + "\n";
}

std::string render_report_text(const AuditReport& report, bool verbose) {
  std::ostringstream out;
  int pass = 0, fail = 0, error = 0;
  for (const auto& record : report.targets) {
    CheckStatus overall = aggregate_status(record.outcomes);
    switch (overall) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++fail; break;
      case CheckStatus::Error: ++error; break;
    }
    out << record.target << "  overall: " << to_string(overall) << "\n";
    for (const auto& outcome : record.outcomes) {
      out << "  " << status_glyph(outcome) << " " << to_string(outcome.check) << " ("
          << outcome.duration_ms << " ms)\n";
      for (const auto& finding : outcome.findings) {
        if (finding.severity == Severity::Info && !verbose) continue;
        out << "      " << to_string(finding.severity) << " " << finding.code << ": "
            << finding.message;
        if (finding.context) out << " [" << *finding.context << "]";
        out << "\n";
      }
    }
  }
  out << report.targets.size() << (report.targets.size() == 1 ? " target: " : " targets: ")
      << pass << " pass, " << fail << " fail, " << error << " error\n";
  return out.str();
}

int report_exit_code(const AuditReport& report) {
  int code = 0;
  for (const auto& record : report.targets) {
    switch (aggregate_status(record.outcomes)) {
      case CheckStatus::Error: return 2;
      case CheckStatus::Fail: code = std::max(code, 1); break;
      case CheckStatus::Pass: break;
    }
  }
  return code;
}

std::optional<AuditReport> parse_report_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("schema_version", std::string()) != kReportSchemaVersion) return std::nullopt;
  if (!j.contains("targets") || !j["targets"].is_array()) return std::nullopt;

  AuditReport report;
  report.tool_version = j.value("tool_version", std::string());
  if (auto at = parse_rfc3339(j.value("generated_at", std::string()))) {
    report.generated_at = *at;
  }
  for (const auto& t : j["targets"]) {
    TargetRecord record;
    if (!t.contains("target") || !t.contains("checks") || !t["checks"].is_array()) {
      return std::nullopt;
    }
    record.target = t["target"].get<std::string>();
    for (const auto& c : t["checks"]) {
      CheckOutcome outcome;
      auto id = parse_check_id(c.value("check", std::string()));
      auto status = parse_check_status(c.value("status", std::string()));
      if (!id || !status) return std::nullopt;
      outcome.check = *id;
      outcome.status = *status;
      if (auto at = parse_rfc3339(c.value("started_at", std::string()))) {
        outcome.started_at = *at;
      }
      outcome.duration_ms = c.value("duration_ms", std::int64_t{0});
      if (c.contains("payload") && c["payload"].is_object()) {
        const auto& p = c["payload"];
        if (p.value("type", std::string()) == "artifact") {
          auto artifact = artifact_from_json(p);
          if (!artifact) return std::nullopt;
          outcome.payload = OutcomePayload{std::move(*artifact)};
        } else {
          auto loc = location_from_json(p);
          if (!loc) return std::nullopt;
          outcome.payload = OutcomePayload{std::move(*loc)};
        }
      }
      if (c.contains("findings") && c["findings"].is_array()) {
        for (const auto& f : c["findings"]) {
          Finding finding;
          finding.code = f.value("code", std::string());
          if (auto sev = parse_severity(f.value("severity", std::string()))) {
            finding.severity = *sev;
          }
          finding.message = f.value("message", std::string());
          if (f.contains("context")) finding.context = f["context"].get<std::string>();
          outcome.findings.push_back(std::move(finding));
        }
      }
      record.outcomes.push_back(std::move(outcome));
    }
    report.targets.push_back(std::move(record));
  }
  return report;
}

}  // namespace fairaudit
