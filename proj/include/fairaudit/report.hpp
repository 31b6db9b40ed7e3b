#pragma once

#include <string>
#include <vector>

#include "fairaudit/core.hpp"

namespace fairaudit {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kReportSchemaVersion = "1";

struct TargetRecord {
  std::string target;  // exactly as given on the command line
  std::vector<CheckOutcome> outcomes;
};

struct AuditReport {
  std::string tool_version{kToolVersion};
  std::chrono::system_clock::time_point generated_at{};
  std::vector<TargetRecord> targets;
};

/// Worst status wins: error > fail > pass. Outcomes whose only purpose is to
/// record a skip (SKIPPED_OFFLINE) do not count toward the aggregate. Throws
/// std::invalid_argument on an empty outcome list.
CheckStatus aggregate_status(const std::vector<CheckOutcome>& outcomes);

bool outcome_is_skip(const CheckOutcome& outcome);

/// Stable-key-order JSON document; identical audits produce byte-identical
/// output except for the timestamp and duration fields.
std::string render_report_json(const AuditReport& report);

/// Human-readable summary. Info findings are shown only when verbose.
std::string render_report_text(const AuditReport& report, bool verbose);

/// 0 = every target passed, 1 = at least one fail, 2 = at least one error.
int report_exit_code(const AuditReport& report);

std::optional<AuditReport> parse_report_json(const std::string& text);

}  // namespace fairaudit
