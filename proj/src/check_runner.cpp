#include "fairaudit/check_runner.hpp"

#include <chrono>
#include <exception>

#include "fairaudit/strings.hpp"
#include "fairaudit/uri.hpp"

namespace fairaudit {

std::vector<Finding> violated_preconditions(CheckId check, const CheckInput& input) {
  std::vector<Finding> violations;
  auto violated = [&](std::string message) {
    violations.push_back(make_finding(codes::kPreconditionViolated, Severity::Blocker,
                                      std::move(message)));
  };
  switch (check) {
    case CheckId::findability:
      if (!input.metadata) {
        violated("findability requires artifact metadata; none supplied");
      } else if (!input.metadata->valid()) {
        violated("metadata must carry at least one candidate location or an identifier");
      }
      break;
    case CheckId::accessibility:
      if (!input.location) {
        violated("accessibility requires a resolved location; none supplied");
      } else if (!parse_uri(input.location->uri)) {
        violated("location URI is not an absolute http(s) URI: \"" +
                 input.location->uri + "\"");
      }
      break;
    case CheckId::interoperability:
      if (!input.tree) violated("interoperability requires a retrieved artifact; none supplied");
      if (!input.environment) violated("interoperability requires an environment manifest");
      break;
    case CheckId::reusability:
      if (!input.tree) violated("reusability requires a retrieved artifact; none supplied");
      break;
  }
  return violations;
}

void CheckRunner::bind(CheckId check, Body body) { bodies_[check] = std::move(body); }

bool CheckRunner::bound(CheckId check) const { return bodies_.count(check) > 0; }

CheckOutcome CheckRunner::run(CheckId check, const CheckInput& input) const {
  auto started_at = std::chrono::system_clock::now();
  auto t0 = std::chrono::steady_clock::now();
  auto stamp = [&](CheckOutcome outcome) {
    outcome.started_at = started_at;
    outcome.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
    return outcome;
  };

  CheckOutcome outcome;
  outcome.check = check;

  auto violations = violated_preconditions(check, input);
  if (!violations.empty()) {
    outcome.status = CheckStatus::Error;
    outcome.findings = std::move(violations);
    return stamp(std::move(outcome));
  }

  auto it = bodies_.find(check);
  if (it == bodies_.end()) {
    outcome.status = CheckStatus::Error;
    outcome.findings.push_back(make_finding(codes::kInternalFault, Severity::Blocker,
                                            "no body bound for check \"" +
                                                std::string(to_string(check)) + "\""));
    return stamp(std::move(outcome));
  }

  try {
    return stamp(it->second(input));
  } catch (const std::exception& e) {
    outcome.status = CheckStatus::Error;
    outcome.findings.push_back(make_finding(codes::kInternalFault, Severity::Blocker,
                                            std::string("check body threw: ") + e.what()));
    return stamp(std::move(outcome));
  } catch (...) {
    outcome.status = CheckStatus::Error;
    outcome.findings.push_back(make_finding(codes::kInternalFault, Severity::Blocker,
                                            "check body threw a non-standard exception"));
    return stamp(std::move(outcome));
  }
}

}  // namespace fairaudit
