// Acceptance gate for the auditor: ten end-to-end behaviors, each printed as
// one [PASS]/[FAIL]/[SKIP] line. The binary exits nonzero if any criterion
// fails; the network-gated live check may skip without failing the gate.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "fairaudit/audit.hpp"
#include "fairaudit/check_runner.hpp"
#include "fairaudit/fetch.hpp"
#include "fairaudit/interop.hpp"
#include "fairaudit/probe.hpp"
#include "fairaudit/requirements.hpp"
#include "fairaudit/reuse.hpp"
#include "fairaudit/version.hpp"
#include "support/fixture_server.hpp"
#include "support/tar_builder.hpp"
#include "support/temp_dir.hpp"
#include "support/version_oracle.hpp"

using namespace fairaudit;
using testsupport::FixtureServer;
using testsupport::TempDir;
using testsupport::write_file;

namespace {

struct SkippedCriterion {
  std::string reason;
};

/// Collects expectation failures so a criterion reports every problem at once.
class Gate {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }

  template <typename A, typename B>
  void expect_eq(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream msg;
      msg << what << " (got " << got << ", want " << want << ")";
      failures_.push_back(msg.str());
    }
  }

  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int closed_loopback_port() {
  FixtureServer scratch;
  scratch.start();
  return scratch.port();  // nothing listens here once scratch is gone
}

ArtifactMetadata metadata_for(const std::string& uri) {
  ArtifactMetadata md;
  md.display_name = uri;
  md.candidate_locations.push_back(uri);
  return md;
}

Location location_for(const std::string& uri) {
  Location loc;
  loc.uri = uri;
  loc.scheme = uri.rfind("https://", 0) == 0 ? UriScheme::https : UriScheme::http;
  loc.resolved_from = uri;
  return loc;
}

ProbePolicy quick_probe() {
  ProbePolicy policy;
  policy.timeout_s = 2;
  return policy;
}

bool has_code(const CheckOutcome& outcome, std::string_view code) {
  return outcome.has_finding(code);
}

EnvironmentManifest reference_environment() {
  EnvironmentManifest env;
  env.interpreter_version = *parse_version("3.10.2");
  env.packages["leftpad"] = *parse_version("1.2");
  return env;
}

std::string healthy_archive(const std::string& top) {
  return testsupport::provider_tar_gz(
      top, {testsupport::tar_file("README.md", "# Demo\n\nA worked example.\n"),
            testsupport::tar_file("LICENSE", "MIT License\n"),
            testsupport::tar_file("requirements.txt", "leftpad==1.2\n")});
}

std::string normalized_report(const AuditReport& report) {
  auto j = nlohmann::ordered_json::parse(render_report_json(report));
  j["generated_at"] = "";
  for (auto& target : j["targets"]) {
    for (auto& check : target["checks"]) {
      check["started_at"] = "";
      check["duration_ms"] = 0;
      if (check.contains("payload") && check["payload"].contains("retrieved_at")) {
        check["payload"]["retrieved_at"] = "";
      }
    }
  }
  return j.dump(2);
}

// --- 01: findability separates live, missing and unreachable targets --------

void criterion_findability_separation(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();

  FixtureServer server;
  server.raw().Get("/live", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok", "text/plain");
  });
  server.start();

  CheckOutcome live = findability_check(metadata_for(server.url("/live")), quick_probe());
  gate.expect(live.status == CheckStatus::Pass, "live target should pass findability");
  gate.expect(live.payload.has_value(), "pass outcome should carry a location payload");
  if (live.payload) {
    gate.expect_eq(std::get<Location>(*live.payload).uri, server.url("/live"),
                   "location should be the probed URI");
  }

  CheckOutcome missing =
      findability_check(metadata_for(server.url("/missing")), quick_probe());
  gate.expect(missing.status == CheckStatus::Fail, "404 target should fail findability");
  gate.expect(has_code(missing, codes::kLinkRot), "404 target should report LINK_ROT");

  const int dead_port = closed_loopback_port();
  CheckOutcome refused = findability_check(
      metadata_for("http://127.0.0.1:" + std::to_string(dead_port) + "/x"), quick_probe());
  gate.expect(refused.status == CheckStatus::Fail,
              "unreachable target should fail findability");
  gate.expect(has_code(refused, codes::kLinkRot),
              "unreachable target should report LINK_ROT");

  const double elapsed = seconds_since(t0);
  gate.expect(elapsed < 2.0,
              "findability separation took " + std::to_string(elapsed) + "s, budget 2s");
}

// --- 02: accessibility discriminates failure modes --------------------------

void criterion_accessibility_discrimination(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::string archive = healthy_archive("terrafit-main");
  const std::string truncated = archive.substr(0, archive.size() / 2);

  FixtureServer server;
  server.raw().Get("/fine/terrafit/archive/main.tar.gz",
                   [&](const httplib::Request&, httplib::Response& res) {
                     res.set_content(archive, "application/gzip");
                   });
  server.raw().Get(R"(/walled/repo/archive/.*)",
                   [](const httplib::Request&, httplib::Response& res) {
                     res.status = 403;
                     res.set_content("login required", "text/plain");
                   });
  server.raw().Get("/mangled/repo/archive/main.tar.gz",
                   [&](const httplib::Request&, httplib::Response& res) {
                     res.set_content(truncated, "application/gzip");
                   });
  server.start();

  ProviderRegistry registry;
  registry.add_host("127.0.0.1", ProviderKind::github,
                    server.url("/{owner}/{name}/archive/{ref}.tar.gz"));

  TempDir dir;
  FetchPolicy policy;
  policy.probe = quick_probe();

  policy.download_dir = dir.path() / "walled";
  CheckOutcome walled =
      accessibility_check(location_for(server.url("/walled/repo")), policy, registry);
  gate.expect(walled.status == CheckStatus::Fail, "403 archive should fail accessibility");
  gate.expect(has_code(walled, codes::kAuthWall), "403 archive should report AUTH_WALL");

  policy.download_dir = dir.path() / "mangled";
  CheckOutcome mangled =
      accessibility_check(location_for(server.url("/mangled/repo")), policy, registry);
  gate.expect(mangled.status == CheckStatus::Fail,
              "truncated archive should fail accessibility");
  gate.expect(has_code(mangled, codes::kCorrupted),
              "truncated archive should report CORRUPTED");

  policy.download_dir = dir.path() / "fine";
  CheckOutcome fine =
      accessibility_check(location_for(server.url("/fine/terrafit")), policy, registry);
  gate.expect(fine.status == CheckStatus::Pass, "healthy archive should pass accessibility");
  gate.expect(fine.payload.has_value(), "pass outcome should carry the artifact payload");
  if (fine.payload) {
    const auto& artifact = std::get<RetrievedArtifact>(*fine.payload);
    gate.expect_eq(artifact.root_path.filename().string(), std::string("terrafit"),
                   "extraction directory should be named after the repository");
    gate.expect(std::filesystem::exists(artifact.root_path / "README.md"),
                "extracted tree should contain README.md");
    gate.expect(artifact.byte_size == archive.size(),
                "artifact byte size should match the archive");
  }

  const double elapsed = seconds_since(t0);
  gate.expect(elapsed < 5.0,
              "accessibility discrimination took " + std::to_string(elapsed) + "s, budget 5s");
}

// --- 03: findable does not imply retrievable --------------------------------

void criterion_findable_not_retrievable(Gate& gate) {
  FixtureServer server;
  server.raw().Get("/walled/repo", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("project page", "text/plain");
  });
  server.raw().Get(R"(/walled/repo/archive/.*)",
                   [](const httplib::Request&, httplib::Response& res) {
                     res.status = 403;
                   });
  server.start();

  ProviderRegistry registry;
  registry.add_host("127.0.0.1", ProviderKind::github,
                    server.url("/{owner}/{name}/archive/{ref}.tar.gz"));

  CheckOutcome found = findability_check(metadata_for(server.url("/walled/repo")),
                                         quick_probe());
  gate.expect(found.status == CheckStatus::Pass,
              "the walled repository should still be findable");
  if (found.status != CheckStatus::Pass || !found.payload) return;

  TempDir dir;
  FetchPolicy policy;
  policy.probe = quick_probe();
  policy.download_dir = dir.path() / "dl";
  CheckOutcome fetched =
      accessibility_check(std::get<Location>(*found.payload), policy, registry);
  gate.expect(fetched.status == CheckStatus::Fail,
              "the same target must fail accessibility");
  gate.expect(has_code(fetched, codes::kAuthWall),
              "the failure should be attributed to the auth wall");
}

// --- 04: version constraints agree with a brute-force oracle ----------------

void criterion_version_oracle(Gate& gate) {
  const std::vector<std::string> versions = {
      "0",       "0.1",     "0.9.9",  "1",        "1.0",     "1.0.0",  "1.0.1",
      "1.1",     "1.2",     "1.2.3",  "1.2.10",   "1.10",    "2",      "2.0a1",
      "2.0a2",   "2.0b1",   "2.0rc1", "2.0rc2",   "2.0",     "2.0.1",  "2.2",
      "2.2.0",   "2.2.1",   "2.3",    "3.0.0rc1", "3.0.0",   "10.0",   "v1.2.3",
      "1.2.3a4", "0.0.0",
  };
  const std::vector<std::string> constraints = {
      "0.1", "1.0", "1.0.0", "1.2", "1.2.3", "2.0", "2.0rc1", "2.2", "2.2.0", "3.0.0",
      "1.2.10",
  };
  const std::vector<std::pair<std::string, ConstraintOp>> ops = {
      {"==", ConstraintOp::eq}, {"!=", ConstraintOp::ne}, {"<=", ConstraintOp::le},
      {">=", ConstraintOp::ge}, {"<", ConstraintOp::lt},  {">", ConstraintOp::gt},
      {"~=", ConstraintOp::compatible},
  };

  const auto t0 = std::chrono::steady_clock::now();
  int decided = 0;
  int disagreements = 0;
  std::string first_disagreement;

  for (const auto& vs : versions) {
    const auto parsed_v = parse_version(vs);
    if (!parsed_v) {
      gate.expect(false, "grid version failed to parse: " + vs);
      continue;
    }
    for (const auto& [op_text, op] : ops) {
      for (const auto& cs : constraints) {
        const auto expected = testsupport::oracle_satisfies(vs, op_text, cs);
        const auto parsed_c = parse_version(cs);
        if (!parsed_c) {
          gate.expect(false, "grid constraint failed to parse: " + cs);
          continue;
        }
        VersionConstraint constraint{op, *parsed_c};
        if (!expected.has_value()) {
          if (constraint_valid(constraint)) {
            ++disagreements;
            if (first_disagreement.empty()) {
              first_disagreement = vs + " " + op_text + cs + " (validity)";
            }
          }
          continue;
        }
        ++decided;
        if (satisfies(*parsed_v, constraint) != *expected) {
          ++disagreements;
          if (first_disagreement.empty()) first_disagreement = vs + " " + op_text + cs;
        }
      }
    }
  }

  gate.expect(decided >= 1400, "oracle grid should decide >= 1400 cases, decided " +
                                   std::to_string(decided));
  gate.expect(disagreements == 0,
              std::to_string(disagreements) + " oracle disagreement(s), first: " +
                  first_disagreement);
  const double elapsed = seconds_since(t0);
  gate.expect(elapsed < 1.0,
              "oracle sweep took " + std::to_string(elapsed) + "s, budget 1s");
}

// --- 05: requirement lines round-trip; odd lines never vanish ---------------

bool requirements_equal(const Requirement& a, const Requirement& b) {
  if (a.name != b.name || a.extras != b.extras || a.marker != b.marker) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    if (a.constraints[i].op != b.constraints[i].op) return false;
    if (compare_versions(a.constraints[i].version, b.constraints[i].version) != 0) {
      return false;
    }
  }
  return true;
}

void criterion_requirements_roundtrip(Gate& gate) {
  const std::vector<std::string> stems = {
      "requests", "NumPy",  "scikit_learn", "Flask", "pandas",        "Pillow",
      "tqdm",     "rich",   "Sphinx",       "attrs", "web.framework", "pyyaml",
  };
  const std::vector<std::string> extras_options = {"", "[dev]", "[security, socks]",
                                                   "[all]"};
  const std::vector<std::string> clause_options = {
      "",       "==1.0",       ">=1.2",    "<=2.0",          "<3",
      ">0.5",   "!=1.4",       "~=1.4.2",  ">=1.2, <2.0",    "==2.0rc1",
      ">=1.0,!=1.5,<2",
  };
  const std::vector<std::string> marker_options = {
      "", "; python_version < \"3.11\"", "; os_name == \"posix\""};

  int round_tripped = 0;
  for (const auto& stem : stems) {
    for (const auto& extras : extras_options) {
      for (const auto& clause : clause_options) {
        for (const auto& marker : marker_options) {
          const std::string line = stem + extras + clause + marker;
          ParsedRequirements first = parse_requirements(line);
          if (first.requirements.size() != 1 || !first.findings.empty()) {
            gate.expect(false, "generated line did not parse cleanly: " + line);
            continue;
          }
          const std::string rendered = render_requirement(first.requirements[0]);
          ParsedRequirements second = parse_requirements(rendered);
          if (second.requirements.size() != 1) {
            gate.expect(false, "rendered form did not reparse: " + rendered);
            continue;
          }
          if (!requirements_equal(first.requirements[0], second.requirements[0])) {
            gate.expect(false, "round trip changed the requirement: " + line + " -> " +
                                   rendered);
            continue;
          }
          ++round_tripped;
        }
      }
    }
  }
  gate.expect(round_tripped >= 1000, "round-tripped " + std::to_string(round_tripped) +
                                         " lines, need >= 1000");

  for (const std::string directive :
       {"-r other.txt", "--index-url https://mirror.example/simple", "-e .",
        "--find-links ./wheels"}) {
    ParsedRequirements parsed = parse_requirements(directive);
    gate.expect(parsed.requirements.empty(),
                "directive must not yield a requirement: " + directive);
    bool flagged = false;
    for (const auto& f : parsed.findings) {
      if (f.code == codes::kDirectiveSkipped) flagged = true;
    }
    gate.expect(flagged, "directive must be flagged, not dropped: " + directive);
  }

  for (const std::string malformed :
       {"torch ==", "== 1.0", "pkg >=> 1", "name[unclosed", "pkg ~= 1", "pkg === 3",
        "pkg >= 1..2"}) {
    ParsedRequirements parsed = parse_requirements(malformed);
    gate.expect(parsed.requirements.empty(),
                "malformed line must not yield a requirement: " + malformed);
    bool flagged = false;
    for (const auto& f : parsed.findings) {
      if (f.code == codes::kUnparseableRequirement) flagged = true;
    }
    gate.expect(flagged, "malformed line must be flagged, not dropped: " + malformed);
  }
}

// --- 06: interoperability truth table ---------------------------------------

void criterion_interop_truth_table(Gate& gate) {
  const EnvironmentManifest env = reference_environment();  // 3.10.2, leftpad 1.2
  TempDir dir;
  int case_index = 0;

  enum class Deps { satisfied, missing, conflicting, none };
  enum class Interp { compatible, incompatible, unconstrained };

  struct Combo {
    bool manifest_present;
    Deps deps;
    Interp interp;
  };
  std::vector<Combo> combos;
  for (Deps deps : {Deps::satisfied, Deps::missing, Deps::conflicting}) {
    for (Interp interp : {Interp::compatible, Interp::incompatible, Interp::unconstrained}) {
      combos.push_back({true, deps, interp});
    }
  }
  for (Interp interp : {Interp::compatible, Interp::incompatible, Interp::unconstrained}) {
    combos.push_back({false, Deps::none, interp});
  }

  for (const Combo& combo : combos) {
    auto root = dir.path() / ("case" + std::to_string(case_index++));
    std::filesystem::create_directories(root);
    std::string label;

    if (combo.manifest_present) {
      switch (combo.deps) {
        case Deps::satisfied:
          write_file(root / "requirements.txt", "leftpad==1.2\n");
          label += "deps-satisfied";
          break;
        case Deps::missing:
          write_file(root / "requirements.txt", "ghostpkg>=1\n");
          label += "deps-missing";
          break;
        case Deps::conflicting:
          write_file(root / "requirements.txt", "leftpad>=2\n");
          label += "deps-conflicting";
          break;
        case Deps::none: break;
      }
    } else {
      label += "manifest-absent";
    }
    switch (combo.interp) {
      case Interp::compatible:
        write_file(root / "pyproject.toml", "[project]\nrequires-python = \">=3.9\"\n");
        label += "/interp-compatible";
        break;
      case Interp::incompatible:
        write_file(root / "pyproject.toml", "[project]\nrequires-python = \">=3.12\"\n");
        label += "/interp-incompatible";
        break;
      case Interp::unconstrained:
        label += "/interp-unconstrained";
        break;
    }

    RepoTree tree = enumerate_tree(root);
    CheckOutcome outcome =
        interoperability_check(tree, {}, make_fs_reader(root), env);

    const bool expect_pass = combo.manifest_present && combo.deps == Deps::satisfied &&
                             combo.interp != Interp::incompatible;
    gate.expect((outcome.status == CheckStatus::Pass) == expect_pass,
                label + ": expected " + (expect_pass ? "Pass" : "Fail") + ", got " +
                    std::string(to_string(outcome.status)));

    if (!combo.manifest_present) {
      gate.expect(has_code(outcome, codes::kNoDependencyManifest),
                  label + ": missing manifest should be the cited blocker");
    }
    if (combo.deps == Deps::missing) {
      gate.expect(has_code(outcome, codes::kDepMissing),
                  label + ": missing dependency should be the cited blocker");
    }
    if (combo.deps == Deps::conflicting) {
      gate.expect(has_code(outcome, codes::kDepVersionConflict),
                  label + ": version conflict should be the cited blocker");
    }
    if (combo.interp == Interp::incompatible) {
      gate.expect(has_code(outcome, codes::kInterpreterIncompatible),
                  label + ": interpreter mismatch should be the cited blocker");
    }
    if (expect_pass) {
      gate.expect(!outcome.has_blocker(), label + ": a passing case must carry no blocker");
    }
  }
}

// --- 07: reusability mandatory set and indicator census ----------------------

void criterion_reusability(Gate& gate) {
  TempDir dir;
  auto build = [&](const std::string& name,
                   const std::vector<std::pair<std::string, std::string>>& files) {
    auto root = dir.path() / name;
    std::filesystem::create_directories(root);
    for (const auto& [rel, content] : files) write_file(root / rel, content);
    return root;
  };
  auto run = [&](const std::filesystem::path& root) {
    RepoTree tree = enumerate_tree(root);
    return reusability_check(tree, {}, make_fs_reader(root));
  };

  CheckOutcome ok = run(build("ok", {{"README.md", "# Hello\n"}, {"LICENSE", "MIT\n"}}));
  gate.expect(ok.status == CheckStatus::Pass, "README+LICENSE should pass reusability");

  CheckOutcome no_readme = run(build("no-readme", {{"LICENSE", "MIT\n"}}));
  gate.expect(no_readme.status == CheckStatus::Fail, "missing README should fail");
  gate.expect(has_code(no_readme, codes::kMissingReadme), "missing README should be cited");

  CheckOutcome empty_readme =
      run(build("empty-readme", {{"README.md", ""}, {"LICENSE", "MIT\n"}}));
  gate.expect(empty_readme.status == CheckStatus::Fail, "empty README should fail");
  gate.expect(has_code(empty_readme, codes::kReadmeEmpty), "empty README should be cited");

  CheckOutcome no_license = run(build("no-license", {{"README.md", "# Hi\n"}}));
  gate.expect(no_license.status == CheckStatus::Fail, "missing license should fail");
  gate.expect(has_code(no_license, codes::kMissingLicense),
              "missing license should be cited");

  CheckOutcome empty_license =
      run(build("empty-license", {{"README.md", "# Hi\n"}, {"LICENSE", ""}}));
  gate.expect(empty_license.status == CheckStatus::Fail, "empty license should fail");
  gate.expect(has_code(empty_license, codes::kLicenseEmpty),
              "empty license should be cited");

  auto census_root = build(
      "census", {{"README.md", "# Hi\n"},
                 {"LICENSE", "MIT\n"},
                 {"Dockerfile", "FROM python:3.10\n"},
                 {"environment.yml", "name: demo\ndependencies: []\n"},
                 {"analysis/figures.ipynb", "{\"cells\": []}\n"},
                 {".github/workflows/ci.yml", "on: push\n"},
                 {"CITATION.cff", "cff-version: 1.2.0\ntitle: Demo\n"}});
  RepoTree census_tree = enumerate_tree(census_root);
  auto indicators = detect_indicators(census_tree, make_fs_reader(census_root));
  for (IndicatorKind kind :
       {IndicatorKind::container_spec, IndicatorKind::env_spec, IndicatorKind::notebook,
        IndicatorKind::workflow, IndicatorKind::citation_metadata}) {
    bool seen = false;
    for (const auto& ind : indicators) {
      if (ind.kind == kind) seen = true;
    }
    gate.expect(seen, "census should detect indicator: " + std::string(to_string(kind)));
  }

  CheckOutcome census = run(census_root);
  gate.expect(census.status == CheckStatus::Pass, "full census fixture should pass");
  int present_infos = 0;
  for (const auto& f : census.findings) {
    if (f.code == codes::kIndicatorPresent && f.severity == Severity::Info) ++present_infos;
  }
  gate.expect(present_infos >= 7,
              "each present indicator should yield an Info finding, saw " +
                  std::to_string(present_infos));
}

// --- 08: batch determinism across runs and concurrency -----------------------

void criterion_batch_determinism(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::string archive = healthy_archive("terrafit-main");
  FixtureServer server;
  server.raw().Get("/fine/terrafit", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("project page", "text/plain");
  });
  server.raw().Get("/fine/terrafit/archive/main.tar.gz",
                   [&](const httplib::Request&, httplib::Response& res) {
                     res.set_content(archive, "application/gzip");
                   });
  server.raw().Get("/walled/repo", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("project page", "text/plain");
  });
  server.raw().Get(R"(/walled/repo/archive/.*)",
                   [](const httplib::Request&, httplib::Response& res) {
                     res.status = 403;
                   });
  server.start();

  TempDir dir;
  auto env_path = dir.path() / "env.txt";
  write_file(env_path, "interpreter 3.10.2\nleftpad==1.2\n");

  RunConfig config;
  config.download_dir = dir.path() / "artifacts";
  config.env_manifest_path = env_path;
  config.timeout_s = 2;
  config.providers.add_host("127.0.0.1", ProviderKind::github,
                            server.url("/{owner}/{name}/archive/{ref}.tar.gz"));
  const int dead_port = closed_loopback_port();
  config.targets = {server.url("/fine/terrafit"), server.url("/walled/repo"),
                    "http://127.0.0.1:" + std::to_string(dead_port) + "/gone"};

  config.concurrency = 1;
  AuditReport first = run_audit(config);
  AuditReport second = run_audit(config);
  config.concurrency = 4;
  AuditReport parallel = run_audit(config);

  const std::string n1 = normalized_report(first);
  const std::string n2 = normalized_report(second);
  const std::string n3 = normalized_report(parallel);
  gate.expect(n1 == n2, "two serial runs should agree byte for byte modulo timing");
  gate.expect(n1 == n3, "concurrency 1 and 4 should agree byte for byte modulo timing");

  gate.expect_eq(report_exit_code(first), 1, "one healthy + two broken targets exit 1");
  gate.expect_eq(report_exit_code(parallel), 1, "exit code is stable under concurrency");

  if (!first.targets.empty()) {
    gate.expect(aggregate_status(first.targets[0].outcomes) == CheckStatus::Pass,
                "the healthy target should pass overall");
  }

  const double elapsed = seconds_since(t0);
  gate.expect(elapsed < 60.0,
              "batch determinism took " + std::to_string(elapsed) + "s, budget 60s");
}

// --- 09: empty inputs error rather than fail ---------------------------------

void criterion_precondition_errors(Gate& gate) {
  CheckRunner runner;
  runner.bind(CheckId::findability, [](const CheckInput& input) {
    return findability_check(*input.metadata, quick_probe());
  });
  runner.bind(CheckId::accessibility, [](const CheckInput& input) {
    return accessibility_check(*input.location, FetchPolicy{}, default_provider_registry());
  });
  runner.bind(CheckId::interoperability, [](const CheckInput& input) {
    return interoperability_check(*input.tree, input.tree_findings,
                                  make_fs_reader(input.tree->root), *input.environment);
  });
  runner.bind(CheckId::reusability, [](const CheckInput& input) {
    return reusability_check(*input.tree, input.tree_findings,
                             make_fs_reader(input.tree->root));
  });

  const CheckInput empty;
  for (CheckId check : kAllChecks) {
    CheckOutcome outcome = runner.run(check, empty);
    const std::string name(to_string(check));
    gate.expect(outcome.status == CheckStatus::Error,
                name + " on empty input should be an Error, got " +
                    std::string(to_string(outcome.status)));
    gate.expect(has_code(outcome, codes::kPreconditionViolated),
                name + " should cite the violated precondition");
  }

  // The same checks produce Fail (not Error) on well-formed but unhealthy
  // inputs, so the two conditions stay distinguishable.
  TempDir dir;
  auto bare = dir.path() / "bare";
  std::filesystem::create_directories(bare);
  CheckInput unhealthy;
  unhealthy.tree = enumerate_tree(bare);
  unhealthy.environment = reference_environment();
  CheckOutcome reuse_fail = runner.run(CheckId::reusability, unhealthy);
  gate.expect(reuse_fail.status == CheckStatus::Fail,
              "an empty directory is a Fail for reusability, not an Error");
  CheckOutcome interop_fail = runner.run(CheckId::interoperability, unhealthy);
  gate.expect(interop_fail.status == CheckStatus::Fail,
              "an empty directory is a Fail for interoperability, not an Error");

  const int dead_port = closed_loopback_port();
  CheckInput dead;
  dead.metadata = metadata_for("http://127.0.0.1:" + std::to_string(dead_port) + "/x");
  CheckOutcome find_fail = runner.run(CheckId::findability, dead);
  gate.expect(find_fail.status == CheckStatus::Fail,
              "an unreachable target is a Fail for findability, not an Error");
}

// --- 10: live repository smoke test (network-gated, non-blocking) ------------

void criterion_live_smoke(Gate& gate) {
  ProbePolicy policy;
  policy.timeout_s = 15;
  const std::string repo = "https://github.com/hihey54/hicss58";

  CheckOutcome found = findability_check(metadata_for(repo), policy);
  if (found.status != CheckStatus::Pass || !found.payload) {
    std::string reason = "network unreachable";
    if (!found.findings.empty()) reason = found.findings.front().message;
    throw SkippedCriterion{"findability did not pass (" + reason + ")"};
  }

  TempDir dir;
  FetchPolicy fetch_policy;
  fetch_policy.probe = policy;
  fetch_policy.download_dir = dir.path() / "live";
  CheckOutcome fetched = accessibility_check(std::get<Location>(*found.payload),
                                             fetch_policy, default_provider_registry());
  if (fetched.status != CheckStatus::Pass || !fetched.payload) {
    std::string reason = "retrieval failed";
    if (!fetched.findings.empty()) reason = fetched.findings.front().message;
    throw SkippedCriterion{"accessibility did not pass (" + reason + ")"};
  }

  const auto& artifact = std::get<RetrievedArtifact>(*fetched.payload);
  gate.expect_eq(artifact.root_path.filename().string(), std::string("hicss58"),
                 "live artifact directory should be named after the repository");
  gate.expect(std::filesystem::exists(artifact.root_path),
              "live artifact tree should exist on disk");
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<void(Gate&)> body;
  };
  const std::vector<Criterion> criteria = {
      {"findability separates live, missing and unreachable targets",
       criterion_findability_separation},
      {"accessibility discriminates auth walls, corrupt archives and healthy repos",
       criterion_accessibility_discrimination},
      {"a findable target can still fail retrieval", criterion_findable_not_retrievable},
      {"version constraints agree with a brute-force oracle", criterion_version_oracle},
      {"requirement lines round-trip and odd lines are never dropped",
       criterion_requirements_roundtrip},
      {"interoperability verdicts follow the dependency/interpreter truth table",
       criterion_interop_truth_table},
      {"reusability demands README and license and censuses indicators",
       criterion_reusability},
      {"batch reports are deterministic across runs and concurrency",
       criterion_batch_determinism},
      {"empty inputs produce errors, not failures", criterion_precondition_errors},
      {"live repository smoke test", criterion_live_smoke},
  };

  int failed = 0;
  int skipped = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Gate gate;
    std::string skip_reason;
    std::string crash;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].body(gate);
    } catch (const SkippedCriterion& s) {
      skip_reason = s.reason;
    } catch (const std::exception& e) {
      crash = e.what();
    }
    const double elapsed = seconds_since(t0);

    char line[512];
    if (!skip_reason.empty()) {
      ++skipped;
      std::snprintf(line, sizeof line, "[SKIP] %02zu %s: %s", i + 1, criteria[i].label,
                    skip_reason.c_str());
    } else if (!crash.empty()) {
      ++failed;
      std::snprintf(line, sizeof line, "[FAIL] %02zu %s: unexpected exception: %s", i + 1,
                    criteria[i].label, crash.c_str());
    } else if (!gate.failures().empty()) {
      ++failed;
      std::snprintf(line, sizeof line, "[FAIL] %02zu %s: %s%s", i + 1, criteria[i].label,
                    gate.failures().front().c_str(),
                    gate.failures().size() > 1
                        ? (" (+" + std::to_string(gate.failures().size() - 1) + " more)")
                              .c_str()
                        : "");
    } else {
      std::snprintf(line, sizeof line, "[PASS] %02zu %s (%.2fs)", i + 1,
                    criteria[i].label, elapsed);
    }
    std::cout << line << "\n";
    if (!gate.failures().empty()) {
      for (const auto& failure : gate.failures()) {
        std::cout << "         - " << failure << "\n";
      }
    }
  }

  std::cout << "acceptance: " << (criteria.size() - failed - skipped) << " passed, "
            << failed << " failed, " << skipped << " skipped\n";
  return failed == 0 ? 0 : 1;
}
