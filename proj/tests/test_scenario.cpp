#include <string>

#include "doctest.h"
#include "fockweight/runner.hpp"

using namespace fockweight;

namespace {

const std::string kHeader =
    "name loops\n"
    "vertex phi\n"
    "edge e phi -> phi\n"
    "edge f phi -> phi\n"
    "weight {\n"
    "  rule trailing=e => 1/2\n"
    "  default => 1\n"
    "}\n";

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::filesystem::path bundled(const char* name) { return std::filesystem::path(FOCKWEIGHT_SCENARIO_DIR) / name; }

}  // namespace

TEST_CASE("scenario parsing") {
  auto cfg = parse_scenario(kHeader + "phase e = 0 1\ntask commutant horizon=3 expect_dim=15\n");
  CHECK(cfg.name == "loops");
  CHECK(cfg.graph.edge_count() == 2);
  CHECK(cfg.has_phases);
  REQUIRE(cfg.tasks.size() == 1);
  CHECK(cfg.tasks[0].kind == "commutant");
  CHECK(cfg.tasks[0].get_size("horizon", 0) == 3);
  CHECK(cfg.tasks[0].where.line == 10);
}

TEST_CASE("scenario errors carry locations") {
  CHECK(error_of(kHeader + "task commutant horizon=3 bogus=1\n").rfind("9:", 0) == 0);
  CHECK(error_of(kHeader + "task nonsense\n").rfind("9:", 0) == 0);
  CHECK(error_of(kHeader + "edge g phi -> psi\n").rfind("9:", 0) == 0);
  CHECK(error_of(kHeader + "frobnicate\n").rfind("9:", 0) == 0);
  CHECK(error_of("vertex phi\nedge e phi -> phi\nweight {\n  rule trailing=g => 1/2\n  default => 1\n}\n")
            .find("unknown edge 'g'") != std::string::npos);
  CHECK(error_of("vertex phi\nedge e phi -> phi\nweight {\n  rule trailing=g => 1/2\n  default => 1\n}\n")
            .rfind("4:", 0) == 0);
  CHECK(error_of("vertex phi\nedge e phi -> phi\nweight {\n  default => 0\n}\n").rfind("4:", 0) == 0);
  CHECK_FALSE(error_of(kHeader + "task commutant horizon=x\n").empty());
}

TEST_CASE("exit codes") {
  auto ok = run_scenario(parse_scenario(kHeader + "task commutant horizon=3 expect_dim=15\n"));
  CHECK(ok.exit_code == kExitOk);
  CHECK(ok.report["schema"] == kReportSchema);

  auto bad = run_scenario(parse_scenario(kHeader + "task commutant horizon=3 expect_dim=14\n"));
  CHECK(bad.exit_code == kExitAssertion);

  auto no_phases = run_scenario(parse_scenario(kHeader + "task gauge horizon=3\n"));
  CHECK(no_phases.exit_code == kExitConfig);
  CHECK(no_phases.report["tasks"][0]["status"] == "config_error");

  RunOptions tight;
  tight.max_dimension = 10;
  auto capped = run_scenario(parse_scenario(kHeader + "task commutant horizon=3\n"), tight);
  CHECK(capped.exit_code == kExitResource);

  RunOptions few;
  few.max_paths = 100;
  auto many = run_scenario(parse_scenario(kHeader + "task check-cocycle horizon=30\n"), few);
  CHECK(many.exit_code == kExitResource);
}

TEST_CASE("bundled scenarios pass and reports are reproducible") {
  for (const char* name : {"ex45.cfg", "ex46.cfg", "ex47.cfg"}) {
    CAPTURE(name);
    auto cfg = load_scenario(bundled(name));
    auto a = run_scenario(cfg);
    CHECK(a.exit_code == kExitOk);
    auto b = run_scenario(load_scenario(bundled(name)));
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.text == b.text);
    for (const auto& t : a.report["tasks"]) CHECK(t["status"] != "fail");
  }
}
