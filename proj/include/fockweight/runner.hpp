#pragma once

// Executes scenario tasks and collects a versioned JSON report.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "fockweight/scenario.hpp"

namespace fockweight {

inline constexpr const char* kReportSchema = "fockweight.report/1";

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitConfig = 2, kExitResource = 3 };

struct RunOptions {
  std::size_t max_dimension = 600;  // cap on dim H_N for commutant problems
  std::size_t max_paths = 2'000'000;  // cap on enumerated paths per task
  std::uint64_t seed = 0x5eed;        // float power iteration only
  bool timings = false;               // adds elapsed_ms per task (breaks byte-identity)
};

struct RunOutcome {
  nlohmann::ordered_json report;
  std::string text;  // human-readable summary
  int exit_code = kExitOk;
};

RunOutcome run_scenario(const ScenarioConfig& cfg, const RunOptions& opts = {});

/// Runs a single task; the scenario's own task list is ignored.
RunOutcome run_single(const ScenarioConfig& cfg, const TaskSpec& task, const RunOptions& opts = {});

/// Number of paths of length <= horizon, saturating at `limit + 1`.
std::size_t count_paths(const Graph& g, std::size_t horizon, std::size_t limit);

}  // namespace fockweight
