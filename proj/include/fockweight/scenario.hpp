#pragma once

// Scenario files: a graph, a weight program, optional phases and a task list.
//
//   name   two loops, trailing e halves
//   vertex phi
//   edge   e phi -> phi          # edge <id> <source> -> <range>
//   edge   f phi -> phi
//   weight {
//     rule trailing=e => 1/2
//     default => 1
//   }
//   phase  e = 0 1               # unit phase re im on every e-extension
//   phase  e after f = 3/5 4/5   # phase on the extension of path f by e
//   divergence ratio=3/2 run=4
//   task   check-cocycle horizon=8
//   task   tails cap=2 horizon=10 expect=holds_on_horizon expect_witness=e
//
// `#` starts a comment. Task arguments are key=value; lists are comma
// separated. Keys are checked per task kind when the file is loaded.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockweight/error.hpp"
#include "fockweight/graph.hpp"
#include "fockweight/weight_program.hpp"
#include "fockweight/weights.hpp"

namespace fockweight {

struct TaskSpec {
  std::string kind;
  std::map<std::string, std::string> args;
  SourceLocation where;

  bool has(const std::string& key) const { return args.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  /// Throws ConfigError (located at the task) when the value is not a
  /// non-negative integer.
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::vector<std::string> get_list(const std::string& key) const;
};

struct ScenarioConfig {
  std::string name;
  std::string source;  // file path or "<memory>"
  Graph graph;
  std::string weight_text;
  WeightProgram program;
  ComplexWeightSpec phases;
  bool has_phases = false;
  DivergenceRule rule;
  std::vector<TaskSpec> tasks;
};

/// Task kinds understood by the runner, with their allowed keys.
const std::map<std::string, std::vector<std::string>>& task_catalog();

/// Throws ConfigError with line/column on syntax or semantic errors.
ScenarioConfig parse_scenario(std::string_view text, const std::string& source = "<memory>");
/// Throws ConfigError (prefixed with the path) or std::runtime_error on I/O failure.
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace fockweight
