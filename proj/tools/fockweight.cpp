#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fockweight/runner.hpp"

using namespace fockweight;
using nlohmann::ordered_json;

namespace {

struct Common {
  std::string config;
  std::string json_out;
  RunOptions opts;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config, "scenario file")->required();
  cmd->add_option("--json", c.json_out, "write the JSON report to this file ('-' for stdout)");
  cmd->add_option("--seed", c.opts.seed, "seed for float power iteration");
  cmd->add_option("--max-dim", c.opts.max_dimension, "largest dim H_N for commutant problems");
  cmd->add_option("--max-paths", c.opts.max_paths, "largest number of enumerated paths per task");
  cmd->add_flag("--timings", c.opts.timings, "add elapsed_ms to each task");
}

int emit(const Common& c, const ordered_json& report, const std::string& text) {
  if (c.json_out == "-") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
    if (!c.json_out.empty()) {
      std::ofstream out(c.json_out);
      if (!out) {
        std::cerr << "fockweight: cannot write " << c.json_out << "\n";
        return kExitConfig;
      }
      out << report.dump(2) << "\n";
    }
  }
  return 0;
}

TaskSpec make_task(std::string kind, std::map<std::string, std::string> args) {
  TaskSpec t;
  t.kind = std::move(kind);
  t.args = std::move(args);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Fock space operators on directed graphs"};
  app.require_subcommand(1);

  Common c;
  std::size_t horizon = 0, cap = 0;
  std::string path, side = "left", tails = "auto";

  auto* run = app.add_subcommand("run", "run every task of a scenario");
  add_common(run, c);

  auto* paths = app.add_subcommand("paths", "list paths up to a length");
  add_common(paths, c);
  paths->add_option("--horizon", horizon, "largest path length")->required();

  auto* norms = app.add_subcommand("norms", "bound and norms of one weighted shift");
  add_common(norms, c);
  norms->add_option("--path", path, "path w, edges separated by '.' or juxtaposed")->required();
  norms->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
  norms->add_option("--horizon", horizon, "truncation horizon (default 8)");

  auto* commutant = app.add_subcommand("commutant", "windowed commutant of the left generators");
  add_common(commutant, c);
  commutant->add_option("--horizon", horizon, "truncation horizon")->required();

  auto* probe = app.add_subcommand("probe", "double-commutant probe");
  add_common(probe, c);
  probe->add_option("--cap", cap, "largest tail length for automatic tails")->required();
  probe->add_option("--horizon", horizon, "truncation horizon")->required();
  probe->add_option("--tails", tails, "comma-separated paths, 'auto' or 'none'");

  auto* tail_cmd = app.add_subcommand("tails", "tail-condition search");
  add_common(tail_cmd, c);
  tail_cmd->add_option("--cap", cap, "largest length of v and of witnesses")->required();
  tail_cmd->add_option("--horizon", horizon, "classification horizon (default 2*cap+8)");

  CLI11_PARSE(app, argc, argv);

  try {
    ScenarioConfig cfg = load_scenario(c.config);
    RunOutcome outcome;
    const auto h = [&](std::size_t fallback) { return std::to_string(horizon ? horizon : fallback); };

    if (app.got_subcommand(run)) {
      outcome = run_scenario(cfg, c.opts);
    } else if (app.got_subcommand(paths)) {
      if (count_paths(cfg.graph, horizon, c.opts.max_paths) > c.opts.max_paths) {
        std::cerr << "fockweight: more than " << c.opts.max_paths << " paths\n";
        return kExitResource;
      }
      PathTable table(cfg.graph, horizon);
      ordered_json list = ordered_json::array();
      std::string text;
      for (const Path& p : table) {
        list.push_back({{"path", label(cfg.graph, p)}, {"length", p.length()}});
        text += label(cfg.graph, p) + "\n";
      }
      ordered_json report = {{"schema", kReportSchema},
                             {"scenario", cfg.name},
                             {"horizon", horizon},
                             {"count", table.size()},
                             {"paths", list}};
      text += std::to_string(table.size()) + " paths of length <= " + std::to_string(horizon) + "\n";
      return emit(c, report, text);
    } else if (app.got_subcommand(norms)) {
      outcome = run_single(cfg, make_task("bounds", {{"side", side}, {"path", path}, {"horizon", h(8)}}), c.opts);
    } else if (app.got_subcommand(commutant)) {
      outcome = run_single(cfg, make_task("commutant", {{"horizon", h(4)}}), c.opts);
    } else if (app.got_subcommand(probe)) {
      outcome = run_single(
          cfg, make_task("double-commutant", {{"horizon", h(5)}, {"cap", std::to_string(cap)}, {"tails", tails}}),
          c.opts);
    } else if (app.got_subcommand(tail_cmd)) {
      outcome = run_single(cfg, make_task("tails", {{"cap", std::to_string(cap)}, {"horizon", h(2 * cap + 8)}}),
                           c.opts);
    }
    if (int rc = emit(c, outcome.report, outcome.text)) return rc;
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "fockweight: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "fockweight: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "fockweight: " << e.what() << "\n";
    return kExitConfig;
  }
}
