#include "fockweight/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace fockweight {

namespace {

struct Token {
  std::string text;
  SourceLocation where;
};

// Whitespace-separated words of one line, comment stripped.
std::vector<Token> split_line(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({std::string(line.substr(i, j - i)), {lineno, i + 1}});
    i = j;
  }
  return out;
}

std::size_t parse_size(const std::string& text, SourceLocation where, const std::string& what) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      text.size() > 9)
    throw ConfigError(where, what + " must be a non-negative integer, found '" + text + "'");
  return std::stoul(text);
}

Rational parse_rational_at(const std::string& text, SourceLocation where) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Path path_at(const Graph& g, const std::string& text, SourceLocation where) {
  try {
    return parse_path(g, text);
  } catch (const ConfigError& e) {
    throw ConfigError(where, e.what());
  }
}

// Keys whose values name paths (single or lists), checked against the graph.
const std::set<std::string> kPathKeys = {"path", "expect_witness"};
const std::set<std::string> kPathListKeys = {"expect_bounded", "tails"};

}  // namespace

std::string TaskSpec::get(const std::string& key, const std::string& fallback) const {
  auto it = args.find(key);
  return it == args.end() ? fallback : it->second;
}

std::size_t TaskSpec::get_size(const std::string& key, std::size_t fallback) const {
  auto it = args.find(key);
  if (it == args.end()) return fallback;
  return parse_size(it->second, where, kind + " " + key);
}

std::vector<std::string> TaskSpec::get_list(const std::string& key) const { return split_list(get(key, "")); }

const std::map<std::string, std::vector<std::string>>& task_catalog() {
  static const std::map<std::string, std::vector<std::string>> catalog = {
      {"check-cocycle", {"horizon"}},
      {"companion", {"horizon"}},
      {"bounds", {"side", "path", "horizon", "expect", "expect_sup"}},
      {"classify", {"cap", "horizon", "expect_bounded"}},
      {"norms", {"side", "max_length", "horizon", "expect_at_most"}},
      {"commutant", {"horizon", "expect_dim"}},
      {"growth", {"path", "horizon", "expect", "expect_ratio_at_least", "ratio_from"}},
      {"double-commutant", {"horizon", "tails", "cap", "classify_horizon", "expect_gap", "expect_gap_at_least",
                            "expect_full"}},
      {"tails", {"cap", "horizon", "expect", "expect_witness"}},
      {"example-46", {"horizon"}},
      {"transport", {"horizon", "length"}},
      {"gauge", {"horizon", "length"}},
  };
  return catalog;
}

ScenarioConfig parse_scenario(std::string_view text, const std::string& source) {
  ScenarioConfig cfg;
  cfg.source = source;
  GraphSpec spec;
  std::map<std::string, SourceLocation> declared;
  std::vector<std::pair<GraphSpec::EdgeSpec, SourceLocation>> edges;
  std::optional<SourceLocation> weight_at;
  struct PendingPhase {
    std::string edge;
    std::optional<std::string> after;
    Rational re, im;
    SourceLocation where;
  };
  std::vector<PendingPhase> phases;

  // Line starts, for mapping offsets back to line/column.
  std::vector<std::size_t> starts{0};
  for (std::size_t i = 0; i < text.size(); ++i)
    if (text[i] == '\n') starts.push_back(i + 1);

  for (std::size_t li = 0; li < starts.size(); ++li) {
    const std::size_t begin = starts[li];
    const std::size_t end = li + 1 < starts.size() ? starts[li + 1] - 1 : text.size();
    const std::size_t lineno = li + 1;
    auto toks = split_line(text.substr(begin, end - begin), lineno);
    if (toks.empty()) continue;
    const std::string& head = toks[0].text;
    auto expect_count = [&](std::size_t n, const std::string& form) {
      if (toks.size() != n) throw ConfigError(toks[0].where, "expected `" + form + "`");
    };

    if (head == "name") {
      auto pos = text.substr(begin, end - begin).find("name") + 4;
      std::string rest(text.substr(begin + pos, end - begin - pos));
      if (auto h = rest.find('#'); h != std::string::npos) rest.erase(h);
      rest.erase(0, rest.find_first_not_of(" \t"));
      rest.erase(rest.find_last_not_of(" \t\r") + 1);
      cfg.name = rest;
    } else if (head == "vertex") {
      expect_count(2, "vertex <id>");
      if (!declared.emplace(toks[1].text, toks[1].where).second)
        throw ConfigError(toks[1].where, "duplicate identifier '" + toks[1].text + "'");
      spec.vertices.push_back(toks[1].text);
    } else if (head == "edge") {
      expect_count(5, "edge <id> <source> -> <range>");
      if (toks[3].text != "->") throw ConfigError(toks[3].where, "expected '->'");
      if (!declared.emplace(toks[1].text, toks[1].where).second)
        throw ConfigError(toks[1].where, "duplicate identifier '" + toks[1].text + "'");
      edges.push_back({{toks[1].text, toks[2].text, toks[4].text}, toks[1].where});
    } else if (head == "weight") {
      if (weight_at) throw ConfigError(toks[0].where, "second weight block");
      auto brace = text.find('{', begin + toks[0].where.column - 1);
      if (brace == std::string_view::npos || toks.size() < 2 || toks[1].text[0] != '{')
        throw ConfigError(toks[0].where, "expected `weight {`");
      // Scan to the closing brace, skipping comments.
      std::size_t i = brace + 1;
      bool comment = false;
      for (; i < text.size(); ++i) {
        if (text[i] == '\n') comment = false;
        else if (text[i] == '#') comment = true;
        else if (text[i] == '}' && !comment) break;
      }
      if (i >= text.size()) throw ConfigError(toks[0].where, "unterminated weight block");
      cfg.weight_text = std::string(text.substr(brace + 1, i - brace - 1));
      weight_at = SourceLocation{lineno, brace - begin + 2};
      // Resume after the closing brace; nothing else may follow on its line.
      auto close_line = static_cast<std::size_t>(std::upper_bound(starts.begin(), starts.end(), i) - starts.begin()) - 1;
      const std::size_t close_end = close_line + 1 < starts.size() ? starts[close_line + 1] - 1 : text.size();
      auto trailing = split_line(text.substr(i + 1, close_end - i - 1), close_line + 1);
      if (!trailing.empty()) {
        SourceLocation at = trailing[0].where;
        at.column += i + 1 - starts[close_line];
        throw ConfigError(at, "unexpected text after weight block");
      }
      li = close_line;
    } else if (head == "phase") {
      // phase <edge> [after <path>] = <re> <im>
      PendingPhase ph;
      ph.where = toks[0].where;
      std::size_t k = 1;
      if (toks.size() < 2) throw ConfigError(toks[0].where, "expected `phase <edge> [after <path>] = <re> <im>`");
      ph.edge = toks[k++].text;
      if (k < toks.size() && toks[k].text == "after") {
        if (k + 1 >= toks.size()) throw ConfigError(toks[k].where, "expected a path after 'after'");
        ph.after = toks[k + 1].text;
        k += 2;
      }
      if (toks.size() != k + 3 || toks[k].text != "=")
        throw ConfigError(toks[0].where, "expected `phase <edge> [after <path>] = <re> <im>`");
      ph.re = parse_rational_at(toks[k + 1].text, toks[k + 1].where);
      ph.im = parse_rational_at(toks[k + 2].text, toks[k + 2].where);
      phases.push_back(std::move(ph));
    } else if (head == "divergence") {
      for (std::size_t k = 1; k < toks.size(); ++k) {
        auto eq = toks[k].text.find('=');
        if (eq == std::string::npos) throw ConfigError(toks[k].where, "expected key=value");
        std::string key = toks[k].text.substr(0, eq), val = toks[k].text.substr(eq + 1);
        if (key == "ratio") {
          cfg.rule.ratio = parse_rational_at(val, toks[k].where);
          if (cfg.rule.ratio <= 1) throw ConfigError(toks[k].where, "divergence ratio must exceed 1");
        } else if (key == "run") {
          cfg.rule.run_length = parse_size(val, toks[k].where, "divergence run");
          if (cfg.rule.run_length == 0) throw ConfigError(toks[k].where, "divergence run must be positive");
        } else {
          throw ConfigError(toks[k].where, "unknown divergence setting '" + key + "'");
        }
      }
    } else if (head == "task") {
      if (toks.size() < 2) throw ConfigError(toks[0].where, "expected `task <kind> key=value ...`");
      TaskSpec t;
      t.kind = toks[1].text;
      t.where = toks[1].where;
      auto cat = task_catalog().find(t.kind);
      if (cat == task_catalog().end()) throw ConfigError(toks[1].where, "unknown task '" + t.kind + "'");
      for (std::size_t k = 2; k < toks.size(); ++k) {
        auto eq = toks[k].text.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError(toks[k].where, "expected key=value");
        std::string key = toks[k].text.substr(0, eq);
        if (std::find(cat->second.begin(), cat->second.end(), key) == cat->second.end())
          throw ConfigError(toks[k].where, "task '" + t.kind + "' has no argument '" + key + "'");
        std::string value = toks[k].text.substr(eq + 1);
        static const std::set<std::string> counts = {"horizon", "cap", "max_length", "length", "classify_horizon",
                                                     "ratio_from", "expect_gap", "expect_gap_at_least"};
        if (counts.count(key) || (key == "expect_dim" && value != "paths"))
          parse_size(value, toks[k].where, t.kind + " " + key);
        if (!t.args.emplace(key, std::move(value)).second)
          throw ConfigError(toks[k].where, "argument '" + key + "' given twice");
      }
      cfg.tasks.push_back(std::move(t));
    } else {
      throw ConfigError(toks[0].where, "unknown directive '" + head + "'");
    }
  }

  // Graph, with located diagnostics for dangling endpoints.
  if (spec.vertices.empty()) throw ConfigError("no vertices declared");
  std::set<std::string> vertex_names(spec.vertices.begin(), spec.vertices.end());
  for (const auto& [e, where] : edges) {
    if (!vertex_names.count(e.source))
      throw ConfigError(where, "edge '" + e.name + "' has undeclared source vertex '" + e.source + "'");
    if (!vertex_names.count(e.range))
      throw ConfigError(where, "edge '" + e.name + "' has undeclared range vertex '" + e.range + "'");
    spec.edges.push_back(e);
  }
  cfg.graph = Graph::validate(spec);

  if (!weight_at) throw ConfigError("no weight block");
  cfg.program = parse_weight_program(cfg.weight_text, &cfg.graph, *weight_at);

  for (const auto& ph : phases) {
    auto e = cfg.graph.find_edge(ph.edge);
    if (!e) throw ConfigError(ph.where, "unknown edge '" + ph.edge + "' in phase");
    Gaussian z(ph.re, ph.im);
    if (z.norm2() != 1) throw ConfigError(ph.where, "phase " + to_string(z) + " does not have modulus 1");
    if (ph.after) {
      Path v = path_at(cfg.graph, *ph.after, ph.where);
      if (v.range() != cfg.graph.source(*e))
        throw ConfigError(ph.where, "edge '" + ph.edge + "' does not extend path '" + *ph.after + "'");
      cfg.phases.overrides.push_back({v, *e, z});
    } else {
      cfg.phases.edge_phase[*e] = z;
    }
    cfg.has_phases = true;
  }

  for (const auto& t : cfg.tasks) {
    for (const auto& [key, val] : t.args) {
      if (kPathKeys.count(key)) path_at(cfg.graph, val, t.where);
      if (kPathListKeys.count(key) && val != "auto" && val != "none")
        for (const auto& p : split_list(val)) path_at(cfg.graph, p, t.where);
    }
  }
  if (cfg.name.empty()) cfg.name = source;
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scenario(ss.str(), path.filename().string());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ":" + (e.located() ? "" : " ") + e.what());
  }
}

}  // namespace fockweight
