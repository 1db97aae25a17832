#include "fockweight/runner.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "fockweight/commutant.hpp"

namespace fockweight {

using nlohmann::ordered_json;

namespace {

constexpr std::size_t kSampleLimit = 5;

std::string join(const std::vector<std::string>& parts, const std::string& sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

ordered_json rationals(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

class TaskRun {
 public:
  TaskRun(const ScenarioConfig& cfg, const WeightModel& model, const RunOptions& opts, const TaskSpec& task)
      : cfg(cfg), g(cfg.graph), model(model), opts(opts), task(task) {}

  const ScenarioConfig& cfg;
  const Graph& g;
  const WeightModel& model;
  const RunOptions& opts;
  const TaskSpec& task;

  ordered_json result = ordered_json::object();
  ordered_json assertions = ordered_json::array();
  ordered_json warnings = ordered_json::array();
  std::ostringstream text;
  std::size_t failed = 0;

  std::string name(const Path& p) const { return label(g, p); }
  ordered_json names(const std::vector<Path>& ps) const {
    ordered_json a = ordered_json::array();
    for (const auto& p : ps) a.push_back(name(p));
    return a;
  }
  Path path(const std::string& key) const {
    if (!task.has(key)) throw ConfigError(task.where, "task '" + task.kind + "' needs " + key + "=");
    return parse_path(g, task.get(key, ""));
  }
  std::vector<Path> paths(const std::string& key) const {
    std::vector<Path> out;
    for (const auto& s : task.get_list(key)) out.push_back(parse_path(g, s));
    return out;
  }
  Rational rational(const std::string& key) const {
    try {
      return parse_rational(task.get(key, ""));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(task.where, key + ": " + e.what());
    }
  }
  Side side() const {
    std::string s = task.get("side", "left");
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    throw ConfigError(task.where, "side must be left or right, found '" + s + "'");
  }
  std::size_t horizon(std::size_t fallback) const {
    std::size_t n = task.get_size("horizon", fallback);
    guard(n);
    return n;
  }
  void guard(std::size_t n) const {
    if (count_paths(g, n, opts.max_paths) > opts.max_paths)
      throw ResourceCapExceeded("more than " + std::to_string(opts.max_paths) + " paths up to length " +
                                std::to_string(n));
  }

  void check(const std::string& what, bool pass, const std::string& expected, const std::string& actual) {
    assertions.push_back({{"check", what}, {"pass", pass}, {"expected", expected}, {"actual", actual}});
    if (!pass) ++failed;
    text << "  " << (pass ? "PASS " : "FAIL ") << what << " (expected " << expected << ", got " << actual << ")\n";
  }
  void note(const std::string& line) { text << "  " << line << "\n"; }
  void warn(const std::string& w) {
    warnings.push_back(w);
    text << "  warning: " << w << "\n";
  }
};

ordered_json violation_samples(const TaskRun& run, const std::vector<Violation>& vs) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < vs.size() && i < kSampleLimit; ++i)
    a.push_back({{"paths", run.names(vs[i].paths)}, {"lhs", to_string(vs[i].lhs)}, {"rhs", to_string(vs[i].rhs)}});
  return a;
}

ordered_json mismatch_samples(const std::vector<OperatorMismatch>& ms) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < ms.size() && i < kSampleLimit; ++i)
    a.push_back({{"what", ms[i].what}, {"row", ms[i].row}, {"col", ms[i].col}, {"lhs", ms[i].lhs}, {"rhs", ms[i].rhs}});
  return a;
}

ordered_json bound_json(const TaskRun& run, const BoundReport& b) {
  return {{"path", run.name(b.target)},
          {"side", to_string(b.side)},
          {"horizon", b.horizon},
          {"level_maxima", rationals(b.level_maxima)},
          {"sup", to_string(b.sup)},
          {"verdict", to_string(b.verdict)},
          {"certificate", b.certificate}};
}

void task_check_cocycle(TaskRun& run) {
  const std::size_t n = run.horizon(8);
  auto left = check_left_cocycle(run.g, run.model.lambda, n);
  auto right = check_right_cocycle(run.g, run.model.rho, n);
  auto square = check_commuting_square(run.g, run.model.lambda, run.model.rho, n);
  run.result = {{"horizon", n},
                {"left_violations", left.size()},
                {"right_violations", right.size()},
                {"square_violations", square.size()},
                {"left_samples", violation_samples(run, left)},
                {"right_samples", violation_samples(run, right)},
                {"square_samples", violation_samples(run, square)}};
  run.check("left cocycle", left.empty(), "0 violations", std::to_string(left.size()));
  run.check("right cocycle", right.empty(), "0 violations", std::to_string(right.size()));
  run.check("commuting square", square.empty(), "0 violations", std::to_string(square.size()));
}

void task_companion(TaskRun& run) {
  const std::size_t n = run.horizon(6);
  RightWeight canonical = canonical_companion(run.g, run.model.lambda, n);
  std::size_t edge_failures = 0;
  for (EdgeId e : run.g.edge_ids()) {
    Path pe = Path::edge(run.g, e);
    if (canonical(Path::vertex(run.g.range(e)), pe) != run.model.lambda(Path::vertex(run.g.source(e)), pe))
      ++edge_failures;
  }
  std::size_t differs = 0, round_trip = 0;
  PathTable table(run.g, n);
  for (const Path& p : table) {
    if (run.model.lambda.path_weight(p) != run.model.alpha->alpha(p)) ++round_trip;
    for (std::size_t i = 0; i <= p.length(); ++i) {
      Path v = p.slice(run.g, 0, i), u = p.slice(run.g, i, p.length());
      if (canonical(v, u) != run.model.rho(v, u)) ++differs;
    }
  }
  run.result = {{"horizon", n},
                {"edge_condition_failures", edge_failures},
                {"differs_from_path_weight_companion", differs},
                {"path_weight_round_trip_failures", round_trip}};
  run.check("rho(r(e),e) = lambda(s(e),e) on every edge", edge_failures == 0, "0", std::to_string(edge_failures));
  run.check("canonical companion equals rho_alpha", differs == 0, "0", std::to_string(differs));
  run.check("alpha -> lambda -> alpha round trip", round_trip == 0, "0", std::to_string(round_trip));
}

void task_bounds(TaskRun& run) {
  const std::size_t n = run.horizon(8);
  const Path w = run.path("path");
  PathTable table(run.g, n);
  BoundReport b = empirical_bound(run.model, run.side(), w, table, n, run.cfg.rule);
  run.result = bound_json(run, b);
  run.note(to_string(b.side) + " bound at " + run.name(w) + ": sup " + to_string(b.sup) + ", " + to_string(b.verdict));
  if (run.task.has("expect"))
    run.check("verdict", to_string(b.verdict) == run.task.get("expect", ""), run.task.get("expect", ""),
              to_string(b.verdict));
  if (run.task.has("expect_sup")) {
    Rational want = run.rational("expect_sup");
    run.check("window supremum", b.sup == want, to_string(want), to_string(b.sup));
  }
}

void task_classify(TaskRun& run) {
  const std::size_t cap = run.task.get_size("cap", 3);
  const std::size_t n = run.horizon(std::max<std::size_t>(8, cap));
  GRhoClassification c = classify_g_rho(run.model, cap, n, run.cfg.rule);
  ordered_json members = ordered_json::array();
  for (const auto& m : c.members)
    members.push_back({{"path", run.name(m.path)},
                       {"verdict", to_string(m.report.verdict)},
                       {"sup", to_string(m.report.sup)}});
  ordered_json closure = ordered_json::array();
  for (const auto& [a, b] : c.closure_violations) closure.push_back({run.name(a), run.name(b)});
  auto bounded = c.bounded_paths();
  run.result = {{"cap", cap},
                {"horizon", n},
                {"run_length", c.rule.run_length},
                {"bounded", run.names(bounded)},
                {"members", members},
                {"closure_violations", closure}};
  std::vector<std::string> got;
  for (const auto& p : bounded) got.push_back(run.name(p));
  run.note("bounded class: {" + join(got) + "}");
  run.check("bounded class closed under composition", c.closure_violations.empty(), "0 violations",
            std::to_string(c.closure_violations.size()));
  if (run.task.has("expect_bounded")) {
    auto want_paths = run.paths("expect_bounded");
    std::set<Path> want(want_paths.begin(), want_paths.end()), have(bounded.begin(), bounded.end());
    std::vector<std::string> want_names;
    for (const auto& p : want) want_names.push_back(run.name(p));
    run.check("bounded class", want == have, "{" + join(want_names) + "}", "{" + join(got) + "}");
  }
}

void task_norms(TaskRun& run) {
  const std::size_t n = run.horizon(8);
  const std::size_t max_len = run.task.get_size("max_length", 3);
  const Side side = run.side();
  auto basis = FockBasis::make(run.g, n);
  PowerIterationOptions po;
  po.seed = run.opts.seed;
  ordered_json rows = ordered_json::array();
  std::size_t mismatched = 0, above = 0;
  std::optional<Rational> bound;
  if (run.task.has("expect_at_most")) bound = run.rational("expect_at_most");
  for (std::size_t i = 0; i < basis->dimension() && basis->grade(i) <= max_len; ++i) {
    const Path& w = basis->path(i);
    RationalOperator op = side == Side::Left ? build_L(basis, run.model.lambda, w) : build_R(basis, run.model.rho, w);
    NormResult nr = truncated_norm(op, po);
    Rational window(0);
    for (std::size_t c = 0; c < basis->dimension() && basis->grade(c) + w.length() <= n; ++c) {
      const Path& v = basis->path(c);
      Rational val = side == Side::Left ? run.model.lambda(v, w) : run.model.rho(v, w);
      if (val > window) window = val;
    }
    const bool match = nr.rational && *nr.rational == window;
    if (!match) ++mismatched;
    if (bound && nr.rational && *nr.rational > *bound) ++above;
    rows.push_back({{"path", run.name(w)},
                    {"norm", nr.rational ? to_string(*nr.rational) : std::to_string(nr.value)},
                    {"exact", nr.exact},
                    {"window_max", to_string(window)}});
  }
  run.result = {{"side", to_string(side)}, {"horizon", n}, {"max_length", max_len}, {"norms", rows}};
  run.check("norm equals window maximum for every |w| <= " + std::to_string(max_len), mismatched == 0, "0 mismatches",
            std::to_string(mismatched));
  if (bound) run.check("norms at most " + to_string(*bound), above == 0, "0 above", std::to_string(above));
}

void task_commutant(TaskRun& run) {
  const std::size_t n = run.horizon(4);
  auto basis = FockBasis::make(run.g, n);
  auto sol = solve_windowed_commutant({basis, left_generators(basis, run.model.lambda), run.opts.max_dimension});
  OracleComparison oc = compare_with_structured(sol, run.model.rho);
  run.result = {{"horizon", n},
                {"basis_dimension", basis->dimension()},
                {"equations", sol.equations},
                {"dimension", sol.dimension()},
                {"oracle", {{"solver_rank", oc.solver_rank},
                            {"structured_rank", oc.structured_rank},
                            {"union_rank", oc.union_rank}}}};
  run.note("windowed commutant of the left generators: dimension " + std::to_string(sol.dimension()));
  if (run.task.has("expect_dim")) {
    std::string e = run.task.get("expect_dim", "");
    std::size_t want = e == "paths" ? basis->dimension() : run.task.get_size("expect_dim", 0);
    run.check("commutant dimension", sol.dimension() == want, std::to_string(want), std::to_string(sol.dimension()));
  }
  run.check("agrees with structured parametrization below grade N", oc.agree(),
            "ranks equal", std::to_string(oc.solver_rank) + "/" + std::to_string(oc.structured_rank) + "/" +
                               std::to_string(oc.union_rank));
}

void task_growth(TaskRun& run) {
  const std::size_t n = run.horizon(8);
  const Path u = run.path("path");
  auto seq = elementary_growth(run.g, u, run.model.rho, n);
  run.result = {{"path", run.name(u)}, {"horizon", n}, {"norms", rationals(seq)}};
  std::vector<std::string> got;
  for (const auto& q : seq) got.push_back(to_string(q));
  run.note("norms at horizons 1.." + std::to_string(n) + ": " + join(got, " "));
  if (run.task.has("expect")) {
    auto want = run.task.get_list("expect");
    run.check("norm sequence", want == got, join(want, " "), join(got, " "));
  }
  if (run.task.has("expect_ratio_at_least")) {
    Rational r = run.rational("expect_ratio_at_least");
    const std::size_t from = run.task.get_size("ratio_from", 1);
    bool ok = true;
    for (std::size_t h = from + 1; h <= n; ++h) {
      const Rational& prev = seq[h - 2];
      if (sgn(prev) == 0 || seq[h - 1] < r * prev) ok = false;
    }
    run.check("consecutive ratio from horizon " + std::to_string(from + 1), ok, ">= " + to_string(r),
              ok ? "holds" : "violated");
  }
}

void task_double_commutant(TaskRun& run) {
  const std::size_t n = run.horizon(5);
  std::vector<Path> tails;
  const std::string mode = run.task.get("tails", "auto");
  if (mode == "auto") {
    const std::size_t cap = run.task.get_size("cap", 2);
    const std::size_t ch = run.task.get_size("classify_horizon", cap + 8);
    run.guard(ch);
    for (const Path& p : classify_g_rho(run.model, cap, ch, run.cfg.rule).bounded_paths())
      if (!p.is_vertex()) tails.push_back(p);
  } else if (mode != "none") {
    tails = run.paths("tails");
  }
  ProbeReport rep = double_commutant_probe(run.model, tails, n, run.opts.max_dimension);
  run.result = {{"horizon", n},
                {"tails", run.names(rep.tails)},
                {"interior_horizon", rep.interior},
                {"interior_dimension", rep.interior_dimension},
                {"probe_dimension", rep.probe_dimension},
                {"probe_rank", rep.probe_rank},
                {"structured_rank", rep.structured_rank},
                {"union_rank", rep.union_rank},
                {"gap", rep.gap},
                {"structured_in_probe", rep.structured_in_probe},
                {"probe_in_structured", rep.probe_in_structured}};
  run.note("probe rank " + std::to_string(rep.probe_rank) + ", structured rank " +
           std::to_string(rep.structured_rank) + ", gap " + std::to_string(rep.gap));
  run.check("compressed left shifts lie in the probe space", rep.structured_in_probe, "true",
            rep.structured_in_probe ? "true" : "false");
  if (run.task.has("expect_gap")) {
    std::size_t want = run.task.get_size("expect_gap", 0);
    run.check("dimension gap", rep.gap == static_cast<long>(want), std::to_string(want), std::to_string(rep.gap));
  }
  if (run.task.has("expect_gap_at_least")) {
    std::size_t want = run.task.get_size("expect_gap_at_least", 0);
    run.check("dimension gap", rep.gap >= static_cast<long>(want), ">= " + std::to_string(want),
              std::to_string(rep.gap));
  }
  if (run.task.get("expect_full", "false") == "true") {
    const std::size_t full = rep.interior_dimension * rep.interior_dimension;
    run.check("probe space is the full matrix algebra", rep.probe_rank == full, std::to_string(full),
              std::to_string(rep.probe_rank));
  }
}

void task_tails(TaskRun& run) {
  const std::size_t cap = run.task.get_size("cap", 2);
  const std::size_t n = run.horizon(2 * cap + 8);
  TailVerdict tv = tails_check(run.model, cap, n, run.cfg.rule);
  ordered_json wit = ordered_json::array();
  std::vector<std::string> missing;
  for (const auto& [v, u] : tv.witnesses) {
    wit.push_back({{"v", run.name(v)}, {"witness", u ? ordered_json(run.name(*u)) : ordered_json(nullptr)}});
    if (!u) missing.push_back(run.name(v));
  }
  run.result = {{"cap", cap},
                {"horizon", n},
                {"verdict", to_string(tv.global)},
                {"uniform_witness", tv.uniform_witness ? ordered_json(run.name(*tv.uniform_witness)) : ordered_json(nullptr)},
                {"bounded_class", run.names(tv.classification.bounded_paths())},
                {"witnesses", wit}};
  run.note("tail condition " + to_string(tv.global) +
           (missing.empty() ? std::string() : "; no witness for {" + join(missing) + "}"));
  if (run.task.has("expect"))
    run.check("tail verdict", to_string(tv.global) == run.task.get("expect", ""), run.task.get("expect", ""),
              to_string(tv.global));
  if (run.task.has("expect_witness")) {
    Path want = run.path("expect_witness");
    std::string got = tv.uniform_witness ? run.name(*tv.uniform_witness) : "none";
    run.check("uniform witness", tv.uniform_witness && *tv.uniform_witness == want, run.name(want), got);
  }
}

void task_example46(TaskRun& run) {
  const std::size_t n = run.horizon(9);
  Example46Report rep = example46_projection(run.model, n);
  run.result = {{"horizon", n},
                {"projection_rank", rep.projection.nonzeros()},
                {"commutation_failures", rep.commutation_failures},
                {"functional_on_projection", to_string(rep.functional_on_projection)},
                {"functional_failures", run.names(rep.functional_failures)},
                {"odd_shift_commutes", rep.odd_shift_commutes}};
  run.check("P commutes with R[x], R[y], R[ef], R[fe] on the window", rep.commutes, "no failures",
            rep.commutes ? "no failures" : join(rep.commutation_failures));
  run.check("diagonal functional vanishes on every left monomial and is non-zero on P", rep.separates, "true",
            "value on P " + to_string(rep.functional_on_projection) + ", " +
                std::to_string(rep.functional_failures.size()) + " monomial failures");
  run.check("negative control: P does not commute with R[e]", !rep.odd_shift_commutes, "non-commuting",
            rep.odd_shift_commutes ? "commuting" : "non-commuting");
}

void task_transport(TaskRun& run) {
  const std::size_t n = run.horizon(6);
  const std::size_t len = run.task.get_size("length", 2);
  auto ms = transport_check(run.model, n, len);
  auto control = transport_check(run.model, n, len, TransportMap::Identity);
  run.result = {{"horizon", n},
                {"max_length", len},
                {"mismatches", ms.size()},
                {"samples", mismatch_samples(ms)},
                {"negative_control_mismatches", control.size()}};
  run.check("path-reversal transport identities", ms.empty(), "0 mismatches", std::to_string(ms.size()));
  // The control is only informative when some path differs from its reversal.
  bool palindromic = true;
  for (const Path& p : PathTable(run.g, n))
    if (!p.is_vertex() && !std::equal(p.edges().begin(), p.edges().end(), p.edges().rbegin())) palindromic = false;
  if (!palindromic)
    run.check("negative control without reversal detects mismatches", !control.empty(), "> 0",
              std::to_string(control.size()));
}

void task_gauge(TaskRun& run) {
  if (!run.cfg.has_phases) throw ConfigError(run.task.where, "gauge task needs phase lines");
  const std::size_t n = run.horizon(6);
  const std::size_t len = run.task.get_size("length", 2);
  GaugeTransform gauge(run.g, run.cfg.phases, run.model.lambda);
  auto ms = gauge_check(gauge, n, len);
  auto cocycle = check_beta_cocycle(run.g, gauge, n);
  ordered_json diag = ordered_json::array();
  for (const Path& v : PathTable(run.g, std::min<std::size_t>(n, 2)))
    diag.push_back({{"path", run.name(v)}, {"beta", to_string(gauge.beta_diagonal(v))}});
  run.result = {{"horizon", n},
                {"max_length", len},
                {"mismatches", ms.size()},
                {"samples", mismatch_samples(ms)},
                {"beta_cocycle_violations", cocycle.size()},
                {"beta_diagonal", diag}};
  run.check("U_beta L_mu = L_lambda U_beta", ms.empty(), "0 mismatches", std::to_string(ms.size()));
  run.check("beta left cocycle", cocycle.empty(), "0 violations", std::to_string(cocycle.size()));
}

using TaskFn = std::function<void(TaskRun&)>;

const std::map<std::string, TaskFn>& dispatch() {
  static const std::map<std::string, TaskFn> table = {
      {"check-cocycle", task_check_cocycle}, {"companion", task_companion},
      {"bounds", task_bounds},               {"classify", task_classify},
      {"norms", task_norms},                 {"commutant", task_commutant},
      {"growth", task_growth},               {"double-commutant", task_double_commutant},
      {"tails", task_tails},                 {"example-46", task_example46},
      {"transport", task_transport},         {"gauge", task_gauge},
  };
  return table;
}

ordered_json graph_json(const Graph& g) {
  ordered_json vs = ordered_json::array(), es = ordered_json::array();
  for (VertexId v : g.vertex_ids()) vs.push_back(g.vertex_name(v));
  for (EdgeId e : g.edge_ids())
    es.push_back({{"id", g.edge(e).name}, {"source", g.vertex_name(g.source(e))}, {"range", g.vertex_name(g.range(e))}});
  return {{"vertices", vs}, {"edges", es}};
}

RunOutcome run_tasks(const ScenarioConfig& cfg, const std::vector<TaskSpec>& tasks, const RunOptions& opts) {
  RunOutcome out;
  const WeightModel model = WeightModel::from_program(cfg.graph, cfg.program);
  std::ostringstream text;
  text << "scenario " << cfg.name << "\n";

  ordered_json task_reports = ordered_json::array();
  std::size_t assertions = 0, failed = 0, errors = 0;
  bool resource = false, config = false;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const TaskSpec& t = tasks[i];
    TaskRun run(cfg, model, opts, t);
    std::vector<std::string> arg_text;
    ordered_json args = ordered_json::object();
    for (const auto& [k, v] : t.args) {
      arg_text.push_back(k + "=" + v);
      args[k] = v;
    }
    text << "[" << i + 1 << "] " << t.kind << (arg_text.empty() ? "" : " " + join(arg_text, " ")) << "\n";

    ordered_json rep = {{"index", i + 1}, {"task", t.kind}, {"line", t.where.line}, {"args", args}};
    std::string status;
    auto start = std::chrono::steady_clock::now();
    try {
      dispatch().at(t.kind)(run);
      status = run.failed ? "fail" : (run.assertions.empty() ? "info" : "pass");
    } catch (const ResourceCapExceeded& e) {
      status = "resource_cap";
      rep["error"] = e.what();
      run.text << "  error: " << e.what() << "\n";
      resource = true;
    } catch (const ConfigError& e) {
      status = "config_error";
      rep["error"] = e.what();
      run.text << "  error: " << e.what() << "\n";
      config = true;
    } catch (const std::exception& e) {
      status = "error";
      rep["error"] = e.what();
      run.text << "  error: " << e.what() << "\n";
      ++errors;
    }
    rep["status"] = status;
    rep["assertions"] = run.assertions;
    rep["result"] = run.result;
    rep["warnings"] = run.warnings;
    if (opts.timings)
      rep["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    assertions += run.assertions.size();
    failed += run.failed;
    text << run.text.str();
    task_reports.push_back(std::move(rep));
  }

  out.exit_code = config ? kExitConfig : resource ? kExitResource : (failed || errors) ? kExitAssertion : kExitOk;
  text << "summary: " << tasks.size() << " tasks, " << assertions << " assertions, " << failed << " failed, "
       << errors << " errors\n";
  out.text = text.str();
  out.report = {{"schema", kReportSchema},
                {"scenario", cfg.name},
                {"source", cfg.source},
                {"graph", graph_json(cfg.graph)},
                {"weight_program", cfg.program.to_text()},
                {"divergence", {{"ratio", to_string(cfg.rule.ratio)}, {"run", cfg.rule.run_length}}},
                {"tasks", task_reports},
                {"summary",
                 {{"tasks", tasks.size()},
                  {"assertions", assertions},
                  {"failed", failed},
                  {"errors", errors},
                  {"exit_code", out.exit_code}}}};
  return out;
}

}  // namespace

std::size_t count_paths(const Graph& g, std::size_t horizon, std::size_t limit) {
  std::vector<std::size_t> level(g.vertex_count(), 1);  // paths of the current length, by range vertex
  std::size_t total = g.vertex_count();
  for (std::size_t k = 1; k <= horizon && total <= limit; ++k) {
    std::vector<std::size_t> next(g.vertex_count(), 0);
    for (EdgeId e : g.edge_ids()) {
      std::size_t& slot = next[g.range(e).value];
      slot = std::min(limit + 1, slot + level[g.source(e).value]);
    }
    level = std::move(next);
    for (std::size_t c : level) total = std::min(limit + 1, total + c);
  }
  return std::min(total, limit + 1);
}

RunOutcome run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) { return run_tasks(cfg, cfg.tasks, opts); }

RunOutcome run_single(const ScenarioConfig& cfg, const TaskSpec& task, const RunOptions& opts) {
  return run_tasks(cfg, {task}, opts);
}

}  // namespace fockweight
