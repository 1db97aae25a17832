#include "fockweight/commutant.hpp"

#include <algorithm>
#include <stdexcept>

#include "fockweight/error.hpp"

namespace fockweight {

namespace {

std::size_t vertex_index(const FockBasis& b, VertexId x) { return *b.index_of(Path::vertex(x)); }

}  // namespace

SolutionBasis solve_windowed_commutant(const WindowedProblem& problem) {
  const auto& basis = problem.basis;
  const std::size_t d = basis->dimension();
  if (d > problem.max_dimension)
    throw ResourceCapExceeded("basis dimension " + std::to_string(d) + " exceeds the cap " +
                              std::to_string(problem.max_dimension));
  const std::size_t n = basis->horizon();
  auto unknown = [d](std::size_t r, std::size_t c) { return c * d + r; };

  RowReducer reducer(d * d);
  SolutionBasis out;
  out.basis = basis;
  for (const Generator& g : problem.generators) {
    if (g.op.basis()->hash() != basis->hash()) throw std::invalid_argument("generator " + g.name + " lives on another basis");
    if (g.shift > n) continue;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> g_rows(d);
    g.op.for_each([&](std::size_t r, std::size_t c, const Rational& v) { g_rows[r].emplace_back(c, v); });
    for (std::size_t v = 0; v < d && basis->grade(v) + g.shift <= n; ++v) {
      // ([X, g])[r][v] = sum_k X[r][k] g[k][v] - sum_k g[r][k] X[k][v]
      for (std::size_t r = 0; r < d; ++r) {
        SparseRow row;
        for (const auto& [k, gv] : g.op.column(v)) row[unknown(r, k)] += gv;
        for (const auto& [k, gr] : g_rows[r]) row[unknown(k, v)] -= gr;
        std::erase_if(row, [](const auto& kv) { return sgn(kv.second) == 0; });
        if (row.empty()) continue;
        ++out.equations;
        reducer.insert(std::move(row));
      }
    }
  }
  for (const SparseRow& vec : reducer.nullspace()) out.elements.push_back(unflatten(vec, basis));
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> window_violations(const RationalOperator& x, const Generator& g) {
  const RationalOperator c = x * g.op - g.op * x;
  const FockBasis& b = *x.basis();
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t v = 0; v < b.dimension() && b.grade(v) + g.shift <= b.horizon(); ++v)
    for (const auto& [r, val] : c.column(v)) out.emplace_back(r, v);
  return out;
}

std::vector<Generator> left_generators(std::shared_ptr<const FockBasis> basis, const LeftWeight& lambda) {
  const Graph& g = basis->graph();
  std::vector<Generator> out;
  for (VertexId x : g.vertex_ids())
    out.push_back({build_L(basis, lambda, Path::vertex(x)), 0, "L[" + g.vertex_name(x) + "]"});
  for (EdgeId e : g.edge_ids())
    out.push_back({build_L(basis, lambda, Path::edge(g, e)), 1, "L[" + g.edge(e).name + "]"});
  return out;
}

std::vector<Generator> right_generators(std::shared_ptr<const FockBasis> basis, const RightWeight& rho,
                                        const std::vector<Path>& paths) {
  const Graph& g = basis->graph();
  std::vector<Generator> out;
  for (VertexId x : g.vertex_ids())
    out.push_back({build_R(basis, rho, Path::vertex(x)), 0, "R[" + g.vertex_name(x) + "]"});
  for (const Path& u : paths)
    if (!u.is_vertex()) out.push_back({build_R(basis, rho, u), u.length(), "R[" + label(g, u) + "]"});
  return out;
}

CoefficientFunction extract_coefficients(const RationalOperator& x, const RightWeight& rho) {
  const FockBasis& b = *x.basis();
  CoefficientFunction f;
  f.provenance = CoefficientFunction::Provenance::Extracted;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const Path& u = b.path(i);
    Rational a = x.at(i, vertex_index(b, u.range()));
    if (sgn(a) != 0) f.values.emplace(u, a / rho(Path::vertex(u.range()), u));
  }
  return f;
}

RationalOperator reconstruct(const CoefficientFunction& f, const RightWeight& rho,
                             std::shared_ptr<const FockBasis> basis) {
  RationalOperator op(basis);
  for (const auto& [u, val] : f.values) {
    const Rational base = rho(Path::vertex(u.range()), u);
    const Rational a = val * base;
    for (std::size_t c = 0; c < basis->dimension(); ++c) {
      const Path& v = basis->path(c);
      if (v.length() + u.length() > basis->horizon()) break;
      if (auto vu = compose(v, u)) op.add(*basis->index_of(*vu), c, rho(v, u) / base * a);
    }
  }
  return op;
}

OracleComparison compare_with_structured(const SolutionBasis& solutions, const RightWeight& rho) {
  const auto& basis = solutions.basis;
  const std::size_t d = basis->dimension();
  const std::size_t rows = basis->horizon() == 0 ? 0 : basis->dimension_up_to(basis->horizon() - 1);
  RowReducer solver(d * d), structured(d * d);
  for (const auto& x : solutions.elements) solver.insert(flatten(x, rows));
  std::vector<SparseRow> s_rows;
  for (const Path& u : basis->table())
    s_rows.push_back(flatten(reconstruct(CoefficientFunction::indicator(u), rho, basis), rows));
  for (const auto& v : s_rows) structured.insert(v);
  OracleComparison out;
  out.solver_rank = solver.rank();
  out.structured_rank = structured.rank();
  for (const auto& v : s_rows) solver.insert(v);
  out.union_rank = solver.rank();
  return out;
}

std::vector<Rational> elementary_growth(const Graph& g, const Path& u, const RightWeight& rho, std::size_t horizon) {
  std::vector<Rational> out;
  const auto f = CoefficientFunction::indicator(u);
  for (std::size_t n = 1; n <= horizon; ++n) {
    auto basis = FockBasis::make(g, n);
    if (!basis->index_of(u)) {
      out.emplace_back(0);
      continue;
    }
    NormResult r = truncated_norm(reconstruct(f, rho, basis));
    if (!r.rational) throw std::logic_error("elementary operator norm is not an exact rational");
    out.push_back(*r.rational);
  }
  return out;
}

ProbeReport double_commutant_probe(const WeightModel& model, const std::vector<Path>& tails, std::size_t horizon,
                                   std::size_t max_dimension) {
  ProbeReport rep;
  rep.horizon = horizon;
  std::size_t longest = 0;
  for (const Path& u : tails)
    if (!u.is_vertex()) {
      rep.tails.push_back(u);
      longest = std::max(longest, u.length());
    }
  if (longest > horizon) throw std::invalid_argument("probe tail longer than the horizon");
  rep.interior = horizon - longest;

  auto basis = FockBasis::make(model.graph, horizon);
  rep.solutions = solve_windowed_commutant({basis, right_generators(basis, model.rho, rep.tails), max_dimension});
  rep.probe_dimension = rep.solutions.dimension();

  auto inner = FockBasis::make(model.graph, rep.interior);
  rep.interior_dimension = inner->dimension();
  const std::size_t cols = rep.interior_dimension * rep.interior_dimension;

  RowReducer probe(cols), structured(cols);
  for (const auto& x : rep.solutions.elements) probe.insert(flatten(x.compressed(inner)));
  std::vector<SparseRow> l_side;
  for (const Path& w : inner->table()) l_side.push_back(flatten(build_L(inner, model.lambda, w)));
  for (const auto& v : l_side) structured.insert(v);
  rep.probe_rank = probe.rank();
  rep.structured_rank = structured.rank();

  RowReducer both = probe;
  for (const auto& v : l_side) both.insert(v);
  rep.union_rank = both.rank();
  rep.gap = static_cast<long>(rep.union_rank) - static_cast<long>(rep.structured_rank);
  rep.structured_in_probe = rep.union_rank == rep.probe_rank;
  rep.probe_in_structured = rep.union_rank == rep.structured_rank;
  return rep;
}

Example46Report example46_projection(const WeightModel& model, std::size_t horizon) {
  const Graph& g = model.graph;
  auto x = g.find_vertex("x"), y = g.find_vertex("y");
  auto e = g.find_edge("e"), f = g.find_edge("f");
  if (g.vertex_count() != 2 || g.edge_count() != 2 || !x || !y || !e || !f || g.source(*e) != *x ||
      g.range(*e) != *y || g.source(*f) != *y || g.range(*f) != *x)
    throw std::invalid_argument("expected the 2-cycle e: x -> y, f: y -> x");

  auto basis = FockBasis::make(g, horizon);
  Example46Report rep{RationalOperator(basis), {}, false, Rational(0), {}, false, false};
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    const Path& p = basis->path(i);
    bool in_range = p.is_vertex() ? p.source() == *x : p.length() % 2 == 0;
    for (std::size_t k = 0; in_range && k < p.length(); ++k) in_range = p.edges()[k] == (k % 2 == 0 ? *f : *e);
    if (in_range) rep.projection.set(i, i, Rational(1));
  }

  const Path ef = *Path::from_edges(g, {*e, *f}), fe = *Path::from_edges(g, {*f, *e});
  for (const Generator& gen : right_generators(basis, model.rho, {ef, fe}))
    if (!commutes_on_window(rep.projection, gen)) rep.commutation_failures.push_back(gen.name);
  rep.commutes = rep.commutation_failures.empty();

  const std::size_t ix = vertex_index(*basis, *x);
  const std::size_t i_f = *basis->index_of(Path::edge(g, *f));
  auto functional = [&](const RationalOperator& t) -> Rational { return t.at(ix, ix) - t.at(i_f, i_f); };
  rep.functional_on_projection = functional(rep.projection);
  for (const Path& w : basis->table())
    if (sgn(functional(build_L(basis, model.lambda, w))) != 0) rep.functional_failures.push_back(w);
  rep.separates = rep.functional_failures.empty() && sgn(rep.functional_on_projection) != 0;

  const Generator odd{build_R(basis, model.rho, Path::edge(g, *e)), 1, "R[e]"};
  rep.odd_shift_commutes = commutes_on_window(rep.projection, odd);
  return rep;
}

std::string to_string(TailGlobal v) {
  return v == TailGlobal::HoldsOnHorizon ? "holds_on_horizon" : "fails_on_horizon";
}

TailVerdict tails_check(const GRhoClassification& classification, std::size_t cap) {
  if (classification.cap < 2 * cap) throw std::invalid_argument("classification must cover lengths up to 2 * cap");
  TailVerdict out;
  out.cap = cap;
  out.classification = classification;

  std::vector<Path> vs, candidates;
  for (const auto& m : classification.members) {
    if (m.path.length() > cap) break;
    vs.push_back(m.path);
    if (m.bounded()) candidates.push_back(m.path);
  }
  auto witnesses = [&](const Path& v, const Path& u) {
    auto vu = compose(v, u);
    return vu && classification.is_bounded(*vu);
  };

  for (const Path& u : candidates) {
    if (std::all_of(vs.begin(), vs.end(), [&](const Path& v) { return witnesses(v, u); })) {
      out.uniform_witness = u;
      break;
    }
  }
  bool all = true;
  for (const Path& v : vs) {
    std::optional<Path> w = out.uniform_witness;
    if (!w) {
      for (const Path& u : candidates)
        if (witnesses(v, u)) {
          w = u;
          break;
        }
    }
    all = all && w.has_value();
    out.witnesses.emplace_back(v, w);
  }
  out.global = all ? TailGlobal::HoldsOnHorizon : TailGlobal::FailsOnHorizon;
  return out;
}

TailVerdict tails_check(const WeightModel& model, std::size_t cap, std::size_t horizon, const DivergenceRule& rule) {
  return tails_check(classify_g_rho(model, 2 * cap, horizon, rule), cap);
}

RationalOperator pk_partial_sum(const RationalOperator& t, const LeftWeight& lambda, long k) {
  if (k < 1) throw std::invalid_argument("Cesaro index must be >= 1");
  const auto& basis = t.basis();
  RationalOperator out(basis);
  for (std::size_t i = 0; i < basis->dimension() && static_cast<long>(basis->grade(i)) < k; ++i) {
    const Path& w = basis->path(i);
    const Path src = Path::vertex(w.source());
    Rational a = t.at(i, *basis->index_of(src));
    if (sgn(a) == 0) continue;
    Rational weight = Rational(k - static_cast<long>(w.length())) / k;
    out += build_L(basis, lambda, w) * (weight * a / lambda(src, w));
  }
  return out;
}

std::string to_string(Preservation p) {
  switch (p) {
    case Preservation::Holds: return "holds";
    case Preservation::Fails: return "fails";
    case Preservation::NotApplicable: return "not_applicable";
  }
  return "?";
}

Preservation sigma_preserves_commutation(const RationalOperator& x, const Generator& g, long k) {
  if (!commutes_on_window(x, g)) return Preservation::NotApplicable;
  return commutes_on_window(sigma_k(x, k), g) ? Preservation::Holds : Preservation::Fails;
}

}  // namespace fockweight
