#include "fockweight/fock.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace fockweight {

namespace {

std::size_t require_index(const FockBasis& b, const Path& p) {
  auto idx = b.index_of(p);
  if (!idx) throw std::invalid_argument("path " + label(b.graph(), p) + " is outside the basis");
  return *idx;
}

// Row-major view of an operator: row -> [(col, value)].
template <class Scalar>
std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows_of(const SparseOperator<Scalar>& op) {
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows(op.dimension());
  op.for_each([&](std::size_t r, std::size_t c, const Scalar& v) { rows[r].emplace_back(c, v); });
  return rows;
}

bool in_subgraph(const Graph& g, const Graph& sub, const Path& p) {
  if (p.is_vertex()) return sub.find_vertex(g.vertex_name(p.source())).has_value();
  for (EdgeId e : p.edges())
    if (!sub.find_edge(g.edge(e).name)) return false;
  return true;
}

void require_subgraph(const Graph& g, const Graph& sub) {
  for (VertexId v : sub.vertex_ids())
    if (!g.find_vertex(sub.vertex_name(v)))
      throw std::invalid_argument("subgraph vertex " + sub.vertex_name(v) + " is not in the graph");
  for (EdgeId e : sub.edge_ids()) {
    const Edge& se = sub.edge(e);
    auto ge = g.find_edge(se.name);
    if (!ge || g.vertex_name(g.source(*ge)) != sub.vertex_name(se.source) ||
        g.vertex_name(g.range(*ge)) != sub.vertex_name(se.range))
      throw std::invalid_argument("subgraph edge " + se.name + " is not an edge of the graph");
  }
}

template <class Scalar>
std::vector<OperatorMismatch> compare_generic(const SparseOperator<Scalar>& a, const SparseOperator<Scalar>& b,
                                              const std::string& what) {
  if (a.basis()->hash() != b.basis()->hash()) throw std::invalid_argument("comparing operators on different bases");
  std::vector<OperatorMismatch> out;
  for (std::size_t c = 0; c < a.dimension(); ++c) {
    std::set<std::size_t> rows;
    for (const auto& [r, v] : a.column(c)) rows.insert(r);
    for (const auto& [r, v] : b.column(c)) rows.insert(r);
    for (std::size_t r : rows) {
      Scalar x = a.at(r, c), y = b.at(r, c);
      if (x != y) out.push_back({what, r, c, to_string(x), to_string(y)});
    }
  }
  return out;
}

}  // namespace

RationalOperator grade_projection(std::shared_ptr<const FockBasis> basis, std::size_t k) {
  RationalOperator q(basis);
  for (std::size_t i = 0; i < basis->dimension(); ++i)
    if (basis->grade(i) == k) q.set(i, i, Rational(1));
  return q;
}

RationalOperator build_L(std::shared_ptr<const FockBasis> basis, const LeftWeight& lambda, const Path& w) {
  require_index(*basis, w);
  RationalOperator op(basis);
  for (std::size_t c = 0; c < basis->dimension(); ++c) {
    const Path& v = basis->path(c);
    if (v.length() + w.length() > basis->horizon()) break;  // canonical order is by length
    if (auto wv = compose(w, v)) op.set(*basis->index_of(*wv), c, lambda(v, w));
  }
  return op;
}

RationalOperator build_R(std::shared_ptr<const FockBasis> basis, const RightWeight& rho, const Path& u) {
  require_index(*basis, u);
  RationalOperator op(basis);
  for (std::size_t c = 0; c < basis->dimension(); ++c) {
    const Path& v = basis->path(c);
    if (v.length() + u.length() > basis->horizon()) break;
    if (auto vu = compose(v, u)) op.set(*basis->index_of(*vu), c, rho(v, u));
  }
  return op;
}

GaussianOperator build_L(std::shared_ptr<const FockBasis> basis, const GaugeTransform& gauge, const Path& w) {
  require_index(*basis, w);
  GaussianOperator op(basis);
  for (std::size_t c = 0; c < basis->dimension(); ++c) {
    const Path& v = basis->path(c);
    if (v.length() + w.length() > basis->horizon()) break;
    if (auto wv = compose(w, v)) op.set(*basis->index_of(*wv), c, gauge.mu(v, w));
  }
  return op;
}

GaussianOperator gauge_unitary(std::shared_ptr<const FockBasis> basis, const GaugeTransform& gauge) {
  GaussianOperator u(basis);
  for (std::size_t i = 0; i < basis->dimension(); ++i) u.set(i, i, gauge.beta_diagonal(basis->path(i)));
  return u;
}

bool has_orthogonal_columns(const RationalOperator& op) {
  std::map<std::pair<std::size_t, std::size_t>, Rational> gram;
  for (const auto& row : rows_of(op))
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        Rational& slot = gram[{std::min(row[i].first, row[j].first), std::max(row[i].first, row[j].first)}];
        slot += row[i].second * row[j].second;
      }
  for (const auto& [k, v] : gram)
    if (sgn(v) != 0) return false;
  return true;
}

NormResult float_norm(const FloatOperator& op, const PowerIterationOptions& opts) {
  NormResult res;
  const std::size_t d = op.dimension();
  if (op.is_zero_operator() || d == 0) return res;
  FloatOperator adj = op.adjoint();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> dist(0.5, 1.5);
  std::vector<double> x(d);
  for (double& xi : x) xi = dist(rng);
  auto normalize = [](std::vector<double>& v) {
    double s = 0;
    for (double t : v) s += t * t;
    s = std::sqrt(s);
    if (s > 0)
      for (double& t : v) t /= s;
    return s;
  };
  normalize(x);
  double estimate = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    std::vector<double> y = adj.apply(op.apply(x));
    double rayleigh = 0;
    for (std::size_t i = 0; i < d; ++i) rayleigh += x[i] * y[i];
    res.iterations = it;
    if (normalize(y) == 0) break;  // x landed in the kernel
    x = std::move(y);
    bool converged = it > 1 && std::abs(rayleigh - estimate) <= opts.tolerance * std::max(1.0, std::abs(rayleigh));
    estimate = rayleigh;
    if (converged) break;
  }
  res.value = std::sqrt(std::max(estimate, 0.0));
  return res;
}

NormResult truncated_norm(const RationalOperator& op, const PowerIterationOptions& opts) {
  if (!has_orthogonal_columns(op)) return float_norm(to_float(op), opts);
  NormResult res;
  res.exact = true;
  Rational best(0);
  for (std::size_t c = 0; c < op.dimension(); ++c) {
    Rational s(0);
    for (const auto& [r, v] : op.column(c)) s += v * v;
    if (s > best) best = s;
  }
  Rational root;
  if (exact_sqrt(best, root)) {
    res.rational = root;
    res.value = to_double(root);
  } else {
    res.value = std::sqrt(to_double(best));
  }
  res.squared = best;
  return res;
}

RationalOperator phi_j(const RationalOperator& x, long j) {
  RationalOperator out(x.basis());
  const FockBasis& b = *x.basis();
  x.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
    if (static_cast<long>(b.grade(c)) - static_cast<long>(b.grade(r)) == j) out.set(r, c, v);
  });
  return out;
}

RationalOperator sigma_k(const RationalOperator& x, long k) {
  if (k < 1) throw std::invalid_argument("Cesaro index must be >= 1");
  RationalOperator out(x.basis());
  const FockBasis& b = *x.basis();
  x.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
    long j = std::labs(static_cast<long>(b.grade(c)) - static_cast<long>(b.grade(r)));
    if (j < k) out.set(r, c, v * (Rational(k - j) / k));
  });
  return out;
}

ComplexFloatOperator phi_j_fourier(const FloatOperator& x, long j) {
  const FockBasis& b = *x.basis();
  const long m = 2 * static_cast<long>(b.horizon()) + 1;
  ComplexFloatOperator out(x.basis());
  x.for_each([&](std::size_t r, std::size_t c, double v) {
    const long shift = static_cast<long>(b.grade(r)) - static_cast<long>(b.grade(c));
    std::complex<double> acc = 0.0;
    for (long t = 0; t < m; ++t) {
      // w^{jt} times the entry of U_{w^t} X U_{w^t}^*, which is w^{t (gr - gc)} X[r][c]
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(((j + shift) * t) % m) / static_cast<double>(m);
      acc += std::polar(1.0, angle) * v;
    }
    out.set(r, c, acc / static_cast<double>(m));
  });
  return out;
}

RationalOperator build_Xf(std::shared_ptr<const FockBasis> basis, const CoefficientFunction& f,
                          const RightWeight& rho) {
  RationalOperator op(basis);
  for (std::size_t c = 0; c < basis->dimension(); ++c) {
    const Path& v = basis->path(c);
    for (const auto& [u, val] : f.values) {
      if (v.length() + u.length() > basis->horizon()) continue;
      if (auto vu = compose(v, u)) op.add(*basis->index_of(*vu), c, val * rho(v, u));
    }
  }
  return op;
}

std::vector<Path> divergent_support(const CoefficientFunction& f, const std::function<bool(const Path&)>& is_divergent) {
  std::vector<Path> out;
  for (const auto& [u, val] : f.values)
    if (sgn(val) != 0 && is_divergent(u)) out.push_back(u);
  return out;
}

RationalOperator subgraph_projection(std::shared_ptr<const FockBasis> basis, const Graph& sub) {
  require_subgraph(basis->graph(), sub);
  RationalOperator p(basis);
  for (std::size_t i = 0; i < basis->dimension(); ++i)
    if (in_subgraph(basis->graph(), sub, basis->path(i))) p.set(i, i, Rational(1));
  return p;
}

RationalOperator partial_series(std::shared_ptr<const FockBasis> basis, long j, const Graph& sub,
                                const CoefficientFunction& f, const RightWeight& rho) {
  require_subgraph(basis->graph(), sub);
  RationalOperator out(basis);
  for (const auto& [u, val] : f.values) {
    if (static_cast<long>(u.length()) != -j || sgn(val) == 0) continue;
    if (!in_subgraph(basis->graph(), sub, u) || !basis->index_of(u)) continue;
    out += build_R(basis, rho, u) * val;
  }
  return out;
}

std::vector<OperatorMismatch> compare_entries(const RationalOperator& a, const RationalOperator& b,
                                              const std::string& what) {
  return compare_generic(a, b, what);
}

std::vector<OperatorMismatch> compare_entries(const GaussianOperator& a, const GaussianOperator& b,
                                              const std::string& what) {
  return compare_generic(a, b, what);
}

std::vector<OperatorMismatch> transport_check(const WeightModel& model, std::size_t horizon, std::size_t max_length,
                                              TransportMap map) {
  const Graph& g = model.graph;
  auto basis = FockBasis::make(g, horizon);
  auto basis_t = FockBasis::make(opposite_graph(g), horizon);
  const Graph& gt = basis_t->graph();

  // image[i] = index in `basis` of U xi_{p_i}, p_i the i-th opposite-graph path.
  std::vector<std::optional<std::size_t>> image(basis_t->dimension());
  for (std::size_t i = 0; i < basis_t->dimension(); ++i) {
    const Path& pt = basis_t->path(i);
    std::optional<Path> p;
    if (map == TransportMap::Reversed)
      p = reversed(pt);
    else if (pt.is_vertex())
      p = pt;
    else
      p = Path::from_edges(g, std::vector<EdgeId>(pt.edges().begin(), pt.edges().end()));
    if (p) image[i] = basis->index_of(*p);
  }

  std::vector<OperatorMismatch> out;
  auto conjugate = [&](const RationalOperator& a, const std::string& what) {
    RationalOperator moved(basis);
    a.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
      if (image[r] && image[c])
        moved.set(*image[r], *image[c], v);
      else
        out.push_back({what, r, c, to_string(v), "no image under the transport map"});
    });
    return moved;
  };

  const LeftWeight rho_t([&model](const Path& vt, const Path& ut) -> Rational { return model.rho(reversed(vt), reversed(ut)); });
  const RightWeight lambda_t(
      [&model](const Path& vt, const Path& wt) -> Rational { return model.lambda(reversed(vt), reversed(wt)); });

  for (std::size_t i = 0; i < basis->dimension() && basis->grade(i) <= max_length; ++i) {
    const Path& u = basis->path(i);
    const Path ut = reversed(u);
    const std::string name = label(g, u);
    auto lhs_r = conjugate(build_L(basis_t, rho_t, ut), "U L[" + label(gt, ut) + "] U* vs R[" + name + "]");
    auto m1 = compare_entries(lhs_r, build_R(basis, model.rho, u), "U L[" + label(gt, ut) + "] U* vs R[" + name + "]");
    out.insert(out.end(), m1.begin(), m1.end());
    auto lhs_l = conjugate(build_R(basis_t, lambda_t, ut), "U R[" + label(gt, ut) + "] U* vs L[" + name + "]");
    auto m2 =
        compare_entries(lhs_l, build_L(basis, model.lambda, u), "U R[" + label(gt, ut) + "] U* vs L[" + name + "]");
    out.insert(out.end(), m2.begin(), m2.end());
  }
  return out;
}

std::vector<OperatorMismatch> gauge_check(const GaugeTransform& gauge, std::size_t horizon, std::size_t max_length) {
  auto basis = FockBasis::make(gauge.graph(), horizon);
  const GaussianOperator u = gauge_unitary(basis, gauge);
  std::vector<OperatorMismatch> out;
  for (std::size_t i = 0; i < basis->dimension() && basis->grade(i) <= max_length; ++i) {
    const Path& w = basis->path(i);
    GaussianOperator lhs = u * build_L(basis, gauge, w);
    GaussianOperator rhs = to_gaussian(build_L(basis, gauge.modulus(), w)) * u;
    auto m = compare_entries(lhs, rhs, "U L_mu[" + label(basis->graph(), w) + "] vs L[" + label(basis->graph(), w) + "] U");
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}

}  // namespace fockweight
