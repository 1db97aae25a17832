#include "fockweight/weights.hpp"

#include <algorithm>
#include <stdexcept>

namespace fockweight {

namespace {

// Calls fn(p0, p1, p2) for every way of cutting each path of length <=
// horizon into three consecutive pieces p0 p1 p2 (pieces may be vertices).
template <class Fn>
void for_each_triple(const Graph& g, std::size_t horizon, Fn&& fn) {
  PathTable table(g, horizon);
  for (const Path& p : table) {
    const std::size_t k = p.length();
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = i; j <= k; ++j) {
        fn(p, p.slice(g, 0, i), p.slice(g, i, j), p.slice(g, j, k));
      }
    }
  }
}

}  // namespace

LeftWeight LeftWeight::from_path_weight(std::shared_ptr<const PathWeight> alpha) {
  return LeftWeight([alpha](const Path& v, const Path& w) -> Rational {
    return alpha->alpha(*compose(w, v)) / alpha->alpha(v);
  });
}

Rational LeftWeight::operator()(const Path& v, const Path& w) const {
  if (w.source() != v.range()) return Rational(0);
  return fn_(v, w);
}

LeftWeight LeftWeight::with_entry(const Path& v, const Path& w, Rational value) const {
  return LeftWeight([base = fn_, v, w, value](const Path& a, const Path& b) -> Rational {
    if (a == v && b == w) return value;
    return base(a, b);
  });
}

RightWeight RightWeight::from_path_weight(std::shared_ptr<const PathWeight> alpha) {
  return RightWeight([alpha](const Path& v, const Path& u) -> Rational {
    return alpha->alpha(*compose(v, u)) / alpha->alpha(v);
  });
}

Rational RightWeight::operator()(const Path& v, const Path& u) const {
  if (v.source() != u.range()) return Rational(0);
  return fn_(v, u);
}

RightWeight RightWeight::with_entry(const Path& v, const Path& u, Rational value) const {
  return RightWeight([base = fn_, v, u, value](const Path& a, const Path& b) -> Rational {
    if (a == v && b == u) return value;
    return base(a, b);
  });
}

RightWeight RightWeight::rescaled(std::map<EdgeId, Rational> edge_scale) const {
  return RightWeight([base = fn_, scale = std::move(edge_scale)](const Path& v, const Path& u) -> Rational {
    Rational q = base(v, u);
    for (EdgeId e : u.edges()) {
      if (auto it = scale.find(e); it != scale.end()) q *= it->second;
    }
    return q;
  });
}

WeightModel WeightModel::from_program(const Graph& g, WeightProgram program) {
  auto alpha = std::make_shared<const PathWeight>(g, std::move(program));
  return WeightModel{g, alpha, LeftWeight::from_path_weight(alpha), RightWeight::from_path_weight(alpha)};
}

std::vector<Violation> check_left_cocycle(const Graph& g, const LeftWeight& lambda, std::size_t horizon) {
  std::vector<Violation> out;
  for_each_triple(g, horizon, [&](const Path&, const Path& w2, const Path& w1, const Path& v) {
    Path w2w1 = *compose(w2, w1);
    Path w1v = *compose(w1, v);
    Rational lhs = lambda(v, w2w1);
    Rational rhs = lambda(w1v, w2) * lambda(v, w1);
    if (lhs != rhs) out.push_back({{v, w1, w2}, lhs, rhs});
  });
  return out;
}

std::vector<Violation> check_right_cocycle(const Graph& g, const RightWeight& rho, std::size_t horizon) {
  std::vector<Violation> out;
  for_each_triple(g, horizon, [&](const Path&, const Path& v, const Path& u1, const Path& u2) {
    Rational lhs = rho(v, *compose(u1, u2));
    Rational rhs = rho(*compose(v, u1), u2) * rho(v, u1);
    if (lhs != rhs) out.push_back({{v, u1, u2}, lhs, rhs});
  });
  return out;
}

std::vector<Violation> check_commuting_square(const Graph& g, const LeftWeight& lambda, const RightWeight& rho,
                                              std::size_t horizon) {
  std::vector<Violation> out;
  for_each_triple(g, horizon, [&](const Path&, const Path& w, const Path& v, const Path& u) {
    Rational lhs = rho(*compose(w, v), u) * lambda(v, w);
    Rational rhs = lambda(*compose(v, u), w) * rho(v, u);
    if (lhs != rhs) out.push_back({{w, v, u}, lhs, rhs});
  });
  return out;
}

RightWeight canonical_companion(const Graph& g, const LeftWeight& lambda, std::size_t horizon) {
  auto violations = check_left_cocycle(g, lambda, horizon);
  if (!violations.empty())
    throw std::invalid_argument("left weight fails the cocycle condition at " +
                                std::to_string(violations.size()) + " triple(s)");
  return RightWeight([lambda](const Path& v, const Path& u) -> Rational {
    return lambda.path_weight(*compose(v, u)) / lambda.path_weight(v);
  });
}

Rational companion_ratio(const RightWeight& rho1, const RightWeight& rho2, const Path& u) {
  Path r = Path::vertex(u.range());
  return rho2(r, u) / rho1(r, u);
}

std::string to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::BoundedCertified: return "bounded_certified";
    case BoundVerdict::BoundedEmpirical: return "bounded_empirical";
    case BoundVerdict::DivergentEmpirical: return "divergent_empirical";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

BoundReport empirical_bound(const WeightModel& model, Side side, const Path& target, const PathTable& table,
                            std::size_t horizon, const DivergenceRule& rule) {
  if (table.horizon() < horizon) throw std::invalid_argument("path table shorter than the requested horizon");
  BoundReport rep;
  rep.target = target;
  rep.side = side;
  rep.horizon = horizon;
  if (target.length() > horizon) return rep;
  const std::size_t max_level = horizon - target.length();
  rep.level_maxima.assign(max_level + 1, Rational(0));
  for (std::size_t i = 0; i < table.count_up_to(max_level); ++i) {
    const Path& v = table[i];
    Rational val = side == Side::Left ? model.lambda(v, target) : model.rho(v, target);
    if (sgn(val) == 0) continue;
    Rational& slot = rep.level_maxima[v.length()];
    if (val > slot) slot = val;
  }
  for (const auto& m : rep.level_maxima)
    if (m > rep.sup) rep.sup = m;

  // Longest run of consecutive geometric growth anywhere in the window; once
  // present it stays present at larger horizons.
  std::size_t run = 0, best = 0;
  for (std::size_t l = 1; l < rep.level_maxima.size(); ++l) {
    const Rational& prev = rep.level_maxima[l - 1];
    if (sgn(prev) > 0 && rep.level_maxima[l] >= rule.ratio * prev)
      best = std::max(best, ++run);
    else
      run = 0;
  }

  if (side == Side::Left && model.alpha->factors_at_most_one()) {
    rep.verdict = BoundVerdict::BoundedCertified;
    rep.certificate = "every extension factor is <= 1, so lambda(v,w) <= 1 for all v";
  } else if (side == Side::Right && model.alpha->edge_determined()) {
    rep.verdict = BoundVerdict::BoundedCertified;
    rep.certificate = "factors depend only on the new edge, so rho(v,u) = alpha(u) for all v";
  } else if (best >= rule.run_length) {
    rep.verdict = BoundVerdict::DivergentEmpirical;
    rep.certificate = std::to_string(best) + " consecutive levels with growth ratio >= " + to_string(rule.ratio);
  } else {
    rep.verdict = BoundVerdict::BoundedEmpirical;
    rep.certificate = "no run of " + std::to_string(rule.run_length) + " levels with growth ratio >= " +
                      to_string(rule.ratio) + " up to horizon " + std::to_string(horizon);
  }
  return rep;
}

bool GRhoClassification::is_bounded(const Path& u) const {
  auto it = std::lower_bound(members.begin(), members.end(), u,
                             [](const Membership& m, const Path& p) { return m.path < p; });
  if (it == members.end() || it->path != u) throw std::out_of_range("path outside the classification cap");
  return it->bounded();
}

std::vector<Path> GRhoClassification::bounded_paths() const {
  std::vector<Path> out;
  for (const auto& m : members)
    if (m.bounded()) out.push_back(m.path);
  return out;
}

GRhoClassification classify_g_rho(const WeightModel& model, std::size_t cap, std::size_t horizon,
                                  const DivergenceRule& rule) {
  if (cap > horizon) throw std::invalid_argument("classification cap exceeds horizon");
  GRhoClassification out;
  out.cap = cap;
  out.horizon = horizon;
  // A bounded target of length L can still show L growth steps in a row
  // (differences of an oscillating exponent over a window of width L), so
  // runs must be longer than any target in the cap.
  out.rule = rule;
  out.rule.run_length = std::max(rule.run_length, cap + 1);
  PathTable table(model.graph, horizon);
  for (std::size_t i = 0; i < table.count_up_to(cap); ++i)
    out.members.push_back({table[i], empirical_bound(model, Side::Right, table[i], table, horizon, out.rule)});

  for (const auto& a : out.members) {
    if (!a.bounded()) continue;
    for (const auto& b : out.members) {
      if (!b.bounded() || a.path.length() + b.path.length() > cap) continue;
      auto ab = compose(a.path, b.path);
      if (ab && !out.is_bounded(*ab)) out.closure_violations.emplace_back(a.path, b.path);
    }
  }
  return out;
}

void ComplexWeightSpec::validate() const {
  for (const auto& [e, z] : edge_phase)
    if (z.norm2() != 1) throw std::invalid_argument("non-unit phase " + to_string(z));
  for (const auto& o : overrides)
    if (o.phase.norm2() != 1) throw std::invalid_argument("non-unit phase " + to_string(o.phase));
}

Gaussian ComplexWeightSpec::theta(const Graph& g, const Path& v) const {
  Gaussian t(Rational(1));
  const std::size_t k = v.length();
  for (std::size_t i = k; i-- > 0;) {
    EdgeId e = v.edges()[i];
    Path suffix = v.slice(g, i + 1, k);
    const Gaussian* phase = nullptr;
    for (const auto& o : overrides)
      if (o.edge == e && o.v == suffix) phase = &o.phase;
    if (!phase) {
      if (auto it = edge_phase.find(e); it != edge_phase.end()) phase = &it->second;
    }
    if (phase) t *= *phase;
  }
  return t;
}

GaugeTransform::GaugeTransform(Graph g, ComplexWeightSpec spec, LeftWeight lambda)
    : graph_(std::move(g)), spec_(std::move(spec)), lambda_(std::move(lambda)) {
  spec_.validate();
}

Gaussian GaugeTransform::mu(const Path& v, const Path& w) const {
  auto wv = compose(w, v);
  if (!wv) return Gaussian{};
  return spec_.theta(graph_, *wv) / spec_.theta(graph_, v) * Gaussian(lambda_(v, w));
}

Gaussian GaugeTransform::beta(const Path& v, const Path& w) const {
  auto wv = compose(w, v);
  if (!wv) return Gaussian(Rational(1));
  return Gaussian(lambda_(v, w)) / mu(v, w);
}

std::vector<std::vector<Path>> check_beta_cocycle(const Graph& g, const GaugeTransform& gauge, std::size_t horizon) {
  std::vector<std::vector<Path>> out;
  for_each_triple(g, horizon, [&](const Path&, const Path& w2, const Path& w1, const Path& v) {
    Gaussian lhs = gauge.beta(v, *compose(w2, w1));
    Gaussian rhs = gauge.beta(*compose(w1, v), w2) * gauge.beta(v, w1);
    if (lhs != rhs) out.push_back({v, w1, w2});
  });
  return out;
}

}  // namespace fockweight
