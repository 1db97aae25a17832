#pragma once

// Left and right weights, the cocycle calculus relating them to path
// weights, and horizon-bounded boundedness analysis.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fockweight/graph.hpp"
#include "fockweight/rational.hpp"
#include "fockweight/weight_program.hpp"

namespace fockweight {

/// lambda(v, w): the weight of the move xi_v -> xi_{wv}. Zero exactly when
/// wv is not a path.
class LeftWeight {
 public:
  /// Called only for composable pairs (s(w) = r(v)).
  using Function = std::function<Rational(const Path& v, const Path& w)>;

  explicit LeftWeight(Function fn) : fn_(std::move(fn)) {}
  /// lambda_alpha(v, w) = alpha(wv) / alpha(v).
  static LeftWeight from_path_weight(std::shared_ptr<const PathWeight> alpha);

  Rational operator()(const Path& v, const Path& w) const;
  /// alpha_lambda(v) = lambda(s(v), v).
  Rational path_weight(const Path& v) const { return (*this)(Path::vertex(v.source()), v); }
  /// Copy with one value replaced (for building non-cocycle tables).
  LeftWeight with_entry(const Path& v, const Path& w, Rational value) const;

 private:
  Function fn_;
};

/// rho(v, u): the weight of the move xi_v -> xi_{vu}. Zero exactly when vu
/// is not a path.
class RightWeight {
 public:
  using Function = std::function<Rational(const Path& v, const Path& u)>;

  explicit RightWeight(Function fn) : fn_(std::move(fn)) {}
  /// rho_alpha(v, u) = alpha(vu) / alpha(v).
  static RightWeight from_path_weight(std::shared_ptr<const PathWeight> alpha);

  Rational operator()(const Path& v, const Path& u) const;
  RightWeight with_entry(const Path& v, const Path& u, Rational value) const;
  /// q(u) * rho(v, u) with q multiplicative over the edges of u.
  RightWeight rescaled(std::map<EdgeId, Rational> edge_scale) const;

 private:
  Function fn_;
};

/// A rule program on a graph together with its left weight and canonical
/// right companion.
struct WeightModel {
  Graph graph;
  std::shared_ptr<const PathWeight> alpha;
  LeftWeight lambda;
  RightWeight rho;

  static WeightModel from_program(const Graph& g, WeightProgram program);
};

// -- cocycle checks ---------------------------------------------------------

/// One failing instance of an identity, with both sides evaluated.
struct Violation {
  std::vector<Path> paths;  // the tuple, in the order the identity names it
  Rational lhs;
  Rational rhs;
};

/// lambda(v, w2 w1) = lambda(w1 v, w2) lambda(v, w1) over all composable
/// triples with |w2 w1 v| <= horizon. Violation paths are (v, w1, w2).
std::vector<Violation> check_left_cocycle(const Graph& g, const LeftWeight& lambda, std::size_t horizon);

/// rho(v, u1 u2) = rho(v u1, u2) rho(v, u1) with |v u1 u2| <= horizon.
/// Violation paths are (v, u1, u2).
std::vector<Violation> check_right_cocycle(const Graph& g, const RightWeight& rho, std::size_t horizon);

/// rho(wv, u) lambda(v, w) = lambda(vu, w) rho(v, u) with |wvu| <= horizon.
/// Violation paths are (w, v, u).
std::vector<Violation> check_commuting_square(const Graph& g, const LeftWeight& lambda, const RightWeight& rho,
                                              std::size_t horizon);

/// The canonical right companion rho_alpha for alpha = alpha_lambda. The
/// left cocycle of `lambda` is verified on the window first; throws
/// std::invalid_argument if it fails.
RightWeight canonical_companion(const Graph& g, const LeftWeight& lambda, std::size_t horizon);

/// q(u) = rho2(r(u), u) / rho1(r(u), u).
Rational companion_ratio(const RightWeight& rho1, const RightWeight& rho2, const Path& u);

// -- boundedness ------------------------------------------------------------

enum class Side { Left, Right };

enum class BoundVerdict { BoundedCertified, BoundedEmpirical, DivergentEmpirical };

std::string to_string(BoundVerdict v);
std::string to_string(Side s);

/// Divergence heuristic: some run of `run_length` consecutive levels whose
/// maxima each grow by a ratio >= `ratio` over the level before.
struct DivergenceRule {
  Rational ratio{3, 2};
  std::size_t run_length = 4;
};

struct BoundReport {
  Path target;
  Side side = Side::Left;
  std::size_t horizon = 0;
  /// level_maxima[l] = max over composable v with |v| = l of the weight
  /// (0 when no such v); levels run over |v| + |target| <= horizon.
  std::vector<Rational> level_maxima;
  Rational sup{0};
  BoundVerdict verdict = BoundVerdict::BoundedEmpirical;
  std::string certificate;
};

/// Horizon-bounded approximation of lambda(w) = sup_v lambda(v, w) (or of
/// rho(u)). `table` must have horizon >= `horizon`.
BoundReport empirical_bound(const WeightModel& model, Side side, const Path& target, const PathTable& table,
                            std::size_t horizon, const DivergenceRule& rule = {});

struct Membership {
  Path path;
  BoundReport report;
  bool bounded() const { return report.verdict != BoundVerdict::DivergentEmpirical; }
};

/// Empirical classification of G+_rho = {u : rho(u) < infinity}.
struct GRhoClassification {
  std::size_t cap = 0;
  std::size_t horizon = 0;
  DivergenceRule rule;              // as applied: run length raised above the cap
  std::vector<Membership> members;  // every path with |u| <= cap, canonical order
  /// (u1, u2) bounded with u1 u2 composable, |u1 u2| <= cap, but u1 u2 flagged
  /// divergent: G+_rho must be closed under composition.
  std::vector<std::pair<Path, Path>> closure_violations;

  bool is_bounded(const Path& u) const;
  std::vector<Path> bounded_paths() const;
};

/// Requires cap <= horizon. Throws std::invalid_argument otherwise. The
/// run length of `rule` is raised to at least cap + 1.
GRhoClassification classify_g_rho(const WeightModel& model, std::size_t cap, std::size_t horizon,
                                  const DivergenceRule& rule = {});

// -- complex weights --------------------------------------------------------

/// Unit-modulus Gaussian phases attached to extensions. The phase of the
/// extension of v by e is the override for (v, e) if present, else the
/// edge phase of e, else 1. Phases multiply along paths, giving theta(v),
/// and mu(v, w) = theta(wv) / theta(v) * lambda(v, w).
struct ComplexWeightSpec {
  struct Override {
    Path v;
    EdgeId edge;
    Gaussian phase;
  };
  std::map<EdgeId, Gaussian> edge_phase;
  std::vector<Override> overrides;

  /// Throws std::invalid_argument if some phase has modulus != 1.
  void validate() const;
  Gaussian theta(const Graph& g, const Path& v) const;
};

/// mu = phase * lambda, its modulus |mu| = lambda, and the gauge
/// beta(v, w) = lambda(v, w) / mu(v, w) with diagonal values beta(s(v), v).
class GaugeTransform {
 public:
  GaugeTransform(Graph g, ComplexWeightSpec spec, LeftWeight lambda);

  const Graph& graph() const { return graph_; }
  const ComplexWeightSpec& spec() const { return spec_; }
  const LeftWeight& modulus() const { return lambda_; }
  /// 0 when wv is not a path.
  Gaussian mu(const Path& v, const Path& w) const;
  /// 1 when wv is not a path.
  Gaussian beta(const Path& v, const Path& w) const;
  Gaussian beta_diagonal(const Path& v) const { return beta(Path::vertex(v.source()), v); }

 private:
  Graph graph_;
  ComplexWeightSpec spec_;
  LeftWeight lambda_;
};

/// Left cocycle of beta over the window; returns the failing (v, w1, w2).
std::vector<std::vector<Path>> check_beta_cocycle(const Graph& g, const GaugeTransform& gauge, std::size_t horizon);

}  // namespace fockweight
