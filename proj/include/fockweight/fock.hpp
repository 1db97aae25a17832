#pragma once

// Weighted shifts on the truncated Fock space and the block machinery used
// to analyse their commutants.
//
// Truncation convention: an operator T is represented by P_N T P_N. Creation
// operators strictly raise grade, so P_N L P_N^perp = 0 and products of
// compressed creation operators are compressions of products.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fockweight/sparse_operator.hpp"
#include "fockweight/weights.hpp"

namespace fockweight {

/// Q_k: projection onto span{xi_v : |v| = k}.
RationalOperator grade_projection(std::shared_ptr<const FockBasis> basis, std::size_t k);

/// L_{lambda,w}: xi_v -> lambda(v, w) xi_{wv} whenever |wv| <= N.
/// Throws std::invalid_argument if w is not in the basis.
RationalOperator build_L(std::shared_ptr<const FockBasis> basis, const LeftWeight& lambda, const Path& w);
/// R_{rho,u}: xi_v -> rho(v, u) xi_{vu} whenever |vu| <= N.
RationalOperator build_R(std::shared_ptr<const FockBasis> basis, const RightWeight& rho, const Path& u);

/// L_{mu,w} for a complex weight.
GaussianOperator build_L(std::shared_ptr<const FockBasis> basis, const GaugeTransform& gauge, const Path& w);
/// U_beta: xi_v -> beta(s(v), v) xi_v.
GaussianOperator gauge_unitary(std::shared_ptr<const FockBasis> basis, const GaugeTransform& gauge);

struct NormResult {
  double value = 0.0;
  bool exact = false;                 // exact orthogonal-column formula was used
  std::optional<Rational> squared;    // exact ||X||^2 when `exact`
  std::optional<Rational> rational;   // exact ||X|| when it is rational
  std::size_t iterations = 0;         // power iterations on the float path
};

struct PowerIterationOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 10000;
  std::uint64_t seed = 0x5eed;
};

/// Operator norm. Pairwise-orthogonal columns give the exact max column norm;
/// otherwise power iteration on X*X in floating point.
NormResult truncated_norm(const RationalOperator& op, const PowerIterationOptions& opts = {});
/// Power iteration on X*X.
NormResult float_norm(const FloatOperator& op, const PowerIterationOptions& opts = {});
/// True when distinct columns have zero inner product (exact).
bool has_orthogonal_columns(const RationalOperator& op);

/// Phi_j(X) = sum_m Q_m X Q_{m+j}: the entries with row grade = column grade - j.
RationalOperator phi_j(const RationalOperator& x, long j);
/// Sigma_k(X) = sum_{|j|<k} (1 - |j|/k) Phi_j(X). Requires k >= 1.
RationalOperator sigma_k(const RationalOperator& x, long k);
/// (1/m) sum_t w^{jt} U_{w^t} X U_{w^t}^*, w = exp(2 pi i / m), m = 2N + 1:
/// the circle average for Phi_j sampled at the m-th roots of unity.
ComplexFloatOperator phi_j_fourier(const FloatOperator& x, long j);

/// Coefficients f(u) parametrizing X_f = sum f(u) R_{rho,u}.
struct CoefficientFunction {
  enum class Provenance { UserGiven, Extracted };
  std::map<Path, Rational> values;  // non-zero values only
  Provenance provenance = Provenance::UserGiven;

  Rational operator()(const Path& u) const {
    auto it = values.find(u);
    return it == values.end() ? Rational(0) : it->second;
  }
  static CoefficientFunction indicator(const Path& u, Rational scale = Rational(1)) {
    CoefficientFunction f;
    if (sgn(scale) != 0) f.values.emplace(u, std::move(scale));
    return f;
  }
};

/// X_f with entries f(u) rho(v, u) at (vu, v) for |vu| <= N.
RationalOperator build_Xf(std::shared_ptr<const FockBasis> basis, const CoefficientFunction& f,
                          const RightWeight& rho);

/// Paths u in the support of f that `is_divergent` flags; building X_f is
/// still well defined at finite horizon, so these are warnings.
std::vector<Path> divergent_support(const CoefficientFunction& f, const std::function<bool(const Path&)>& is_divergent);

/// P_n: projection onto span{xi_v : v a path of the subgraph}. Throws
/// std::invalid_argument if `sub` is not a subgraph of the basis graph.
RationalOperator subgraph_projection(std::shared_ptr<const FockBasis> basis, const Graph& sub);
/// F_{j,n} = sum over subgraph paths u with |u| = -j and f(u) != 0 of f(u) R_{rho,u}.
RationalOperator partial_series(std::shared_ptr<const FockBasis> basis, long j, const Graph& sub,
                                const CoefficientFunction& f, const RightWeight& rho);

/// A failed entrywise comparison.
struct OperatorMismatch {
  std::string what;  // which identity, which operator
  std::size_t row = 0;
  std::size_t col = 0;
  std::string lhs;
  std::string rhs;
};

/// Lists every entry where a and b differ (same basis required).
std::vector<OperatorMismatch> compare_entries(const RationalOperator& a, const RationalOperator& b,
                                              const std::string& what);
std::vector<OperatorMismatch> compare_entries(const GaussianOperator& a, const GaussianOperator& b,
                                              const std::string& what);

enum class TransportMap { Reversed, Identity };

/// U L_{rho^t, u^t} U* = R_{rho,u} and U R_{lambda^t, w^t} U* = L_{lambda,w} on
/// H_N for all |u|, |w| <= max_length, where U xi_{v^t} = xi_v. The
/// Identity map (no reversal) is a negative control.
std::vector<OperatorMismatch> transport_check(const WeightModel& model, std::size_t horizon, std::size_t max_length,
                                              TransportMap map = TransportMap::Reversed);

/// U_beta L_{mu,w} = L_{lambda,w} U_beta for all |w| <= max_length.
std::vector<OperatorMismatch> gauge_check(const GaugeTransform& gauge, std::size_t horizon, std::size_t max_length);

}  // namespace fockweight
