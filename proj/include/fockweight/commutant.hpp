#pragma once

// Windowed commutants on H_N, the coefficient parametrization of their
// elements, double-commutant probes and the tail-condition search.
//
// Window rule: for a generator g raising grade by d, require
// [X, g] xi_v = 0 only for |v| <= N - d. Compressions of genuine commutant
// elements satisfy this exactly because creation operators never lower grade.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fockweight/fock.hpp"
#include "fockweight/linsolve.hpp"

namespace fockweight {

struct Generator {
  RationalOperator op;
  std::size_t shift = 0;  // grade raised by op
  std::string name;
};

struct WindowedProblem {
  std::shared_ptr<const FockBasis> basis;
  std::vector<Generator> generators;
  std::size_t max_dimension = 600;  // throws ResourceCapExceeded above this
};

struct SolutionBasis {
  std::shared_ptr<const FockBasis> basis;
  std::vector<RationalOperator> elements;
  std::size_t equations = 0;  // non-trivial constraint rows assembled
  std::size_t dimension() const { return elements.size(); }
};

/// Exact nullspace of the stacked windowed constraints, in reduced echelon
/// order (one element per free unknown, unknowns indexed col * D + row).
SolutionBasis solve_windowed_commutant(const WindowedProblem& problem);

/// Entries (row, col) where [X, g] is non-zero inside the window of g.
std::vector<std::pair<std::size_t, std::size_t>> window_violations(const RationalOperator& x, const Generator& g);
inline bool commutes_on_window(const RationalOperator& x, const Generator& g) {
  return window_violations(x, g).empty();
}

/// {L_x : x vertex} and {L_{lambda,e} : e edge}.
std::vector<Generator> left_generators(std::shared_ptr<const FockBasis> basis, const LeftWeight& lambda);
/// {R_x : x vertex} and {R_{rho,u} : u in `paths`}; vertices in `paths` are skipped.
std::vector<Generator> right_generators(std::shared_ptr<const FockBasis> basis, const RightWeight& rho,
                                        const std::vector<Path>& paths);

/// f(u) = <X xi_{r(u)}, xi_u> / rho(r(u), u) for every u in the basis.
CoefficientFunction extract_coefficients(const RationalOperator& x, const RightWeight& rho);

/// <S xi_v, xi_{vu}> = rho(v, u) / rho(r(u), u) * a_u with a_u = f(u) rho(r(u), u).
RationalOperator reconstruct(const CoefficientFunction& f, const RightWeight& rho,
                             std::shared_ptr<const FockBasis> basis);

/// Subspace comparison of a windowed solution space against the structured
/// operators reconstruct(indicator of u), |u| <= N, on rows of grade <= N - 1.
struct OracleComparison {
  std::size_t solver_rank = 0;
  std::size_t structured_rank = 0;
  std::size_t union_rank = 0;
  bool agree() const { return solver_rank == union_rank && structured_rank == union_rank; }
};
OracleComparison compare_with_structured(const SolutionBasis& solutions, const RightWeight& rho);

/// Norm of reconstruct(indicator of u) at horizons 1..N (exact; u must be a
/// path of the graph).
std::vector<Rational> elementary_growth(const Graph& g, const Path& u, const RightWeight& rho, std::size_t horizon);

struct ProbeReport {
  std::size_t horizon = 0;
  std::size_t interior = 0;           // M = N - max |u|
  std::size_t interior_dimension = 0; // dim H_M
  std::vector<Path> tails;            // the non-vertex paths u used
  std::size_t probe_dimension = 0;    // nullity at horizon N
  std::size_t probe_rank = 0;         // rank after compression to H_M
  std::size_t structured_rank = 0;    // rank of {P_M L_w P_M : |w| <= M}
  std::size_t union_rank = 0;
  long gap = 0;                       // union_rank - structured_rank
  bool structured_in_probe = false;
  bool probe_in_structured = false;
  SolutionBasis solutions;            // at horizon N
};

/// Windowed commutant of {R_x} and {R_{rho,u} : u in tails}, compared on the
/// interior window against the span of the compressed left shifts.
ProbeReport double_commutant_probe(const WeightModel& model, const std::vector<Path>& tails, std::size_t horizon,
                                   std::size_t max_dimension = 600);

struct Example46Report {
  RationalOperator projection;
  std::vector<std::string> commutation_failures;  // generator names with window violations
  bool commutes = false;
  Rational functional_on_projection;
  std::vector<Path> functional_failures;  // monomials L_w where the functional is non-zero
  bool separates = false;
  bool odd_shift_commutes = false;  // negative control with u = e; expected false
};

/// Diagonal projection onto span{xi_x, xi_{(fe)^k}} on the 2-cycle
/// e: x -> y, f: y -> x. Throws std::invalid_argument on any other graph.
Example46Report example46_projection(const WeightModel& model, std::size_t horizon);

enum class TailGlobal { HoldsOnHorizon, FailsOnHorizon };
std::string to_string(TailGlobal v);

struct TailVerdict {
  std::size_t cap = 0;
  std::optional<Path> uniform_witness;           // one u that serves every v
  std::vector<std::pair<Path, std::optional<Path>>> witnesses;  // per v, canonical order
  TailGlobal global = TailGlobal::FailsOnHorizon;
  GRhoClassification classification;             // at cap 2 * cap
};

/// For each |v| <= cap, a witness u with |u| <= cap, u and vu both in the
/// empirically bounded class. Uses `classification`, which must cover
/// lengths up to 2 * cap.
TailVerdict tails_check(const GRhoClassification& classification, std::size_t cap);
/// Classifies at cap 2 * cap and the given horizon, then searches.
TailVerdict tails_check(const WeightModel& model, std::size_t cap, std::size_t horizon,
                        const DivergenceRule& rule = {});

/// p_k(T) = sum_{|w| < k} (1 - |w|/k) a_w lambda(s(w), w)^{-1} L_{lambda,w},
/// a_w = <T xi_{s(w)}, xi_w>.
RationalOperator pk_partial_sum(const RationalOperator& t, const LeftWeight& lambda, long k);

enum class Preservation { Holds, Fails, NotApplicable };
std::string to_string(Preservation p);

/// Whether Sigma_k(X) still commutes with g on the window, given that X does.
Preservation sigma_preserves_commutation(const RationalOperator& x, const Generator& g, long k);

}  // namespace fockweight
