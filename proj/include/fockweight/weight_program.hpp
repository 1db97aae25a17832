#pragma once

// Rule programs that define a path weight by extension factors.
//
//   table zz = [0, 1, 2, 1, 0]
//   rule src=y => pow(2, dtable(zz))
//   rule trailing=e and len<3 => 1/2
//   default => 1
//
// The weight of ev is factor(e, v) * weight(v), where factor is taken from
// the first rule whose guard holds for the extension of v by the new edge e.
// Vertices have weight 1.
//
// Guard atoms (conjoined with `and`, `&&` or `,`):
//   new=<edge>          the new edge is <edge>                 (alias new_edge)
//   trailing=<edge>     the rightmost edge of ev is <edge>     (alias trailing_edge)
//   trailing=none       v is a vertex, i.e. this is the first edge
//   src=<vertex>        s(v) = <vertex>                        (alias source_vertex)
//   new_eq_trailing     |v| >= 1 and the new edge equals v's rightmost edge
//                       (alias `new_edge equals trailing_edge`)
//   len<k, len%m=r      predicates on |v|
// Factors: a positive rational `p/q`, or `pow(p/q, dtable(name))`, which is
// (p/q)^(t(|v|+1) - t(|v|)) for the named integer table t.

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fockweight/error.hpp"
#include "fockweight/graph.hpp"
#include "fockweight/rational.hpp"

namespace fockweight {

struct GuardAtom {
  enum class Kind { NewEdge, TrailingEdge, TrailingNone, SourceVertex, NewEqualsTrailing, LengthBelow, LengthMod };
  Kind kind;
  std::string name;  // edge or vertex identifier, when the atom names one
  long modulus = 0;  // LengthBelow: bound; LengthMod: modulus
  long residue = 0;
  SourceLocation where;
};

struct Factor {
  Rational base;
  std::optional<std::string> table;  // set for pow(base, dtable(table))
  SourceLocation where;
};

struct Rule {
  std::vector<GuardAtom> guard;  // empty for the default rule
  Factor factor;
  bool is_default = false;
  SourceLocation where;
};

struct WeightProgram {
  std::map<std::string, std::vector<long>> tables;
  std::vector<Rule> rules;  // non-empty; the last rule is the default

  /// Source text that parses back to an equivalent program.
  std::string to_text() const;
};

/// Parses a rule program. `origin` is the location of the first character of
/// `text` inside a larger file, so diagnostics point into that file. When `g`
/// is given, identifiers are checked against it.
///
/// Throws ConfigError (syntax, non-positive factor, missing or misplaced
/// default, unknown table, unknown edge/vertex).
WeightProgram parse_weight_program(std::string_view text, const Graph* g = nullptr,
                                   SourceLocation origin = {});

/// Semantic check of identifiers against a graph. Throws ConfigError.
void check_identifiers(const WeightProgram& program, const Graph& g);

/// Path weight alpha generated by a rule program on a graph.
/// Evaluation is exact and memoized; the memo is internally synchronized.
class PathWeight {
 public:
  PathWeight(Graph g, WeightProgram program);

  const Graph& graph() const { return graph_; }
  const WeightProgram& program() const { return program_; }

  /// alpha(v). Throws TableUnderflow if a dtable factor reads past its table.
  Rational alpha(const Path& v) const;
  /// factor(e, v) such that alpha(ev) = factor(e, v) * alpha(v).
  Rational extension_factor(EdgeId e, const Path& v) const;
  /// alpha over a whole table, indexed like the table.
  std::vector<Rational> alpha_table(const PathTable& table) const;

  /// Every factor any rule can produce (over the whole of each table) is
  /// <= 1. Sufficient for sup_v lambda(v, w) <= 1.
  bool factors_at_most_one() const;
  /// Every non-default guard tests only the new edge and every factor is a
  /// constant, so alpha is multiplicative over edges and rho(v, u) = alpha(u).
  bool edge_determined() const;

 private:
  struct BoundAtom {
    GuardAtom::Kind kind;
    std::uint32_t id = 0;
    long modulus = 0;
    long residue = 0;
  };
  struct BoundRule {
    std::vector<BoundAtom> guard;
    Rational base;
    const std::vector<long>* table = nullptr;
    std::string table_name;
  };

  Rational factor(EdgeId e, std::size_t v_length, std::optional<EdgeId> v_trailing, VertexId source) const;
  Rational compute_alpha(const Path& v) const;

  Graph graph_;
  WeightProgram program_;
  std::vector<BoundRule> rules_;
  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<Path, Rational, PathHash> memo_;
};

}  // namespace fockweight
