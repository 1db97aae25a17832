#pragma once

// Independent reference implementations used by the tests. Paths are plain
// strings of single-character edge names, leftmost edge first, so that
// nothing here goes through the library's path or weight machinery.

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fockweight/scenario.hpp"
#include "fockweight/sparse_operator.hpp"

namespace oracle {

using fockweight::Rational;

inline fockweight::Graph two_loops() {
  return fockweight::Graph::validate({{"phi"}, {{"e", "phi", "phi"}, {"f", "phi", "phi"}}});
}
inline fockweight::Graph two_cycle() {
  return fockweight::Graph::validate({{"x", "y"}, {{"e", "x", "y"}, {"f", "y", "x"}}});
}

inline const char* kTrailingHalves = "rule trailing=e => 1/2\ndefault => 1\n";
inline const char* kRepeatHalves = "rule new_eq_trailing => 1/2\ndefault => 1\n";
inline const std::vector<long> kZigZag = {0,  -1, -2, -3, -4, -5, -4, -3, -2, -1, 0,  1,  2,  3,
                                          4,  5,  4,  3,  2,  1,  0,  -1, -2, -3, -4, -5, -4, -3,
                                          -2, -1, 0,  1,  2,  3,  4,  5,  4,  3,  2,  1,  0};
inline std::string zigzag_program() {
  std::string t = "table zz = [";
  for (std::size_t i = 0; i < kZigZag.size(); ++i) t += (i ? "," : "") + std::to_string(kZigZag[i]);
  return t + "]\nrule src=y => pow(2, dtable(zz))\ndefault => 1\n";
}

inline Rational two_pow(long k) {
  Rational r(1);
  for (long i = 0; i < std::labs(k); ++i) r *= 2;
  return k >= 0 ? r : Rational(1) / r;
}

// Closed forms. `word` is the edge string, "" for a vertex path.
inline Rational alpha_trailing_halves(const std::string& word) {
  if (!word.empty() && word.back() == 'e') return two_pow(-static_cast<long>(word.size()));
  return 1;
}
// Each edge added on the left halves the weight when it matches the
// rightmost edge.
inline Rational alpha_repeat_halves(const std::string& word) {
  long repeats = 0;
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] == word.back()) ++repeats;
  return two_pow(-repeats);
}
// Two-cycle: a word's source is x when its rightmost edge is e.
inline Rational alpha_zigzag(const std::string& word, bool source_is_y) {
  if (!source_is_y) return 1;
  return two_pow(kZigZag.at(word.size()));
}

inline std::string word(const fockweight::Graph& g, const fockweight::Path& p) {
  std::string w;
  for (auto e : p.edges()) w += g.edge(e).name;
  return w;
}

// Dense copy for Eigen-free comparisons.
inline std::vector<std::vector<double>> dense(const fockweight::FloatOperator& op) {
  std::vector<std::vector<double>> m(op.dimension(), std::vector<double>(op.dimension(), 0.0));
  op.for_each([&](std::size_t r, std::size_t c, double v) { m[r][c] = v; });
  return m;
}

// Random rule programs over a graph's identifiers. Tables are +-1 walks long
// enough for the given horizon.
inline std::string random_program(std::mt19937_64& rng, const fockweight::Graph& g, std::size_t horizon) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  const std::vector<std::string> factors = {"1/2", "2", "1/3", "3/2", "2/3", "5/4", "1", "7/5"};
  std::string text = "table t = [0";
  long level = 0;
  for (std::size_t i = 0; i <= horizon + 1; ++i) {
    level += pick(2) ? 1 : -1;
    text += "," + std::to_string(level);
  }
  text += "]\n";
  const std::size_t rules = 1 + pick(4);
  for (std::size_t r = 0; r < rules; ++r) {
    std::vector<std::string> atoms;
    const std::size_t n_atoms = 1 + pick(2);
    for (std::size_t a = 0; a < n_atoms; ++a) {
      auto e = g.edge(fockweight::EdgeId{static_cast<std::uint32_t>(pick(g.edge_count()))}).name;
      auto x = g.vertex_name(fockweight::VertexId{static_cast<std::uint32_t>(pick(g.vertex_count()))});
      switch (pick(7)) {
        case 0: atoms.push_back("new=" + e); break;
        case 1: atoms.push_back("trailing=" + e); break;
        case 2: atoms.push_back("trailing=none"); break;
        case 3: atoms.push_back("src=" + x); break;
        case 4: atoms.push_back("new_eq_trailing"); break;
        case 5: atoms.push_back("len<" + std::to_string(1 + pick(4))); break;
        default: atoms.push_back("len%2=" + std::to_string(pick(2))); break;
      }
    }
    std::string guard;
    for (std::size_t a = 0; a < atoms.size(); ++a) guard += (a ? " and " : "") + atoms[a];
    std::string factor = pick(4) == 0 ? "pow(" + factors[pick(factors.size())] + ", dtable(t))"
                                      : factors[pick(factors.size())];
    text += "rule " + guard + " => " + factor + "\n";
  }
  text += "default => " + factors[pick(factors.size())] + "\n";
  return text;
}

inline fockweight::Graph random_graph(std::mt19937_64& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return two_loops();
    case 1: return two_cycle();
    default:
      return fockweight::Graph::validate(
          {{"a", "b", "c"}, {{"p", "a", "b"}, {"q", "b", "c"}, {"r", "c", "a"}, {"s", "b", "b"}}});
  }
}

}  // namespace oracle
