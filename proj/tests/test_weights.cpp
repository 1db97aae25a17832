#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace fockweight;

namespace {

WeightModel model(const Graph& g, const std::string& text) {
  return WeightModel::from_program(g, parse_weight_program(text, &g));
}
Path P(const Graph& g, const char* text) { return parse_path(g, text); }
Rational Q(const char* text) { return parse_rational(text); }

std::string located_message(const std::string& text, const Graph* g = nullptr) {
  try {
    parse_weight_program(text, g);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("path weights agree with closed forms") {
  Graph loops = oracle::two_loops();
  Graph cyc = oracle::two_cycle();
  auto halves = model(loops, oracle::kTrailingHalves);
  auto repeats = model(loops, oracle::kRepeatHalves);
  auto zig = model(cyc, oracle::zigzag_program());

  CHECK(halves.alpha->alpha(P(loops, "e")) == Q("1/2"));
  CHECK(halves.alpha->alpha(P(loops, "f")) == 1);
  CHECK(halves.alpha->alpha(P(loops, "fe")) == Q("1/4"));
  CHECK(halves.alpha->alpha(P(loops, "ef")) == 1);
  CHECK(repeats.alpha->alpha(P(loops, "ee")) == Q("1/2"));
  CHECK(repeats.alpha->alpha(P(loops, "ef")) == 1);
  CHECK(repeats.alpha->alpha(P(loops, "fe")) == 1);
  CHECK(repeats.alpha->alpha(P(loops, "fff")) == Q("1/4"));

  for (const Path& p : PathTable(loops, 8)) {
    const std::string w = oracle::word(loops, p);
    CHECK(halves.alpha->alpha(p) == oracle::alpha_trailing_halves(w));
    CHECK(repeats.alpha->alpha(p) == oracle::alpha_repeat_halves(w));
  }
  for (const Path& p : PathTable(cyc, 16)) {
    const bool from_y = cyc.vertex_name(p.source()) == "y";
    CHECK(zig.alpha->alpha(p) == oracle::alpha_zigzag(oracle::word(cyc, p), from_y));
  }
  for (VertexId x : cyc.vertex_ids()) CHECK(zig.alpha->alpha(Path::vertex(x)) == 1);
}

TEST_CASE("derived left and right weights") {
  Graph loops = oracle::two_loops();
  auto m = model(loops, oracle::kTrailingHalves);
  CHECK(m.lambda(P(loops, "e"), P(loops, "f")) == Q("1/2"));
  CHECK(m.lambda(P(loops, "f"), P(loops, "e")) == 1);
  CHECK(m.rho(P(loops, "e"), P(loops, "f")) == 2);
  for (const Path& v : PathTable(loops, 6)) {
    CHECK(m.lambda(v, Path::vertex(v.range())) == 1);
    CHECK(m.rho(v, Path::vertex(v.source())) == 1);
    if (!v.is_vertex() && oracle::word(loops, v).back() == 'e')
      CHECK(m.rho(v, P(loops, "f")) == oracle::two_pow(static_cast<long>(v.length())));
  }
  Graph cyc = oracle::two_cycle();
  auto z = model(cyc, oracle::zigzag_program());
  CHECK(z.lambda(P(cyc, "e"), P(cyc, "e")) == 0);  // not composable
  CHECK(z.rho(P(cyc, "f"), P(cyc, "f")) == 0);
  CHECK(z.alpha->extension_factor(*cyc.find_edge("e"), P(cyc, "f")) == Q("1/2"));
}

TEST_CASE("weight program parse errors carry line and column") {
  Graph loops = oracle::two_loops();
  CHECK(located_message("default => 0\n").find("1:12:") == 0);
  CHECK(located_message("rule trailing=e => 1/2\n").find(":") != std::string::npos);
  CHECK(located_message("rule trailing=g => 1/2\ndefault => 1\n", &loops).rfind("1:6:", 0) == 0);
  CHECK(located_message("rule src=q => 2\ndefault => 1\n", &loops).find("q") != std::string::npos);
  CHECK(located_message("default => 1\nrule new=e => 2\n").rfind("2:", 0) == 0);
  CHECK(located_message("rule bogus => 2\ndefault => 1\n").rfind("1:6:", 0) == 0);
  CHECK(located_message("rule new=e => pow(2, dtable(missing))\ndefault => 1\n").find("missing") !=
        std::string::npos);
  CHECK(located_message("rule new=e => -1\ndefault => 1\n") != "");
  CHECK(located_message("rule trailing=e => 1/2; default => 1") == "");
  CHECK(located_message("rule new_edge equals trailing_edge => 1/2; default => 1") == "");
  CHECK(located_message("rule trailing_edge=e, len<3 => 1/2; default => 1", &loops) == "");
}

TEST_CASE("programs print back to equivalent text") {
  Graph cyc = oracle::two_cycle();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    Graph g = oracle::random_graph(rng);
    auto prog = parse_weight_program(oracle::random_program(rng, g, 6), &g);
    auto again = parse_weight_program(prog.to_text(), &g);
    CHECK(again.to_text() == prog.to_text());
    PathWeight a(g, prog), b(g, again);
    for (const Path& p : PathTable(g, 6)) CHECK(a.alpha(p) == b.alpha(p));
  }
}

TEST_CASE("table underflow is reported") {
  Graph cyc = oracle::two_cycle();
  auto prog = parse_weight_program("table t = [0, 1, 2]\nrule src=y => pow(2, dtable(t))\ndefault => 1\n", &cyc);
  PathWeight w(cyc, prog);
  CHECK(w.alpha(P(cyc, "ef")) == 4);
  CHECK_THROWS_AS(w.alpha(P(cyc, "fef")), TableUnderflow);
}

TEST_CASE("cocycle identities hold for derived weights") {
  std::vector<std::pair<Graph, std::string>> cases = {{oracle::two_loops(), oracle::kTrailingHalves},
                                                      {oracle::two_loops(), oracle::kRepeatHalves},
                                                      {oracle::two_cycle(), oracle::zigzag_program()}};
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5; ++i) {
    Graph g = oracle::random_graph(rng);
    cases.emplace_back(g, oracle::random_program(rng, g, 8));
  }
  for (const auto& [g, text] : cases) {
    auto m = model(g, text);
    CHECK(check_left_cocycle(g, m.lambda, 8).empty());
    CHECK(check_right_cocycle(g, m.rho, 8).empty());
    CHECK(check_commuting_square(g, m.lambda, m.rho, 8).empty());
    for (const Path& p : PathTable(g, 6)) CHECK(m.lambda.path_weight(p) == m.alpha->alpha(p));
  }
}

TEST_CASE("a perturbed entry is reported exactly where it appears unbalanced") {
  Graph loops = oracle::two_loops();
  auto m = model(loops, oracle::kTrailingHalves);
  const Path v0 = P(loops, "e"), w0 = P(loops, "f");
  LeftWeight bad = m.lambda.with_entry(v0, w0, m.lambda(v0, w0) * 7);
  const std::size_t n = 5;

  std::set<std::vector<Path>> expected;
  PathTable t(loops, n);
  for (const Path& v : t)
    for (const Path& w1 : t)
      for (const Path& w2 : t) {
        if (v.length() + w1.length() + w2.length() > n) continue;
        auto w2w1 = *compose(w2, w1);
        auto w1v = *compose(w1, v);
        int lhs = (v == v0 && w2w1 == w0);
        int rhs = (w1v == v0 && w2 == w0) + (v == v0 && w1 == w0);
        if (lhs != rhs) expected.insert({v, w1, w2});
      }
  std::set<std::vector<Path>> got;
  for (const auto& viol : check_left_cocycle(loops, bad, n)) got.insert(viol.paths);
  CHECK(!expected.empty());
  CHECK(got == expected);
}

TEST_CASE("commuting square and companions") {
  Graph loops = oracle::two_loops();
  auto halves = model(loops, oracle::kTrailingHalves);
  auto repeats = model(loops, oracle::kRepeatHalves);
  CHECK_FALSE(check_commuting_square(loops, halves.lambda, repeats.rho, 6).empty());

  RightWeight scaled = halves.rho.rescaled({{*loops.find_edge("e"), Rational(3)}, {*loops.find_edge("f"), Q("2/5")}});
  CHECK(check_commuting_square(loops, halves.lambda, scaled, 6).empty());
  for (const Path& u1 : PathTable(loops, 3))
    for (const Path& u2 : PathTable(loops, 3)) {
      Path u = *compose(u1, u2);
      CHECK(companion_ratio(halves.rho, scaled, u) ==
            companion_ratio(halves.rho, scaled, u2) * companion_ratio(halves.rho, scaled, u1));
    }

  RightWeight canon = canonical_companion(loops, halves.lambda, 6);
  CHECK(canon(P(loops, "phi"), P(loops, "e")) == Q("1/2"));
  CHECK(canon(P(loops, "phi"), P(loops, "e")) == halves.lambda(P(loops, "phi"), P(loops, "e")));
  for (const Path& v : PathTable(loops, 3))
    for (const Path& u : PathTable(loops, 3)) CHECK(canon(v, u) == halves.rho(v, u));

  auto flat = model(loops, "default => 1\n");
  RightWeight one = canonical_companion(loops, flat.lambda, 5);
  for (const Path& v : PathTable(loops, 3))
    for (const Path& u : PathTable(loops, 2)) CHECK(one(v, u) == 1);

  LeftWeight broken = halves.lambda.with_entry(P(loops, "e"), P(loops, "e"), 5);
  CHECK_THROWS_AS(canonical_companion(loops, broken, 4), std::invalid_argument);
}

TEST_CASE("empirical bounds") {
  Graph loops = oracle::two_loops();
  auto halves = model(loops, oracle::kTrailingHalves);
  auto repeats = model(loops, oracle::kRepeatHalves);
  PathTable t(loops, 8);

  auto left = empirical_bound(halves, Side::Left, P(loops, "e"), t, 8);
  CHECK(left.sup == 1);
  CHECK(left.verdict == BoundVerdict::BoundedCertified);

  auto right = empirical_bound(halves, Side::Right, P(loops, "f"), t, 8);
  CHECK(right.verdict == BoundVerdict::DivergentEmpirical);
  CHECK(right.sup == 128);
  REQUIRE(right.level_maxima.size() == 8);
  for (std::size_t l = 0; l < 8; ++l) CHECK(right.level_maxima[l] == oracle::two_pow(static_cast<long>(l)));

  auto r47 = empirical_bound(repeats, Side::Right, P(loops, "e"), t, 8);
  CHECK(r47.verdict == BoundVerdict::DivergentEmpirical);
  // rho(f^k, e) = 2^(k-1)
  for (std::size_t k = 1; k < 8; ++k) {
    Path fk = P(loops, std::string(k, 'f').c_str());
    CHECK(repeats.rho(fk, P(loops, "e")) == oracle::two_pow(static_cast<long>(k) - 1));
  }

  // Level maxima are monotone in the horizon.
  auto shorter = empirical_bound(halves, Side::Right, P(loops, "f"), PathTable(loops, 6), 6);
  for (std::size_t l = 0; l < shorter.level_maxima.size(); ++l)
    CHECK(shorter.level_maxima[l] == right.level_maxima[l]);
}

TEST_CASE("bounded class classification") {
  Graph loops = oracle::two_loops();
  auto halves = model(loops, oracle::kTrailingHalves);
  auto c45 = classify_g_rho(halves, 3, 8);
  for (const auto& m : c45.members) {
    const std::string w = oracle::word(loops, m.path);
    CHECK(m.bounded() == (w.empty() || w.back() == 'e'));
  }
  CHECK(c45.closure_violations.empty());

  auto c47 = classify_g_rho(model(loops, oracle::kRepeatHalves), 3, 8);
  CHECK(c47.bounded_paths() == std::vector<Path>{P(loops, "phi")});

  Graph cyc = oracle::two_cycle();
  auto c46 = classify_g_rho(model(cyc, oracle::zigzag_program()), 4, 16);
  std::vector<std::string> labels;
  for (const Path& p : c46.bounded_paths()) labels.push_back(label(cyc, p));
  CHECK(labels == std::vector<std::string>{"x", "y", "ef", "fe", "efef", "fefe"});
  CHECK(c46.closure_violations.empty());
  CHECK(c46.rule.run_length == 5);

  CHECK_THROWS_AS(classify_g_rho(halves, 5, 3), std::invalid_argument);
}

TEST_CASE("gauge transforms") {
  Graph loops = oracle::two_loops();
  auto halves = model(loops, oracle::kTrailingHalves);
  const EdgeId e = *loops.find_edge("e");

  GaugeTransform trivial(loops, {}, halves.lambda);
  for (const Path& v : PathTable(loops, 4)) CHECK(trivial.beta_diagonal(v).re == 1);

  ComplexWeightSpec spec;
  spec.edge_phase[e] = Gaussian(0, 1);
  GaugeTransform rot(loops, spec, halves.lambda);
  Gaussian expected(1);
  for (std::size_t k = 1; k <= 6; ++k) {
    expected = expected * Gaussian(0, -1);
    Gaussian got = rot.beta_diagonal(P(loops, std::string(k, 'e').c_str()));
    CHECK(got.re == expected.re);
    CHECK(got.im == expected.im);
  }
  CHECK(check_beta_cocycle(loops, rot, 6).empty());

  spec.overrides.push_back({P(loops, "f"), e, Gaussian(Q("3/5"), Q("4/5"))});
  GaugeTransform pyth(loops, spec, halves.lambda);
  CHECK(check_beta_cocycle(loops, pyth, 6).empty());
  for (const Path& v : PathTable(loops, 3))
    for (const Path& w : PathTable(loops, 2)) CHECK(pyth.mu(v, w).norm2() == halves.lambda(v, w) * halves.lambda(v, w));

  ComplexWeightSpec bad;
  bad.edge_phase[e] = Gaussian(Q("1/2"), Q("1/2"));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
