#include "doctest.h"

#include <random>

#include "sclkit/errors.hpp"
#include "sclkit/scl.hpp"
#include "test_helpers.hpp"

using namespace sclkit;
using sclkit::testing::ab;

namespace {

PositiveChain positive(const std::vector<std::pair<std::string, long>>& raw,
                       const Alphabet& alphabet) {
  PositiveChain pc{alphabet, {}};
  for (const auto& [text, coeff] : raw)
    pc.terms.emplace_back(cyclic_reduce(Word::parse(text, alphabet)).word, Integer(coeff));
  return pc;
}

}  // namespace

TEST_CASE("encoding of abAB") {
  SclProblem p = SclProblem::build(positive({{"abAB", 1}}, ab()));
  CHECK(p.num_positions() == 4);
  CHECK(p.num_rectangles() == 2);
  CHECK(p.num_nodes() == 4);
  CHECK(p.num_arcs() == 4);
}

TEST_CASE("encoding of a + A") {
  SclProblem p = SclProblem::build(positive({{"a", 1}, {"A", 1}}, ab()));
  CHECK(p.num_positions() == 2);
  CHECK(p.num_rectangles() == 1);
  CHECK(p.num_nodes() == 2);
  CHECK(p.num_arcs() == 2);
}

TEST_CASE("encoding rejects non-null-homologous chains") {
  CHECK_THROWS_AS(SclProblem::build(positive({{"a", 1}}, ab())), NotNullHomologousError);
}

TEST_CASE("no self-loop arcs on cyclically reduced input") {
  std::mt19937 rng(37);
  for (int i = 0; i < 30; ++i) {
    Chain c = sclkit::testing::random_null_homologous_chain(rng, 8);
    PositiveChain pc = to_positive_chain(c);
    SclProblem p = SclProblem::build(pc);
    for (const auto& arc : p.arcs()) CHECK(arc.from != arc.to);
    // Every position is the after-side of d(p) nodes.
    std::vector<int> after_count(p.num_positions(), 0), rect_count(p.num_positions(), 0);
    for (int v = 0; v < p.num_nodes(); ++v) after_count[p.after_position(v)] += 1;
    for (const auto& r : p.rectangles()) {
      rect_count[r.a] += 1;
      rect_count[r.b] += 1;
    }
    CHECK(after_count == rect_count);
  }
}

TEST_CASE("scl of the basic chains") {
  Alphabet a = ab();
  SclValue v1 = scl("abAB", a);
  REQUIRE_FALSE(v1.infinite);
  CHECK(v1.value == Rational(1, 2));

  SclValue v2 = scl("a + A", a);
  REQUIRE_FALSE(v2.infinite);
  CHECK(v2.value == Rational(0));

  SclValue v3 = scl("ab + B + A", a);
  REQUIRE_FALSE(v3.infinite);
  CHECK(v3.value == Rational(1, 2));

  CHECK(scl("a", a).infinite);
}

TEST_CASE("solve_scl returns the annulus for a + A") {
  SclProblem p = SclProblem::build(positive({{"a", 1}, {"A", 1}}, ab()));
  SclResult r = solve_scl(p);
  CHECK(r.value == Rational(0));
  CHECK(r.dual_certified);
  REQUIRE(r.cycles.size() == 1);
  CHECK(r.cycles[0].first.size() == 2);  // bigon
  CHECK(r.extremal.degree == 1);
}

TEST_CASE("solve_scl forced optimum for abAB") {
  SclProblem p = SclProblem::build(positive({{"abAB", 1}}, ab()));
  SclResult r = solve_scl(p);
  CHECK(r.value == Rational(1, 2));
  CHECK(r.rect_weights == std::vector<Rational>{1, 1});
  REQUIRE(r.cycles.size() == 1);
  CHECK(r.cycles[0].first.size() == 4);
  CHECK(r.cycles[0].second == Rational(1));
  CHECK(r.extremal.degree == 1);
  CHECK(r.dual_certified);
  // Dual objective equals the primal value exactly.
  Rational dual_value = 0;
  for (int q = 0; q < p.num_positions(); ++q)
    dual_value += Rational(p.coefficient_at(q)) * r.duals[q];
  CHECK(dual_value == r.value);
}

TEST_CASE("fill norm is four times scl") {
  Alphabet a = ab();
  CHECK(fill_norm(parse_chain_expression("abAB", a)).value == Rational(2));
  CHECK(fill_norm(parse_chain_expression("a + A", a)).value == Rational(0));
  CHECK(fill_norm(canonicalize_chain({{"a", 1}}, a)).infinite);
}

TEST_CASE("subspace evaluation") {
  Alphabet a = ab();
  Chain c1 = parse_chain_expression("abAB", a);
  Chain c2 = parse_chain_expression("a + A", a);
  CHECK(scl_on_subspace({c1, c1}, {1, 1}).value == Rational(1));
  CHECK(scl_on_subspace({c1, c2}, {0, 0}).value == Rational(0));
  CHECK(scl_on_subspace({c1, c2}, {1, 5}).value == Rational(1, 2));
}

TEST_CASE("scl value is nonnegative and homogeneous on random chains") {
  std::mt19937 rng(41);
  for (int i = 0; i < 12; ++i) {
    Chain c = sclkit::testing::random_null_homologous_chain(rng, 7);
    SclValue base = scl(c);
    REQUIRE_FALSE(base.infinite);
    CHECK(base.value >= Rational(0));
    for (int k = 2; k <= 4; ++k) {
      SclValue scaled = scl(c.scaled(Rational(k)));
      CHECK(scaled.value == base.value * Rational(k));
    }
  }
}

TEST_CASE("conjugacy and inverse invariance, subadditivity") {
  Alphabet a = ab();
  std::mt19937 rng(43);
  for (int i = 0; i < 8; ++i) {
    Chain c = sclkit::testing::random_null_homologous_chain(rng, 6);
    SclValue base = scl(c);

    // Replace each word by a conjugate.
    std::vector<std::pair<std::string, Rational>> conj_raw;
    for (const auto& [w, coeff] : c.terms()) {
      std::string h = sclkit::testing::random_nontrivial_word(rng, 1 + i % 3);
      Word conj = Word::parse(h, a) * Word(w.letters()) * Word::parse(h, a).inverse();
      conj_raw.emplace_back(conj.render(a), coeff);
    }
    CHECK(scl(canonicalize_chain(conj_raw, a)).value == base.value);

    // Inverse symmetry.
    std::vector<std::pair<CyclicWord, Rational>> inv_terms;
    for (const auto& [w, coeff] : c.terms()) inv_terms.emplace_back(w.inverse(), coeff);
    CHECK(scl(canonicalize_terms(inv_terms, a)).value == base.value);

    // Subadditivity against a second chain.
    Chain d = sclkit::testing::random_null_homologous_chain(rng, 6);
    SclValue sum = scl(c + d);
    CHECK(sum.value <= base.value + scl(d).value);
  }
}

TEST_CASE("extremal integral solution satisfies the coverage at degree n") {
  std::mt19937 rng(47);
  for (int i = 0; i < 10; ++i) {
    Chain c = sclkit::testing::random_null_homologous_chain(rng, 7);
    PositiveChain pc = to_positive_chain(c);
    SclProblem p = SclProblem::build(pc);
    SclResult r = solve_scl(p);
    const Integer& n = r.extremal.degree;
    std::vector<Integer> coverage(p.num_positions(), 0);
    for (int rect = 0; rect < p.num_rectangles(); ++rect) {
      coverage[p.rectangles()[rect].a] += r.extremal.rect_weights[rect];
      coverage[p.rectangles()[rect].b] += r.extremal.rect_weights[rect];
    }
    for (int q = 0; q < p.num_positions(); ++q) CHECK(coverage[q] == n * p.coefficient_at(q));
    // chi accounting: (sum x - sum t)/2 = n * scl.
    Integer rect_total = 0, poly_total = 0;
    for (const auto& w : r.extremal.rect_weights) rect_total += w;
    for (const auto& [cyc, w] : r.extremal.cycles) poly_total += w;
    CHECK(Rational(rect_total - poly_total, 2 * n) == r.value);
  }
}

TEST_CASE("a chain that is not null-homologous reports the infinite variant") {
  Alphabet a = ab();
  SclValue v = scl("aaBB", a);
  CHECK(v.infinite);
}
