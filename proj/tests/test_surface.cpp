#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "sclkit/errors.hpp"
#include "sclkit/oracle.hpp"
#include "sclkit/surface.hpp"
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

CombinatorialSurface extremal_surface(const std::vector<std::pair<std::string, long>>& raw) {
  PositiveChain pc = positive(raw, ab());
  SclProblem p = SclProblem::build(pc);
  return assemble(p, solve_scl(p).extremal);
}

CombinatorialSurface punctured_torus() { return extremal_surface({{"abAB", 1}}); }
CombinatorialSurface annulus() { return extremal_surface({{"a", 1}, {"A", 1}}); }
CombinatorialSurface pants() { return extremal_surface({{"ab", 1}, {"B", 1}, {"A", 1}}); }

}  // namespace

TEST_CASE("assembled abAB extremal surface is a once-punctured torus") {
  CombinatorialSurface s = punctured_torus();
  CHECK(s.euler_characteristic() == -1);
  CHECK(s.chi_minus() == -1);
  CHECK(s.connected());
  CHECK(s.genus() == 1);
  REQUIRE(s.boundary().size() == 1);
  CHECK(s.boundary()[0].degree == 1);
  CHECK(s.words()[s.boundary()[0].word].text == "abAB");
}

TEST_CASE("assembled a + A extremal surface is an annulus") {
  CombinatorialSurface s = annulus();
  CHECK(s.euler_characteristic() == 0);
  CHECK(s.chi_minus() == 0);
  REQUIRE(s.boundary().size() == 2);
  CHECK(s.boundary()[0].degree == 1);
  CHECK(s.boundary()[1].degree == 1);
  std::set<std::string> traced{s.words()[s.boundary()[0].word].text,
                               s.words()[s.boundary()[1].word].text};
  CHECK(traced == std::set<std::string>{"a", "A"});
}

TEST_CASE("pants surface for ab + B + A") {
  CombinatorialSurface s = pants();
  CHECK(s.euler_characteristic() == -1);
  CHECK(s.connected());
  CHECK(s.genus() == 0);
  CHECK(s.boundary().size() == 3);
}

TEST_CASE("doubled commutator chain assembles at total boundary degree 2") {
  PositiveChain pc = positive({{"abAB", 2}}, ab());
  SclProblem p = SclProblem::build(pc);
  SclResult r = solve_scl(p);
  CHECK(r.value == Rational(1));
  CombinatorialSurface s = assemble(p, r.extremal);
  CHECK(s.euler_characteristic() == -2);
  Integer total = 0;
  for (const auto& bc : s.boundary()) total += bc.degree;
  CHECK(total == 2 * r.extremal.degree);
}

TEST_CASE("boundary degrees are positive and sum to n times the coefficient") {
  std::mt19937 rng(73);
  for (int i = 0; i < 10; ++i) {
    Chain c = sclkit::testing::random_null_homologous_chain(rng, 7);
    PositiveChain pc = to_positive_chain(c);
    SclProblem p = SclProblem::build(pc);
    SclResult r = solve_scl(p);
    CombinatorialSurface s = assemble(p, r.extremal);
    std::vector<Integer> per_word(pc.terms.size(), 0);
    for (const auto& bc : s.boundary()) {
      CHECK(bc.degree >= 1);
      per_word[bc.word] += bc.degree;
    }
    for (std::size_t w = 0; w < pc.terms.size(); ++w)
      CHECK(per_word[w] == r.extremal.degree * pc.terms[w].second);
  }
}

TEST_CASE("chi is additive over disjoint unions") {
  CombinatorialSurface torus = punctured_torus();
  CombinatorialSurface ann = annulus();
  CombinatorialSurface both = merge_surfaces({torus, ann});
  CHECK(both.euler_characteristic() == -1);
  CHECK(both.chi_minus() == -1);
  CHECK(both.components().size() == 2);
  CHECK(both.boundary().size() == 3);
}

TEST_CASE("genus agrees with the exact homology rank") {
  for (const CombinatorialSurface& s : {punctured_torus(), annulus(), pants()}) {
    // For a connected surface with boundary, rank H1 = 1 - chi.
    CHECK(s.h1_rank() == static_cast<std::size_t>(1 - s.euler_characteristic()));
  }
}

TEST_CASE("identity and trivial covers") {
  CombinatorialSurface s = punctured_torus();
  SurfaceTransform id = cyclic_cover(s, {1, {0}});
  CHECK(id.surface == s);
  CHECK(id.boundary_base == std::vector<int>{0});

  SurfaceTransform doubled = cyclic_cover(s, {2, {0}});
  CHECK(doubled.surface.components().size() == 2);
  CHECK(doubled.surface.euler_characteristic() == -2);
  CHECK(doubled.surface.boundary().size() == 2);
  // Matches two disjoint copies.
  SurfaceTransform copies = disjoint_copies(s, 2);
  CHECK(copies.surface.euler_characteristic() == doubled.surface.euler_characteristic());
  CHECK(copies.surface.boundary().size() == doubled.surface.boundary().size());
}

TEST_CASE("unbalanced assignments are rejected") {
  CombinatorialSurface s = annulus();
  CHECK_THROWS_AS(cyclic_cover(s, {2, {1, 0}}), UnbalancedAssignmentError);
}

TEST_CASE("pants cover with phi = (1,1,1) mod 3 is a connected genus-1 surface") {
  CombinatorialSurface s = pants();
  SurfaceTransform t = cyclic_cover(s, {3, {1, 1, 1}});
  CHECK(t.surface.euler_characteristic() == -3);
  CHECK(t.surface.connected());
  CHECK(t.surface.boundary().size() == 3);
  CHECK(t.surface.genus() == 1);
  for (const auto& bc : t.surface.boundary()) CHECK(bc.degree == 3);
}

TEST_CASE("cover degrees follow the order of phi") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    Chain c = sclkit::testing::random_null_homologous_chain(rng, 7);
    PositiveChain pc = to_positive_chain(c);
    SclProblem p = SclProblem::build(pc);
    CombinatorialSurface s = assemble(p, solve_scl(p).extremal);
    const int b = static_cast<int>(s.boundary().size());
    long n = 2 + trial % 5;
    std::uniform_int_distribution<long> d(0, n - 1);
    std::vector<Integer> phi(b);
    // Balanced independently on every connected component.
    std::map<int, std::vector<int>> by_comp;
    for (int i = 0; i < b; ++i) by_comp[s.component_of_boundary(i)].push_back(i);
    for (auto& [comp, circles] : by_comp) {
      long sum = 0;
      for (std::size_t k = 0; k + 1 < circles.size(); ++k) {
        long x = d(rng);
        phi[circles[k]] = x;
        sum += x;
      }
      phi[circles.back()] = ((-sum) % n + n) % n;
    }
    SurfaceTransform t = cyclic_cover(s, {Integer(n), phi});
    CHECK(t.surface.euler_characteristic() == n * s.euler_characteristic());
    std::vector<int> count(b, 0);
    for (std::size_t i = 0; i < t.boundary_base.size(); ++i) {
      int base = t.boundary_base[i];
      Integer order = Integer(n) / gcd(phi[base], Integer(n));
      CHECK(Integer(t.surface.boundary()[i].degree) ==
            order * Integer(s.boundary()[base].degree));
      count[base] += 1;
    }
    for (int i = 0; i < b; ++i) CHECK(Integer(count[i]) * (Integer(n) / gcd(phi[i], Integer(n))) == Integer(n));
  }
}

TEST_CASE("ensure_positive_genus") {
  CombinatorialSurface torus = punctured_torus();
  SurfaceTransform same = ensure_positive_genus(torus);
  CHECK(same.surface == torus);

  CombinatorialSurface p = pants();
  SurfaceTransform fixed = ensure_positive_genus(p);
  CHECK(fixed.surface.connected());
  CHECK(fixed.surface.genus() >= 1);
  // Boundary target words are preserved as a multiset of labels.
  std::multiset<std::string> before, after;
  for (const auto& bc : p.boundary()) before.insert(p.words()[bc.word].text);
  for (const auto& bc : fixed.surface.boundary())
    after.insert(fixed.surface.words()[bc.word].text);
  for (const auto& w : before) CHECK(after.count(w) >= 1);

  CHECK_THROWS_AS(ensure_positive_genus(annulus()), Error);
}

TEST_CASE("four-holed sphere gets positive genus with modulus at most 3") {
  Alphabet abc = Alphabet::from_list("a,b,c");
  PositiveChain pc = positive({{"abc", 1}, {"A", 1}, {"B", 1}, {"C", 1}}, abc);
  SclProblem p = SclProblem::build(pc);
  CombinatorialSurface s = assemble(p, solve_scl(p).extremal);
  REQUIRE(s.euler_characteristic() == -2);
  REQUIRE(s.boundary().size() == 4);
  REQUIRE(s.genus() == 0);
  SurfaceTransform t = ensure_positive_genus(s);
  CHECK(t.surface.connected());
  CHECK(t.surface.genus() >= 1);
  int modulus = t.surface.num_vertices() / s.num_vertices();
  CHECK(modulus <= 3);
}

TEST_CASE("pairing_cover doubles boundaries at equal degree") {
  CombinatorialSurface torus = punctured_torus();
  SurfaceTransform t = pairing_cover(torus);
  CHECK(t.surface.euler_characteristic() == -2);
  CHECK(t.surface.boundary().size() == 2);
  for (const auto& bc : t.surface.boundary()) CHECK(bc.degree == 1);
  // chi = -2 with b = 2 forces genus 1 when connected.
  if (t.surface.connected()) CHECK(t.surface.genus() == 1);

  CHECK_THROWS_AS(pairing_cover(annulus()), NoGenusError);
}

TEST_CASE("pairing_cover on a genus-1 cover of the pants") {
  SurfaceTransform g1 = ensure_positive_genus(pants());
  SurfaceTransform t = pairing_cover(g1.surface);
  CHECK(t.surface.euler_characteristic() == 2 * g1.surface.euler_characteristic());
  CHECK(t.surface.boundary().size() == 2 * g1.surface.boundary().size());
  std::vector<int> count(g1.surface.boundary().size(), 0);
  for (std::size_t i = 0; i < t.boundary_base.size(); ++i) {
    CHECK(t.surface.boundary()[i].degree ==
          g1.surface.boundary()[t.boundary_base[i]].degree);
    count[t.boundary_base[i]] += 1;
  }
  for (int c : count) CHECK(c == 2);
}

TEST_CASE("disjoint copies scale everything") {
  CombinatorialSurface ann = annulus();
  SurfaceTransform three = disjoint_copies(ann, 3);
  CHECK(three.surface.euler_characteristic() == 0);
  CHECK(three.surface.components().size() == 3);
  CHECK(three.surface.boundary().size() == 6);
  SurfaceTransform one = disjoint_copies(ann, 1);
  CHECK(one.surface == ann);
}

TEST_CASE("gluing two circles through a cylinder") {
  CombinatorialSurface torus = punctured_torus();
  // Mirror piece bounding the inverse word.
  PositiveChain inv = positive({{"aBAb", 1}}, ab());
  SclProblem p = SclProblem::build(inv);
  CombinatorialSurface mirror = assemble(p, solve_scl(p).extremal);
  CombinatorialSurface both = merge_surfaces({torus, mirror});
  REQUIRE(both.boundary().size() == 2);
  CombinatorialSurface closed = glue_through_cylinder(both, 0, 1);
  CHECK(closed.boundary().empty());
  CHECK(closed.euler_characteristic() == -2);
  CHECK(closed.connected());
  CHECK(closed.genus() == 2);
}

TEST_CASE("gluing two circles of the same piece adds a handle") {
  SurfaceTransform paired = pairing_cover(punctured_torus());
  REQUIRE(paired.surface.boundary().size() == 2);
  CombinatorialSurface closed = glue_through_cylinder(paired.surface, 0, 1);
  CHECK(closed.boundary().empty());
  CHECK(closed.euler_characteristic() == -2);
  CHECK(closed.genus() == 2);
}

TEST_CASE("covers apply to composites containing cylinder faces") {
  // Glue a punctured torus to one pants cuff; the composite keeps two free
  // circles and contains a cylinder face with a seam edge.
  CombinatorialSurface merged = merge_surfaces({punctured_torus(), pants()});
  REQUIRE(merged.boundary().size() == 4);
  CombinatorialSurface composite = glue_through_cylinder(merged, 0, 1);
  REQUIRE(composite.boundary().size() == 2);
  REQUIRE(composite.connected());
  CHECK(composite.euler_characteristic() == -2);
  bool has_seam = false;
  for (const auto& e : composite.edges())
    has_seam = has_seam || e.label.kind == EdgeLabel::Kind::seam;
  REQUIRE(has_seam);

  SurfaceTransform t = cyclic_cover(composite, {3, {1, 2}});
  CHECK(t.surface.euler_characteristic() == -6);
  for (std::size_t c = 0; c < t.boundary_base.size(); ++c)
    CHECK(t.surface.boundary()[c].degree ==
          3 * composite.boundary()[t.boundary_base[c]].degree);

  CombinatorialSurface base = composite.genus() >= 1
                                  ? composite
                                  : ensure_positive_genus(composite).surface;
  SurfaceTransform paired = pairing_cover(base);
  CHECK(paired.surface.euler_characteristic() == 2 * base.euler_characteristic());
  CHECK(paired.surface.boundary().size() == 2 * base.boundary().size());
}

TEST_CASE("malformed solutions are rejected") {
  PositiveChain pc = positive({{"abAB", 1}}, ab());
  // Coverage violated: one rectangle missing.
  CHECK_THROWS_AS(assemble_instances(pc.terms, pc.alphabet, 1, {{0, 2}},
                                     {{{0, 0}, {0, 1}}}),
                  MalformedSolutionError);
}

TEST_CASE("surface json round-trips") {
  for (const CombinatorialSurface& s : {punctured_torus(), annulus(), pants()}) {
    std::string text = surface_to_json(s);
    CombinatorialSurface back = surface_from_json(text);
    CHECK(back == s);
  }
}
