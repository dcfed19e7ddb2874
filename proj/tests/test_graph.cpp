#include "doctest.h"

#include <random>
#include <set>

#include "sclkit/errors.hpp"
#include "sclkit/graph_of_groups.hpp"
#include "sclkit/scl.hpp"

using namespace sclkit;

namespace {

const char* kDouble = R"(# double of F(a,b) along the commutator
vertex L gens=a,b
vertex R gens=c,d
edge e1 from=L to=R wfrom=abAB wto=cdCD
)";

const char* kChain3 = R"(vertex u gens=a,b
vertex v gens=c,d
vertex w gens=e,f
edge e1 from=u to=v wfrom=abAB wto=cdCD
edge e2 from=v to=w wfrom=cdCD wto=efEF
)";

std::vector<Rational> rationals(const std::vector<long>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("parse_graph validates the model") {
  GraphOfGroups g = GraphOfGroups::parse(kDouble);
  CHECK(g.vertices().size() == 2);
  CHECK(g.edges().size() == 1);
  CHECK(g.edges()[0].wfrom.render(g.alphabet_of("L")) == "abAB");

  CHECK_THROWS_AS(GraphOfGroups::parse("vertex L gens=a\nvertex R gens=b\n"
                                       "edge e1 from=L to=R wfrom=aA wto=b\n"),
                  TrivialAttachingWordError);
  CHECK_THROWS_AS(GraphOfGroups::parse("vertex L gens=a\nvertex R gens=b\n"),
                  DisconnectedGraphError);
  CHECK_THROWS_AS(GraphOfGroups::parse("vertex L gens=a\n"
                                       "edge e1 from=L to=Z wfrom=a wto=a\n"),
                  UnknownVertexError);
  CHECK_THROWS_AS(GraphOfGroups::parse("vertex L gens=a\nvertex R gens=a\n"
                                       "edge e1 from=L to=R wfrom=a wto=a\n"),
                  ParseError);
  CHECK_THROWS_AS(GraphOfGroups::parse("nonsense\n"), ParseError);
}

TEST_CASE("presentation emission") {
  CHECK(presentation(GraphOfGroups::parse(kDouble)) == "< a, b, c, d | abAB = cdCD >");
  CHECK(presentation(GraphOfGroups::parse("vertex v gens=a\n"
                                          "edge e from=v to=v wfrom=a wto=a\n")) ==
        "< a, e | e a e^-1 = a >");
  CHECK(presentation(GraphOfGroups::parse("vertex v gens=a,b\n")) == "< a, b |  >");
}

TEST_CASE("h2 lattice of the double") {
  GraphOfGroups g = GraphOfGroups::parse(kDouble);
  auto basis = h2_lattice(g);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == IntVector{1, -1});
  // Rank matches 2E - rank(MV matrix).
  IntMatrix m = mayer_vietoris_matrix(g);
  CHECK(basis.size() == 2 * g.edges().size() - integer_matrix_rank(m));
}

TEST_CASE("h2 lattice of a self-edge with matching commutator ends") {
  GraphOfGroups g = GraphOfGroups::parse("vertex v gens=a,b\n"
                                         "edge e from=v to=v wfrom=abAB wto=abAB\n");
  auto basis = h2_lattice(g);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == IntVector{1, -1});
}

TEST_CASE("h2 lattice trivial cases") {
  CHECK(h2_lattice(GraphOfGroups::parse("vertex v gens=a,b\n")).empty());
  // BS(1,2): full-rank Mayer-Vietoris map.
  CHECK(h2_lattice(GraphOfGroups::parse("vertex v gens=a\n"
                                        "edge e from=v to=v wfrom=a wto=aa\n"))
            .empty());
}

TEST_CASE("per-edge balance on kernel bases") {
  for (const char* text : {kDouble, kChain3}) {
    GraphOfGroups g = GraphOfGroups::parse(text);
    for (const auto& v : h2_lattice(g))
      for (std::size_t e = 0; e < g.edges().size(); ++e) CHECK(v[2 * e] + v[2 * e + 1] == 0);
  }
}

TEST_CASE("boundary chains of the double") {
  GraphOfGroups g = GraphOfGroups::parse(kDouble);
  std::vector<Rational> a = rationals({1, -1});
  Chain left = boundary_chain(g, a, "L");
  REQUIRE(left.terms().size() == 1);
  CHECK(left.terms().begin()->first.render(g.alphabet_of("L")) == "abAB");
  CHECK(left.terms().begin()->second == Rational(1));

  Chain right = boundary_chain(g, a, "R");
  REQUIRE(right.terms().size() == 1);
  // Folded to the inverse word with positive coefficient when normalized.
  Chain normalized = chain_inverse_normalize(right);
  CHECK(normalized.terms().begin()->first.render(g.alphabet_of("R")) == "cDCd");

  CHECK(boundary_chain(g, rationals({0, 0}), "L").empty());
  CHECK_THROWS_AS(boundary_chain(g, rationals({1, 1}), "L"), NotInKernelError);
}

TEST_CASE("gt_norm of the double") {
  GraphOfGroups g = GraphOfGroups::parse(kDouble);
  CHECK(gt_norm(g, rationals({1, -1})) == Rational(4));
  CHECK(gt_norm(g, rationals({0, 0})) == Rational(0));
  CHECK(gt_norm(g, rationals({2, -2})) == Rational(8));
  CHECK(gt_norm(g, rationals({-1, 1})) == Rational(4));
  CHECK(gt_norm(g, {Rational(1, 2), Rational(-1, 2)}) == Rational(2));
}

TEST_CASE("gt_norm homogeneity and subadditivity on the three-vertex chain") {
  GraphOfGroups g = GraphOfGroups::parse(kChain3);
  std::mt19937 rng(67);
  std::uniform_int_distribution<long> d(-2, 2);
  for (int i = 0; i < 6; ++i) {
    std::vector<Rational> x, y;
    for (int j = 0; j < 4; ++j) {
      long s = d(rng), t = d(rng);
      x.push_back(Rational(s));
      y.push_back(Rational(t));
    }
    // Project to the kernel: coordinates (p, -p, q, -q).
    x = {x[0], -x[0], x[2], -x[2]};
    y = {y[0], -y[0], y[2], -y[2]};
    Rational nx = gt_norm(g, x), ny = gt_norm(g, y);
    std::vector<Rational> sum(4);
    for (int j = 0; j < 4; ++j) sum[j] = x[j] + y[j];
    CHECK(gt_norm(g, sum) <= nx + ny);
    std::vector<Rational> minus(4);
    for (int j = 0; j < 4; ++j) minus[j] = -x[j];
    CHECK(gt_norm(g, minus) == nx);
    std::vector<Rational> tripled(4);
    for (int j = 0; j < 4; ++j) tripled[j] = x[j] * Rational(3);
    CHECK(gt_norm(g, tripled) == nx * Rational(3));
  }
}

TEST_CASE("unit ball of the three-vertex chain graph is the expected hexagon") {
  GraphOfGroups g = GraphOfGroups::parse(kChain3);
  // Classes chosen so that the norm is 2(|x| + |x+y| + |y|).
  std::vector<Rational> a1 = rationals({1, -1, 0, 0});
  std::vector<Rational> a2 = rationals({0, 0, -1, 1});
  NormBallFan fan = unit_ball_2d(g, a1, a2);
  CHECK_FALSE(fan.unbounded);
  REQUIRE(fan.ball_vertices.size() == 6);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& [x, y] : fan.ball_vertices) got.insert({x.str(), y.str()});
  std::set<std::pair<std::string, std::string>> want = {
      {"1/4", "0"}, {"0", "1/4"}, {"-1/4", "0"}, {"0", "-1/4"}, {"1/4", "-1/4"}, {"-1/4", "1/4"}};
  CHECK(got == want);
  // Certified cones: exact additivity at random interior points.
  std::mt19937 rng(71);
  std::uniform_int_distribution<long> d(1, 9);
  for (const auto& cone : fan.cones) {
    const auto& u = fan.rays[cone.ray_a];
    const auto& v = fan.rays[cone.ray_b];
    for (int k = 0; k < 10; ++k) {
      Rational s(d(rng)), t(d(rng));
      Rational px = s * Rational(u.x) + t * Rational(v.x);
      Rational py = s * Rational(u.y) + t * Rational(v.y);
      // Evaluate the norm at the interior point and compare with the cone
      // functional.
      std::vector<Rational> cls(4);
      for (int j = 0; j < 4; ++j) cls[j] = px * a1[j] + py * a2[j];
      CHECK(gt_norm(g, cls) == cone.fx * px + cone.fy * py);
    }
  }
}

TEST_CASE("unit ball rejects dependent classes") {
  GraphOfGroups g = GraphOfGroups::parse(kChain3);
  std::vector<Rational> a1 = rationals({1, -1, 0, 0});
  std::vector<Rational> a2 = rationals({2, -2, 0, 0});
  CHECK_THROWS_AS(unit_ball_2d(g, a1, a2), IndependenceViolationError);
}

TEST_CASE("zero-norm directions are reported as lineality with an unbounded ball") {
  // e1 carries the norm; the parallel pair e2/e3 spans a norm-zero class.
  GraphOfGroups g = GraphOfGroups::parse("vertex L gens=a,b\nvertex R gens=c,d\n"
                                         "edge e1 from=L to=R wfrom=abAB wto=cdCD\n"
                                         "edge e2 from=L to=R wfrom=b wto=d\n"
                                         "edge e3 from=L to=R wfrom=b wto=d\n");
  std::vector<Rational> a1 = rationals({1, -1, 0, 0, 0, 0});
  std::vector<Rational> a2 = rationals({0, 0, 1, -1, -1, 1});
  REQUIRE(gt_norm(g, a2) == Rational(0));
  NormBallFan fan = unit_ball_2d(g, a1, a2);
  CHECK(fan.unbounded);
  int lineality = 0;
  for (const auto& r : fan.rays)
    if (r.lineality) {
      ++lineality;
      CHECK(r.x == 0);
    }
  CHECK(lineality == 2);
}

TEST_CASE("self-edge with independent generator ends has trivial kernel") {
  GraphOfGroups g = GraphOfGroups::parse("vertex v gens=a,b\n"
                                         "edge e from=v to=v wfrom=a wto=b\n");
  CHECK(h2_lattice(g).empty());
  CHECK_THROWS_AS(boundary_chain(g, rationals({1, -1}), "v"), NotInKernelError);
}

TEST_CASE("fan json round-trip") {
  GraphOfGroups g = GraphOfGroups::parse(kChain3);
  NormBallFan fan = unit_ball_2d(g, rationals({1, -1, 0, 0}), rationals({0, 0, -1, 1}));
  NormBallFan back = fan_from_json(fan_to_json(fan));
  REQUIRE(back.rays.size() == fan.rays.size());
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    CHECK(back.rays[i].x == fan.rays[i].x);
    CHECK(back.rays[i].y == fan.rays[i].y);
    CHECK(back.rays[i].norm == fan.rays[i].norm);
  }
  REQUIRE(back.ball_vertices.size() == fan.ball_vertices.size());
  CHECK(back.unbounded == fan.unbounded);
}
