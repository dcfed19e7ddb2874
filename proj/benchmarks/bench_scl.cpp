#include <benchmark/benchmark.h>

#include "sclkit/gluing.hpp"
#include "sclkit/graph_of_groups.hpp"
#include "sclkit/linalg.hpp"
#include "sclkit/oracle.hpp"
#include "sclkit/scl.hpp"

using namespace sclkit;

namespace {

Alphabet ab() { return Alphabet::from_list("a,b"); }

const char* kChain3 =
    "vertex u gens=a,b\nvertex v gens=c,d\nvertex w gens=e,f\n"
    "edge e1 from=u to=v wfrom=abAB wto=cdCD\nedge e2 from=v to=w wfrom=cdCD wto=efEF\n";

void BM_scl_commutator(benchmark::State& state) {
  Alphabet a = ab();
  Chain c = parse_chain_expression("abAB", a);
  for (auto _ : state) {
    SclValue v = scl(c);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_scl_commutator);

void BM_scl_length10(benchmark::State& state) {
  Alphabet a = ab();
  Chain c = parse_chain_expression("aaabABAbAB", a);
  for (auto _ : state) {
    SclValue v = scl(c);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_scl_length10);

void BM_extremal_surface(benchmark::State& state) {
  Alphabet a = ab();
  PositiveChain pc = to_positive_chain(parse_chain_expression("aabbAABB", a));
  for (auto _ : state) {
    SclProblem p = SclProblem::build(pc);
    CombinatorialSurface s = assemble(p, solve_scl(p).extremal);
    benchmark::DoNotOptimize(s.euler_characteristic());
  }
}
BENCHMARK(BM_extremal_surface);

void BM_oracle_degree2(benchmark::State& state) {
  Alphabet a = ab();
  PositiveChain pc = to_positive_chain(parse_chain_expression("abAB", a));
  for (auto _ : state) {
    OracleResult r = oracle_scl(pc, 2);
    benchmark::DoNotOptimize(r.bound);
  }
}
BENCHMARK(BM_oracle_degree2);

void BM_unit_ball_hexagon(benchmark::State& state) {
  GraphOfGroups g = GraphOfGroups::parse(kChain3);
  std::vector<Rational> a1 = {1, -1, 0, 0}, a2 = {0, 0, -1, 1};
  for (auto _ : state) {
    NormBallFan fan = unit_ball_2d(g, a1, a2);
    benchmark::DoNotOptimize(fan.ball_vertices.size());
  }
}
BENCHMARK(BM_unit_ball_hexagon);

void BM_glue_double(benchmark::State& state) {
  GraphOfGroups g = GraphOfGroups::parse(
      "vertex L gens=a,b\nvertex R gens=c,d\nedge e1 from=L to=R wfrom=abAB wto=cdCD\n");
  std::vector<Rational> a = {1, -1};
  for (auto _ : state) {
    GlueOutcome out = build_closed_surface(g, a);
    benchmark::DoNotOptimize(out.kind);
  }
}
BENCHMARK(BM_glue_double);

void BM_hermite_normal_form(benchmark::State& state) {
  IntMatrix m;
  unsigned x = 12345;
  for (int i = 0; i < 12; ++i) {
    IntVector row;
    for (int j = 0; j < 12; ++j) {
      x = x * 1103515245u + 12345u;
      row.push_back(static_cast<long>(x % 17) - 8);
    }
    m.push_back(std::move(row));
  }
  for (auto _ : state) {
    auto hnf = hermite_normal_form(m);
    benchmark::DoNotOptimize(hnf.h);
  }
}
BENCHMARK(BM_hermite_normal_form);

}  // namespace

BENCHMARK_MAIN();
