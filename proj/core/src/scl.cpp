#include "sclkit/scl.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "sclkit/errors.hpp"

namespace sclkit {

PositiveChain to_positive_chain(const Chain& c, Integer* denominator_out) {
  Chain pos = chain_inverse_normalize(c);
  std::vector<Rational> coeffs;
  for (const auto& [w, t] : pos.terms()) coeffs.push_back(t);
  Integer d = denominator_lcm(coeffs);
  PositiveChain out{pos.alphabet(), {}};
  for (const auto& [w, t] : pos.terms()) {
    Rational scaled = t * Rational(d);
    if (!scaled.is_integer() || scaled.sign() <= 0)
      throw Error("internal: denominator clearing failed");
    out.terms.emplace_back(w, scaled.num());
  }
  if (denominator_out) *denominator_out = d;
  return out;
}

int SclProblem::next_position(int p) const {
  const Position& pos = positions_[p];
  int len = static_cast<int>(chain_.terms[pos.word].first.size());
  return word_offset_[pos.word] + (pos.index + 1) % len;
}

int SclProblem::after_position(int v) const {
  const Rectangle& r = rectangles_[v / 2];
  return (v % 2 == 0) ? r.a : r.b;
}

int SclProblem::before_position(int v) const {
  const Rectangle& r = rectangles_[v / 2];
  return (v % 2 == 0) ? r.b : r.a;
}

SclProblem SclProblem::build(PositiveChain chain) {
  std::sort(chain.terms.begin(), chain.terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [w, c] : chain.terms)
    if (c <= 0) throw Error("internal: nonpositive chain coefficient");

  // Null-homology: signed exponent sums weighted by coefficients vanish.
  std::vector<Integer> sums(chain.alphabet.rank(), 0);
  for (const auto& [w, c] : chain.terms)
    for (Letter l : w.letters()) sums[generator_of(l)] += is_positive(l) ? c : -c;
  for (const auto& s : sums)
    if (s != 0) throw NotNullHomologousError();

  SclProblem p(std::move(chain));
  for (int w = 0; w < static_cast<int>(p.chain_.terms.size()); ++w) {
    p.word_offset_.push_back(static_cast<int>(p.letters_.size()));
    const CyclicWord& word = p.chain_.terms[w].first;
    for (int i = 0; i < static_cast<int>(word.size()); ++i) {
      p.positions_.push_back({w, i});
      p.letters_.push_back(word.letter(i));
    }
  }
  const int total = p.num_positions();
  for (int a = 0; a < total; ++a)
    for (int b = a + 1; b < total; ++b)
      if (p.letters_[a] == inverse_letter(p.letters_[b])) p.rectangles_.push_back({a, b});

  // Corner arcs u -> v whenever before(v) = next(after(u)).
  std::vector<std::vector<int>> nodes_before(total);
  for (int v = 0; v < p.num_nodes(); ++v) nodes_before[p.before_position(v)].push_back(v);
  for (int u = 0; u < p.num_nodes(); ++u) {
    int target = p.next_position(p.after_position(u));
    for (int v : nodes_before[target]) {
      if (u == v) throw Error("internal: monogon arc on cyclically reduced input");
      p.arcs_.push_back({u, v});
    }
  }
  return p;
}

namespace {

// Exact search for a directed cycle whose node-weight sum exceeds the given
// threshold (always negative or zero here).  A closed walk of at most n arcs
// beats the threshold exactly when some simple cycle does: splitting a walk
// at a repeated node splits its weight, and if both parts were below a
// nonpositive threshold their sum would be too.  So a level-indexed
// longest-walk table decides the question, and the same splitting argument
// prunes a found walk down to a simple cycle still above the threshold.
class CycleSearch {
 public:
  CycleSearch(int num_nodes, const std::vector<SclProblem::Arc>& arcs)
      : n_(num_nodes), arcs_(arcs) {}

  std::optional<std::vector<int>> find_above(const std::vector<Rational>& beta,
                                             const Rational& threshold) const {
    for (int start = 0; start < n_; ++start) {
      // dist[k][x]: best weight of a walk start -> x with exactly k arcs,
      // counting the weight of every node entered.
      std::vector<std::vector<std::optional<Rational>>> dist(
          n_ + 1, std::vector<std::optional<Rational>>(n_));
      std::vector<std::vector<int>> parent(n_ + 1, std::vector<int>(n_, -1));
      dist[0][start] = Rational(0);
      for (int k = 1; k <= n_; ++k) {
        for (int a = 0; a < static_cast<int>(arcs_.size()); ++a) {
          const auto& arc = arcs_[a];
          if (!dist[k - 1][arc.from]) continue;
          Rational cand = *dist[k - 1][arc.from] + beta[arc.to];
          if (!dist[k][arc.to] || cand > *dist[k][arc.to]) {
            dist[k][arc.to] = cand;
            parent[k][arc.to] = a;
          }
        }
        // A walk closing back at the start is a candidate cycle.
        if (dist[k][start] && *dist[k][start] > threshold) {
          std::vector<int> walk(k);
          int node = start;
          for (int level = k; level > 0; --level) {
            walk[level - 1] = node;
            node = arcs_[parent[level][node]].from;
          }
          return simplify(std::move(walk), beta, threshold);
        }
      }
    }
    return std::nullopt;
  }

 private:
  // Cut repeated nodes out of a closed walk, keeping a part above the
  // threshold, until the cycle is simple.
  std::vector<int> simplify(std::vector<int> walk, const std::vector<Rational>& beta,
                            const Rational& threshold) const {
    auto weight = [&](const std::vector<int>& w) {
      Rational total = 0;
      for (int v : w) total += beta[v];
      return total;
    };
    while (true) {
      std::vector<int> first_at(n_, -1);
      int i = -1, j = -1;
      for (int pos = 0; pos < static_cast<int>(walk.size()) && j < 0; ++pos) {
        if (first_at[walk[pos]] >= 0) {
          i = first_at[walk[pos]];
          j = pos;
        } else {
          first_at[walk[pos]] = pos;
        }
      }
      if (j < 0) break;  // simple
      std::vector<int> inner(walk.begin() + i, walk.begin() + j);
      std::vector<int> outer(walk.begin(), walk.begin() + i);
      outer.insert(outer.end(), walk.begin() + j, walk.end());
      walk = weight(inner) > weight(outer) ? std::move(inner) : std::move(outer);
    }
    if (!(weight(walk) > threshold))
      throw Error("internal: cycle simplification fell below the threshold");
    return walk;
  }

  int n_;
  const std::vector<SclProblem::Arc>& arcs_;
};

std::vector<int> canonical_cycle(std::vector<int> cycle) {
  auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it, cycle.end());
  return cycle;
}

}  // namespace

SclResult solve_scl(const SclProblem& p) {
  const int P = p.num_positions();
  const int N = p.num_nodes();
  const int R = p.num_rectangles();

  LinearProgram lp;
  lp.sense = LpSense::minimize;
  lp.objective.assign(R, Rational(1, 2));
  lp.rows.resize(P + N);
  for (int q = 0; q < P; ++q) {
    lp.rows[q].relation = LpRelation::eq;
    lp.rows[q].rhs = Rational(p.coefficient_at(q));
  }
  for (int v = 0; v < N; ++v) {
    lp.rows[P + v].relation = LpRelation::eq;
    lp.rows[P + v].rhs = 0;
  }
  for (int r = 0; r < R; ++r) {
    const auto& rect = p.rectangles()[r];
    lp.rows[rect.a].entries.emplace_back(r, Rational(1));
    lp.rows[rect.b].entries.emplace_back(r, Rational(1));
    lp.rows[P + 2 * r].entries.emplace_back(r, Rational(-1));
    lp.rows[P + 2 * r + 1].entries.emplace_back(r, Rational(-1));
  }

  CycleSearch search(N, p.arcs());
  std::vector<std::vector<int>> cycles;
  std::set<std::vector<int>> seen;
  auto pricing = [&](const std::vector<Rational>& duals,
                     bool phase_one) -> std::optional<LpColumn> {
    std::vector<Rational> beta(N);
    for (int v = 0; v < N; ++v) beta[v] = duals[P + v];
    // A polygon column prices in when the node duals along its cycle beat
    // the cost share: sum beta > 0 in phase one, > -1/2 in phase two.
    Rational threshold = phase_one ? Rational(0) : Rational(-1, 2);
    auto cycle = search.find_above(beta, threshold);
    if (!cycle) return std::nullopt;
    std::vector<int> canon = canonical_cycle(*cycle);
    if (!seen.insert(canon).second)
      throw Error("internal: pricing produced a duplicate polygon column");
    cycles.push_back(canon);
    LpColumn col;
    col.cost = Rational(-1, 2);
    for (int v : canon) col.entries.emplace_back(P + v, Rational(1));
    std::sort(col.entries.begin(), col.entries.end());
    return col;
  };

  LpSolution sol = solve_lp(lp, pricing);
  if (sol.status != LpStatus::optimal)
    throw Error("internal: scl linear program must be feasible and bounded");

  SclResult result;
  result.value = sol.value;
  result.lp_pivots = sol.pivots;
  result.columns_generated = sol.num_generated;
  result.rect_weights.assign(sol.primal.begin(), sol.primal.begin() + R);
  for (int g = 0; g < sol.num_generated; ++g) {
    const Rational& w = sol.primal[R + g];
    if (!w.is_zero()) result.cycles.emplace_back(cycles[g], w);
  }
  result.duals = sol.dual;

  // Machine-checkable optimality certificate: the dual objective matches the
  // primal value, every rectangle column prices nonnegative, and no polygon
  // cycle prices in against the final duals.
  Rational dual_value = 0;
  for (int q = 0; q < P; ++q) dual_value += Rational(p.coefficient_at(q)) * sol.dual[q];
  bool ok = dual_value == result.value;
  for (int r = 0; r < R && ok; ++r) {
    const auto& rect = p.rectangles()[r];
    Rational rc = Rational(1, 2) - sol.dual[rect.a] - sol.dual[rect.b] +
                  sol.dual[P + 2 * r] + sol.dual[P + 2 * r + 1];
    ok = rc.sign() >= 0;
  }
  if (ok) {
    std::vector<Rational> beta(N);
    for (int v = 0; v < N; ++v) beta[v] = sol.dual[P + v];
    ok = !search.find_above(beta, Rational(-1, 2)).has_value();
  }
  result.dual_certified = ok;

  // Integral extremal solution: scale the basic optimum by the lcm of its
  // denominators; the scale is the covering degree n.
  std::vector<Rational> all = result.rect_weights;
  for (const auto& [c, w] : result.cycles) all.push_back(w);
  Integer n = denominator_lcm(all);
  result.extremal.degree = n;
  for (const auto& w : result.rect_weights) result.extremal.rect_weights.push_back((w * Rational(n)).num());
  for (const auto& [c, w] : result.cycles)
    result.extremal.cycles.emplace_back(c, (w * Rational(n)).num());

  Rational structural = 0;
  for (const auto& w : result.rect_weights) structural += w;
  for (const auto& [c, w] : result.cycles) structural -= w;
  if (structural / Rational(2) != result.value)
    throw Error("internal: objective accounting mismatch in scl solve");
  if (result.value.sign() < 0) throw Error("internal: negative scl value");
  return result;
}

namespace {

SclValue scl_of_positive(const PositiveChain& pc, const Integer& denominator) {
  if (pc.terms.empty()) return {false, Rational(0)};
  SclProblem problem = SclProblem::build(pc);
  SclResult res = solve_scl(problem);
  return {false, res.value / Rational(denominator)};
}

}  // namespace

SclValue scl(const Chain& c) {
  if (!is_null_homologous(c)) return {true, Rational(0)};
  Integer d;
  PositiveChain pc = to_positive_chain(c, &d);
  return scl_of_positive(pc, d);
}

SclValue scl(const std::string& chain_expression, const Alphabet& alphabet) {
  return scl(parse_chain_expression(chain_expression, alphabet));
}

SclValue fill_norm(const Chain& c) {
  SclValue v = scl(c);
  if (v.infinite) return v;
  return {false, v.value * Rational(4)};
}

SclValue scl_on_subspace(const std::vector<Chain>& chains, const std::vector<Rational>& coeffs) {
  if (chains.size() != coeffs.size()) throw Error("subspace dimension mismatch");
  if (chains.empty()) return {false, Rational(0)};
  Chain sum(chains.front().alphabet());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    if (!(chains[i].alphabet() == sum.alphabet()))
      throw Error("subspace chains must share one alphabet");
    sum = sum + chains[i].scaled(coeffs[i]);
  }
  return scl(sum);
}

}  // namespace sclkit
