#pragma once

#include <utility>
#include <vector>

#include "sclkit/lp.hpp"
#include "sclkit/words.hpp"

namespace sclkit {

// Integral chain with positive coefficients as the engine consumes it.  Keys
// are cyclically reduced cyclic words, not necessarily primitive; a word and
// its inverse may both appear (the quotient by inversion happens upstream).
struct PositiveChain {
  Alphabet alphabet;
  std::vector<std::pair<CyclicWord, Integer>> terms;  // sorted by word, coefficients > 0
};

PositiveChain to_positive_chain(const Chain& c, Integer* denominator_out = nullptr);

struct Position {
  int word = 0;
  int index = 0;
};

// Rectangle/turn-graph normal form for the admissible surfaces of a chain.
// Rectangles pair inverse letters; each rectangle has two vertical sides
// (turn nodes); corner arcs connect a side "after p" to the side "before
// next(p)"; polygon pieces are directed cycles of arcs.
class SclProblem {
 public:
  static SclProblem build(PositiveChain chain);  // throws NotNullHomologousError

  struct Rectangle {
    int a = 0, b = 0;  // position ids with inverse letters, a < b
  };
  struct Arc {
    int from = 0, to = 0;  // turn node ids
  };

  const PositiveChain& chain() const { return chain_; }
  int num_positions() const { return static_cast<int>(letters_.size()); }
  int num_rectangles() const { return static_cast<int>(rectangles_.size()); }
  int num_nodes() const { return 2 * num_rectangles(); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  Position position(int p) const { return positions_[p]; }
  Letter letter(int p) const { return letters_[p]; }
  int next_position(int p) const;
  Integer coefficient_at(int p) const { return chain_.terms[positions_[p].word].second; }

  const std::vector<Rectangle>& rectangles() const { return rectangles_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  // Turn node 2r + s: s = 0 reads (after a, before b); s = 1 (after b, before a).
  int rectangle_of_node(int v) const { return v / 2; }
  int after_position(int v) const;
  int before_position(int v) const;

 private:
  explicit SclProblem(PositiveChain chain) : chain_(std::move(chain)) {}

  PositiveChain chain_;
  std::vector<Position> positions_;
  std::vector<Letter> letters_;
  std::vector<int> word_offset_;  // position id of letter 0 of each word
  std::vector<Rectangle> rectangles_;
  std::vector<Arc> arcs_;
};

struct SclExtremal {
  Integer degree;                                          // n
  std::vector<Integer> rect_weights;                       // per rectangle
  std::vector<std::pair<std::vector<int>, Integer>> cycles;  // (node cycle, weight)
};

struct SclResult {
  Rational value;
  std::vector<Rational> rect_weights;
  std::vector<std::pair<std::vector<int>, Rational>> cycles;
  std::vector<Rational> duals;  // positions first, then turn nodes
  bool dual_certified = false;
  SclExtremal extremal;
  long lp_pivots = 0;
  int columns_generated = 0;
};

SclResult solve_scl(const SclProblem& p);

struct SclValue {
  bool infinite = false;
  Rational value;
};

SclValue scl(const Chain& c);
SclValue scl(const std::string& chain_expression, const Alphabet& alphabet);
SclValue fill_norm(const Chain& c);
SclValue scl_on_subspace(const std::vector<Chain>& chains, const std::vector<Rational>& coeffs);

}  // namespace sclkit
