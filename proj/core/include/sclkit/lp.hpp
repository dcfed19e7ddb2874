#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sclkit/rational.hpp"

namespace sclkit {

enum class LpSense { minimize, maximize };
enum class LpRelation { eq, le, ge };
enum class LpStatus { optimal, infeasible, unbounded };

struct LpRow {
  std::vector<std::pair<int, Rational>> entries;  // (column, coefficient)
  LpRelation relation = LpRelation::eq;
  Rational rhs;
};

// Variables are nonnegative.
struct LinearProgram {
  LpSense sense = LpSense::minimize;
  std::vector<Rational> objective;
  std::vector<LpRow> rows;

  int num_columns() const { return static_cast<int>(objective.size()); }
  void add_row(LpRelation rel, std::vector<std::pair<int, Rational>> entries, Rational rhs) {
    rows.push_back({std::move(entries), rel, std::move(rhs)});
  }
};

struct LpColumn {
  Rational cost;
  std::vector<std::pair<int, Rational>> entries;  // (row, coefficient)
};

// Invoked when no present column improves; returns a column with negative
// reduced cost under the current duals (cost counted as zero during phase
// one) or nullopt to certify optimality.  Duals and column entries use the
// input row convention; supported for minimization problems.
using PricingCallback =
    std::function<std::optional<LpColumn>(const std::vector<Rational>& duals, bool phase_one)>;

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  Rational value;
  // Structural variables: the problem's columns first, then generated
  // columns in order of generation.
  std::vector<Rational> primal;
  int num_generated = 0;
  // One multiplier per row; satisfies duals . rhs = value and reduced costs
  // with the sign matching the sense (>= 0 for minimize) at optimality.
  std::vector<Rational> dual;
  std::vector<int> basis;  // indices into primal of basic structural variables
  long pivots = 0;
};

LpSolution solve_lp(const LinearProgram& p, const PricingCallback& pricing = nullptr);

}  // namespace sclkit
