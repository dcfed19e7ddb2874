#include "sclkit/lp.hpp"

#include <algorithm>

#include "sclkit/errors.hpp"
#include "sclkit/linalg.hpp"

namespace sclkit {

namespace {

enum class ColKind { structural, slack, artificial };

struct Col {
  Rational cost;
  std::vector<std::pair<int, Rational>> entries;
  ColKind kind = ColKind::structural;
  int structural = -1;  // index into the reported primal vector
};

struct Tableau {
  int m = 0;
  std::vector<Col> cols;
  std::vector<Rational> rhs;      // normalized, nonnegative
  std::vector<int> row_sign;      // +1 / -1 relative to the input rows
  std::vector<int> basic;         // column index per row
  RationalMatrix binv{0, 0};
  std::vector<Rational> xb;

  Rational effective_cost(const Col& c, bool phase_one) const {
    if (c.kind == ColKind::artificial) return phase_one ? Rational(1) : Rational(0);
    return phase_one ? Rational(0) : c.cost;
  }

  std::vector<Rational> duals(bool phase_one) const {
    std::vector<Rational> y(m);
    for (int i = 0; i < m; ++i) {
      Rational cb = effective_cost(cols[basic[i]], phase_one);
      if (cb.is_zero()) continue;
      for (int j = 0; j < m; ++j) y[j] += cb * binv.at(i, j);
    }
    return y;
  }

  Rational reduced_cost(const Col& c, const std::vector<Rational>& y, bool phase_one) const {
    Rational rc = effective_cost(c, phase_one);
    for (const auto& [r, a] : c.entries) rc -= y[r] * a;
    return rc;
  }

  std::vector<Rational> direction(const Col& c) const {
    std::vector<Rational> d(m);
    for (int i = 0; i < m; ++i)
      for (const auto& [r, a] : c.entries)
        if (!binv.at(i, r).is_zero()) d[i] += binv.at(i, r) * a;
    return d;
  }

  void pivot(int row, int entering, const std::vector<Rational>& d) {
    Rational inv = Rational(1) / d[row];
    for (int j = 0; j < m; ++j) binv.at(row, j) *= inv;
    Rational theta = xb[row] * inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || d[i].is_zero()) continue;
      for (int j = 0; j < m; ++j) binv.at(i, j) -= d[i] * binv.at(row, j);
      xb[i] -= d[i] * theta;
    }
    xb[row] = theta;
    basic[row] = entering;
  }
};

// One simplex phase with Bland's rule; returns false when unbounded.
bool run_phase(Tableau& t, bool phase_one, const PricingCallback& pricing, long& pivots) {
  while (true) {
    std::vector<Rational> y = t.duals(phase_one);
    int entering = -1;
    std::vector<char> in_basis(t.cols.size(), 0);
    for (int b : t.basic) in_basis[b] = 1;
    for (int j = 0; j < static_cast<int>(t.cols.size()); ++j) {
      if (in_basis[j] || t.cols[j].kind == ColKind::artificial) continue;
      if (t.reduced_cost(t.cols[j], y, phase_one).sign() < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0 && pricing) {
      // The callback sees duals and emits columns in the input row
      // convention; translate across the row normalization.
      std::vector<Rational> y_user(t.m);
      for (int r = 0; r < t.m; ++r) y_user[r] = Rational(t.row_sign[r]) * y[r];
      if (auto col = pricing(y_user, phase_one)) {
        Col c;
        c.cost = col->cost;
        for (const auto& [r, a] : col->entries) {
          if (r < 0 || r >= t.m) throw Error("pricing column row out of range");
          c.entries.emplace_back(r, Rational(t.row_sign[r]) * a);
        }
        c.kind = ColKind::structural;
        c.structural = -2;  // assigned by the caller of run_phase
        if (t.reduced_cost(c, y, phase_one).sign() < 0) {
          t.cols.push_back(std::move(c));
          entering = static_cast<int>(t.cols.size()) - 1;
        }
      }
    }
    if (entering < 0) return true;

    std::vector<Rational> d = t.direction(t.cols[entering]);
    int leave = -1;
    if (!phase_one) {
      // A basic artificial sits at zero; drive it out before it could move.
      for (int i = 0; i < t.m; ++i) {
        if (t.cols[t.basic[i]].kind == ColKind::artificial && !d[i].is_zero()) {
          if (!t.xb[i].is_zero()) throw Error("internal: basic artificial moved off zero");
          if (leave < 0 || t.basic[i] < t.basic[leave]) leave = i;
        }
      }
    }
    if (leave < 0) {
      Rational best;
      for (int i = 0; i < t.m; ++i) {
        if (d[i].sign() <= 0) continue;
        Rational ratio = t.xb[i] / d[i];
        if (leave < 0 || ratio < best || (ratio == best && t.basic[i] < t.basic[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return false;  // unbounded ray
    t.pivot(leave, entering, d);
    ++pivots;
  }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& p, const PricingCallback& pricing) {
  const int n = p.num_columns();
  const int m = static_cast<int>(p.rows.size());
  const bool maximize = p.sense == LpSense::maximize;

  if (pricing && maximize)
    throw Error("column generation is supported for minimization problems");

  Tableau t;
  t.m = m;
  t.rhs.resize(m);
  t.row_sign.assign(m, 1);
  t.cols.reserve(n + 2 * m);
  for (int j = 0; j < n; ++j) {
    Col c;
    c.cost = maximize ? -p.objective[j] : p.objective[j];
    c.kind = ColKind::structural;
    c.structural = j;
    t.cols.push_back(std::move(c));
  }
  for (int r = 0; r < m; ++r) {
    const LpRow& row = p.rows[r];
    LpRelation rel = row.relation;
    Rational rhs = row.rhs;
    int sign = 1;
    if (rhs.sign() < 0) {
      sign = -1;
      rhs = -rhs;
      if (rel == LpRelation::le)
        rel = LpRelation::ge;
      else if (rel == LpRelation::ge)
        rel = LpRelation::le;
    }
    t.row_sign[r] = sign;
    t.rhs[r] = rhs;
    for (const auto& [j, a] : row.entries) {
      if (j < 0 || j >= n) throw Error("row entry out of range");
      t.cols[j].entries.emplace_back(r, sign > 0 ? a : -a);
    }
    if (rel == LpRelation::le) {
      Col s;
      s.kind = ColKind::slack;
      s.entries = {{r, Rational(1)}};
      t.cols.push_back(std::move(s));
    } else if (rel == LpRelation::ge) {
      Col s;
      s.kind = ColKind::slack;
      s.entries = {{r, Rational(-1)}};
      t.cols.push_back(std::move(s));
    }
  }
  // Initial basis: slacks of <= rows, artificials elsewhere.
  t.basic.assign(m, -1);
  for (int j = n; j < static_cast<int>(t.cols.size()); ++j) {
    const Col& c = t.cols[j];
    if (c.kind == ColKind::slack && c.entries.front().second == Rational(1))
      t.basic[c.entries.front().first] = j;
  }
  bool need_phase_one = false;
  for (int r = 0; r < m; ++r) {
    if (t.basic[r] >= 0) continue;
    Col a;
    a.kind = ColKind::artificial;
    a.entries = {{r, Rational(1)}};
    t.cols.push_back(std::move(a));
    t.basic[r] = static_cast<int>(t.cols.size()) - 1;
    need_phase_one = true;
  }
  t.binv = RationalMatrix::identity(m);
  t.xb = t.rhs;

  LpSolution sol;
  int next_generated = 0;
  auto assign_generated_indices = [&] {
    for (auto& c : t.cols)
      if (c.structural == -2) c.structural = n + next_generated++;
  };

  if (need_phase_one) {
    if (!run_phase(t, true, pricing, sol.pivots))
      throw Error("internal: phase one cannot be unbounded");
    assign_generated_indices();
    Rational phase1 = 0;
    for (int i = 0; i < m; ++i)
      if (t.cols[t.basic[i]].kind == ColKind::artificial) phase1 += t.xb[i];
    if (phase1.sign() > 0) {
      sol.status = LpStatus::infeasible;
      sol.num_generated = next_generated;
      return sol;
    }
  }

  bool bounded = run_phase(t, false, pricing, sol.pivots);
  assign_generated_indices();
  sol.num_generated = next_generated;
  if (!bounded) {
    sol.status = LpStatus::unbounded;
    return sol;
  }

  sol.status = LpStatus::optimal;
  sol.primal.assign(n + next_generated, Rational(0));
  for (int i = 0; i < m; ++i) {
    const Col& c = t.cols[t.basic[i]];
    if (c.kind == ColKind::structural) {
      sol.primal[c.structural] = t.xb[i];
      sol.basis.push_back(c.structural);
    }
  }
  std::sort(sol.basis.begin(), sol.basis.end());
  Rational value = 0;
  for (int i = 0; i < m; ++i) value += t.effective_cost(t.cols[t.basic[i]], false) * t.xb[i];
  sol.value = maximize ? -value : value;
  std::vector<Rational> y = t.duals(false);
  sol.dual.resize(m);
  for (int r = 0; r < m; ++r) {
    Rational d = Rational(t.row_sign[r]) * y[r];
    sol.dual[r] = maximize ? -d : d;
  }
  return sol;
}

}  // namespace sclkit
