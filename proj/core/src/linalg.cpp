#include "sclkit/linalg.hpp"

#include <algorithm>
#include <cstdlib>

#include "sclkit/errors.hpp"

namespace sclkit {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::multiplied(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw Error("matrix dimension mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, j) += a * other.at(k, j);
    }
  return out;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw Error("matrix-vector dimension mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero()) out[i] += at(i, j) * x[j];
  return out;
}

std::size_t RationalMatrix::rank() const {
  RationalMatrix m = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t pivot = r;
    while (pivot < rows_ && m.at(pivot, c).is_zero()) ++pivot;
    if (pivot == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(r, j), m.at(pivot, j));
    Rational inv = Rational(1) / m.at(r, c);
    for (std::size_t j = c; j < cols_; ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c);
      for (std::size_t j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    ++r;
  }
  return r;
}

namespace {

std::size_t matrix_cols(const IntMatrix& m) { return m.empty() ? 0 : m.front().size(); }

void check_rectangular(const IntMatrix& m) {
  for (const auto& row : m)
    if (row.size() != matrix_cols(m)) throw Error("ragged integer matrix");
}

// Floor division, used so reduced entries land in [0, pivot).
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void row_axpy(IntVector& target, const IntVector& source, const Integer& factor) {
  for (std::size_t j = 0; j < target.size(); ++j) target[j] -= factor * source[j];
}

}  // namespace

HermiteNormalForm hermite_normal_form(const IntMatrix& m) {
  check_rectangular(m);
  const std::size_t rows = m.size();
  const std::size_t cols = matrix_cols(m);
  HermiteNormalForm out;
  out.h = m;
  out.u.assign(rows, IntVector(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) out.u[i][i] = 1;

  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclidean elimination in column c on rows >= r.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (out.h[i][c] == 0) continue;
        if (best == rows || cmp(abs(out.h[i][c]), abs(out.h[best][c])) < 0) best = i;
      }
      if (best == rows) break;
      std::swap(out.h[r], out.h[best]);
      std::swap(out.u[r], out.u[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (out.h[i][c] == 0) continue;
        Integer q = floor_div(out.h[i][c], out.h[r][c]);
        if (q != 0) {
          row_axpy(out.h[i], out.h[r], q);
          row_axpy(out.u[i], out.u[r], q);
        }
        if (out.h[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < rows && out.h[r][c] != 0) {
      if (out.h[r][c] < 0) {
        for (auto& x : out.h[r]) x = -x;
        for (auto& x : out.u[r]) x = -x;
      }
      for (std::size_t i = 0; i < r; ++i) {
        Integer q = floor_div(out.h[i][c], out.h[r][c]);
        if (q != 0) {
          row_axpy(out.h[i], out.h[r], q);
          row_axpy(out.u[i], out.u[r], q);
        }
      }
      ++r;
    }
  }
  return out;
}

std::vector<IntVector> kernel_lattice_basis(const IntMatrix& m) {
  check_rectangular(m);
  const std::size_t rows = m.size();
  const std::size_t cols = matrix_cols(m);
  // Row-reduce the transpose; the U-rows mapping to zero H-rows form a basis
  // of the kernel lattice, and rows of a unimodular matrix are primitive.
  IntMatrix t(cols, IntVector(rows, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  HermiteNormalForm hnf = hermite_normal_form(t);
  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < cols; ++i) {
    bool zero = std::all_of(hnf.h[i].begin(), hnf.h[i].end(),
                            [](const Integer& x) { return x == 0; });
    if (zero) basis.push_back(hnf.u[i]);
  }
  if (basis.empty()) return basis;
  // Canonical form: HNF of the basis matrix, rows divided by their content.
  HermiteNormalForm canon = hermite_normal_form(basis);
  std::vector<IntVector> out;
  for (auto& row : canon.h) {
    Integer g = 0;
    for (const auto& x : row) g = gcd(g, x);
    if (g == 0) continue;
    for (auto& x : row) x /= g;
    // First nonzero entry positive.
    for (const auto& x : row) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : row) y = -y;
      break;
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<IntVector> solve_mod_n(const IntMatrix& m, const IntVector& b, const Integer& n) {
  check_rectangular(m);
  if (n <= 0) throw Error("modulus must be positive");
  const std::size_t rows = m.size();
  const std::size_t cols = matrix_cols(m);
  if (b.size() != rows) throw Error("dimension mismatch in solve_mod_n");
  // m x + n y = b over the integers: column-echelon solve via the HNF of the
  // transposed augmented matrix [m | nI].
  IntMatrix t(cols + rows, IntVector(rows, 0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    t[cols + i][i] = n;
  }
  HermiteNormalForm hnf = hermite_normal_form(t);
  // Solve w * H = b for integer w, using the echelon structure of H.
  const std::size_t hrows = hnf.h.size();
  std::vector<std::size_t> pivot_col(hrows, rows);
  for (std::size_t i = 0; i < hrows; ++i)
    for (std::size_t j = 0; j < rows; ++j)
      if (hnf.h[i][j] != 0) {
        pivot_col[i] = j;
        break;
      }
  IntVector w(hrows, 0);
  IntVector residual = b;
  for (std::size_t i = 0; i < hrows; ++i) {
    if (pivot_col[i] == rows) continue;
    std::size_t c = pivot_col[i];
    Integer num = residual[c];
    if (num % hnf.h[i][c] != 0) return std::nullopt;
    Integer q = num / hnf.h[i][c];
    if (q != 0) {
      w[i] = q;
      for (std::size_t j = 0; j < rows; ++j) residual[j] -= q * hnf.h[i][j];
    }
  }
  for (std::size_t j = 0; j < rows; ++j)
    if (residual[j] != 0) return std::nullopt;
  // x = first `cols` coordinates of w * U, reduced mod n.
  IntVector x(cols, 0);
  for (std::size_t i = 0; i < hrows; ++i) {
    if (w[i] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) x[j] += w[i] * hnf.u[i][j];
  }
  for (auto& v : x) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    v = r;
  }
  return x;
}

Integer determinant(const IntMatrix& m) {
  check_rectangular(m);
  const std::size_t n = m.size();
  if (n != matrix_cols(m)) throw Error("determinant of non-square matrix");
  // Fraction-free Gaussian elimination (Bareiss).
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return n == 0 ? Integer(1) : Integer(sign) * a[n - 1][n - 1];
}

std::size_t integer_matrix_rank(const IntMatrix& m) {
  check_rectangular(m);
  RationalMatrix r(m.size(), matrix_cols(m));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) r.at(i, j) = Rational(m[i][j]);
  return r.rank();
}

IntVector multiply(const IntMatrix& m, const IntVector& x) {
  check_rectangular(m);
  if (x.size() != matrix_cols(m)) throw Error("matrix-vector dimension mismatch");
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
  return out;
}

}  // namespace sclkit
