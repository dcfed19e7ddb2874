#pragma once

#include <optional>
#include <vector>

#include "sclkit/rational.hpp"

namespace sclkit {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;  // row-major, rectangular

class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  static RationalMatrix identity(std::size_t n);
  RationalMatrix multiplied(const RationalMatrix& other) const;
  std::vector<Rational> apply(const std::vector<Rational>& x) const;

  // Rank by exact Gaussian elimination.
  std::size_t rank() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

struct HermiteNormalForm {
  IntMatrix h;  // row Hermite normal form, u * m = h
  IntMatrix u;  // unimodular
};

// Row-style HNF: positive pivots in echelon position, entries above each
// pivot reduced into [0, pivot).
HermiteNormalForm hermite_normal_form(const IntMatrix& m);

// Basis of ker(m) over the integers (the saturated kernel lattice); every
// vector primitive, count = cols - rank.  Deterministic output.
std::vector<IntVector> kernel_lattice_basis(const IntMatrix& m);

// Solve m x = b (mod n); returns std::nullopt when unsolvable.
std::optional<IntVector> solve_mod_n(const IntMatrix& m, const IntVector& b, const Integer& n);

Integer determinant(const IntMatrix& m);  // square input

std::size_t integer_matrix_rank(const IntMatrix& m);

IntVector multiply(const IntMatrix& m, const IntVector& x);

}  // namespace sclkit
