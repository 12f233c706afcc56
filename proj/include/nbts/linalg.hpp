#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nbts/rational.hpp"

namespace nbts::linalg {

// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix from_rows(const std::vector<RationalVector>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  RationalVector row(std::size_t r) const;
  void swap_rows(std::size_t a, std::size_t b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  RationalVector data_;
};

struct Echelon {
  Matrix reduced;                    // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column per row of `reduced`
  std::vector<std::size_t> source;   // original row index that supplied each pivot
};

/// Gauss-Jordan elimination with exact arithmetic.
Echelon row_reduce(Matrix m);

/// Indices of a maximal independent subset of rows chosen greedily in order.
std::vector<std::size_t> independent_rows(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Unique solution of A x = b when A has full column rank and the system is
/// consistent; nullopt otherwise.
std::optional<RationalVector> solve_unique(const Matrix& a, const RationalVector& b);

/// Inverse of a square nonsingular matrix.
std::optional<Matrix> inverse(const Matrix& a);

/// Orthogonal projection of `point` onto {p : A p = b}. Throws Empty if the
/// system is inconsistent.
RationalVector project_onto_affine(const Matrix& a, const RationalVector& b,
                                   const RationalVector& point);

Rational dot(const RationalVector& u, const RationalVector& v);

}  // namespace nbts::linalg
