#include "nbts/linalg.hpp"

#include <numeric>
#include <utility>

#include "nbts/error.hpp"

namespace nbts::linalg {

Matrix Matrix::from_rows(const std::vector<RationalVector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RationalVector Matrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
}

Echelon row_reduce(Matrix m) {
  std::vector<std::size_t> source(m.rows());
  std::iota(source.begin(), source.end(), 0);
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t r = lead;
    while (r < m.rows() && sgn(m(r, c)) == 0) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(lead, r);
    std::swap(source[lead], source[r]);
    const Rational inv = 1 / m(lead, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead, k) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == lead || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(lead, k);
    }
    pivots.push_back(c);
    ++lead;
  }
  Matrix reduced(lead, m.cols());
  for (std::size_t r = 0; r < lead; ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) reduced(r, c) = m(r, c);
  source.resize(lead);
  return {std::move(reduced), std::move(pivots), std::move(source)};
}

std::vector<std::size_t> independent_rows(const Matrix& m) {
  std::vector<RationalVector> basis;
  std::vector<std::size_t> basis_pivot;
  std::vector<std::size_t> chosen;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RationalVector v = m.row(r);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::size_t pc = basis_pivot[b];
      if (sgn(v[pc]) == 0) continue;
      const Rational f = v[pc];
      for (std::size_t c = 0; c < v.size(); ++c) v[c] -= f * basis[b][c];
    }
    std::size_t pc = 0;
    while (pc < v.size() && sgn(v[pc]) == 0) ++pc;
    if (pc == v.size()) continue;
    const Rational inv = 1 / v[pc];
    for (auto& e : v) e *= inv;
    // keep the basis fully reduced so later pivots stay independent
    for (auto& row : basis) {
      if (sgn(row[pc]) == 0) continue;
      const Rational f = row[pc];
      for (std::size_t c = 0; c < v.size(); ++c) row[c] -= f * v[c];
    }
    basis.push_back(std::move(v));
    basis_pivot.push_back(pc);
    chosen.push_back(r);
  }
  return chosen;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

std::optional<RationalVector> solve_unique(const Matrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "rhs length");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const Echelon e = row_reduce(std::move(aug));
  if (e.pivots.size() != a.cols()) return std::nullopt;
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  RationalVector x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = a(r, c);
    aug(r, n + r) = 1;
  }
  const Echelon e = row_reduce(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

RationalVector project_onto_affine(const Matrix& a, const RationalVector& b,
                                   const RationalVector& point) {
  if (point.size() != a.cols() || b.size() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "projection operand sizes");
  }
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  const Echelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) {
    throw Error(ErrorKind::Empty, "inconsistent affine system");
  }
  const std::size_t k = e.pivots.size();
  if (k == 0) return point;
  // residual = R p - c ; solve (R R^T) lambda = residual ; p' = p - R^T lambda
  RationalVector residual(k);
  Matrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    Rational s = -e.reduced(i, a.cols());
    for (std::size_t c = 0; c < a.cols(); ++c) s += e.reduced(i, c) * point[c];
    residual[i] = s;
    for (std::size_t j = 0; j < k; ++j) {
      Rational g = 0;
      for (std::size_t c = 0; c < a.cols(); ++c) g += e.reduced(i, c) * e.reduced(j, c);
      gram(i, j) = g;
    }
  }
  const auto lambda = solve_unique(gram, residual);
  if (!lambda) throw Error(ErrorKind::InternalContradiction, "singular Gram matrix");
  RationalVector out = point;
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn((*lambda)[i]) == 0) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] -= e.reduced(i, c) * (*lambda)[i];
  }
  return out;
}

Rational dot(const RationalVector& u, const RationalVector& v) {
  if (u.size() != v.size()) throw Error(ErrorKind::DimensionMismatch, "dot product lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

}  // namespace nbts::linalg
