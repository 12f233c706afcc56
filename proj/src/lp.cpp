#include "nbts/lp.hpp"

#include <cstdint>

#include "nbts/error.hpp"

namespace nbts::lp {

namespace {

// Dense simplex tableau. Column layout: structural columns, then one
// artificial column per row, then the right-hand side. The objective row
// holds reduced costs and, in its last slot, minus the current objective.
class Tableau {
 public:
  Tableau(const linalg::Matrix& a, const RationalVector& b)
      : rows_(a.rows()), structural_(a.cols()), width_(a.cols() + a.rows() + 1) {
    t_.assign(rows_, RationalVector(width_));
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      const bool flip = sgn(b[i]) < 0;
      for (std::size_t j = 0; j < structural_; ++j) t_[i][j] = flip ? Rational(-a(i, j)) : a(i, j);
      t_[i][structural_ + i] = 1;
      t_[i][width_ - 1] = flip ? Rational(-b[i]) : b[i];
      basis_[i] = structural_ + i;
    }
  }

  // Phase 1: maximize -(sum of artificials). Returns false if infeasible.
  bool phase_one() {
    obj_.assign(width_, 0);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      for (std::size_t j = 0; j < structural_; ++j) obj_[j] += t_[i][j];
      obj_[width_ - 1] += t_[i][width_ - 1];
    }
    iterate(width_ - 1);  // bounded below by zero, never unbounded
    if (sgn(obj_[width_ - 1]) != 0) return false;
    drive_out_artificials();
    return true;
  }

  // Phase 2 over structural columns only. Returns false if unbounded.
  bool phase_two(const RationalVector& c) {
    obj_.assign(width_, 0);
    for (std::size_t j = 0; j < structural_; ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const std::size_t bj = basis_[i];
      const Rational cb = bj < structural_ ? c[bj] : Rational(0);
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < structural_; ++j) obj_[j] -= cb * t_[i][j];
      obj_[width_ - 1] -= cb * t_[i][width_ - 1];
    }
    return iterate(structural_);
  }

  RationalVector solution() const {
    RationalVector x(structural_);
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (basis_[i] < structural_) x[basis_[i]] = t_[i][width_ - 1];
    return x;
  }

  Rational objective() const { return -obj_[width_ - 1]; }

 private:
  // Bland's rule over columns [0, limit). Returns false on unboundedness.
  bool iterate(std::size_t limit) {
    while (true) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (sgn(obj_[j]) > 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = t_.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][width_ - 1] / t_[i][enter];
        if (leave == t_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) {
      if (sgn(v) != 0) v *= inv;
    }
    auto eliminate = [&](RationalVector& row) {
      if (sgn(row[c]) == 0) return;
      const Rational f = row[c];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(t_[r][j]) != 0) row[j] -= f * t_[r][j];
      }
    };
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (i != r) eliminate(t_[i]);
    eliminate(obj_);
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < structural_) {
        ++i;
        continue;
      }
      std::size_t j = 0;
      while (j < structural_ && sgn(t_[i][j]) == 0) ++j;
      if (j < structural_) {
        pivot(i, j);
        ++i;
      } else {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::size_t rows_;
  std::size_t structural_;
  std::size_t width_;
  std::vector<RationalVector> t_;
  std::vector<std::size_t> basis_;
  RationalVector obj_;
};

}  // namespace

Result solve_standard(const linalg::Matrix& a, const RationalVector& b, const RationalVector& c) {
  if (b.size() != a.rows() || c.size() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "LP operand sizes");
  }
  Tableau tableau(a, b);
  Result result;
  if (!tableau.phase_one()) {
    result.status = Status::Infeasible;
    return result;
  }
  if (!tableau.phase_two(c)) {
    result.status = Status::Unbounded;
    return result;
  }
  result.status = Status::Optimal;
  result.x = tableau.solution();
  result.objective = tableau.objective();
  return result;
}

Result solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  if (!problem.nonnegative.empty() && problem.nonnegative.size() != n) {
    throw Error(ErrorKind::DimensionMismatch, "nonnegative flags length");
  }
  // column layout: one column per non-negative variable, a +/- pair per free
  // variable, then one surplus column per Geq row
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    const bool nonneg = !problem.nonnegative.empty() && problem.nonnegative[j];
    if (!nonneg) neg_col[j] = cols++;
  }
  std::size_t surplus = 0;
  for (const auto& row : problem.rows) surplus += (row.relation == constraints::Relation::Geq);
  const std::size_t first_surplus = cols;
  cols += surplus;

  linalg::Matrix a(problem.rows.size(), cols);
  RationalVector b(problem.rows.size());
  std::size_t next_surplus = first_surplus;
  for (std::size_t i = 0; i < problem.rows.size(); ++i) {
    const auto& row = problem.rows[i];
    for (const auto& [j, v] : row.coeffs) {
      if (j >= n) throw Error(ErrorKind::DimensionMismatch, "LP row references unknown variable");
      a(i, pos_col[j]) += v;
      if (neg_col[j] != SIZE_MAX) a(i, neg_col[j]) -= v;
    }
    if (row.relation == constraints::Relation::Geq) a(i, next_surplus++) = -1;
    b[i] = row.rhs;
  }
  RationalVector c(cols);
  for (const auto& [j, v] : problem.objective) {
    if (j >= n) throw Error(ErrorKind::DimensionMismatch, "objective references unknown variable");
    c[pos_col[j]] += v;
    if (neg_col[j] != SIZE_MAX) c[neg_col[j]] -= v;
  }

  Result standard = solve_standard(a, b, c);
  Result result;
  result.status = standard.status;
  if (standard.status != Status::Optimal) return result;
  result.x.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    result.x[j] = standard.x[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) result.x[j] -= standard.x[neg_col[j]];
  }
  result.objective = standard.objective;
  return result;
}

}  // namespace nbts::lp
