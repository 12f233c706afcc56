#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nbts/behavior.hpp"
#include "nbts/constraints.hpp"
#include "nbts/linalg.hpp"

namespace nbts::testing {

// Vertices of {A p = b, p >= 0} as basic feasible solutions: every basis of
// rank(A) columns whose solution is non-negative. Candidates are screened in
// floating point and confirmed exactly. Independent of double description.
inline std::vector<RationalVector> brute_force_vertices(const constraints::HPolytope& h) {
  const std::size_t n = h.ambient_dim();
  const auto& eq = h.equalities();
  linalg::Matrix full(eq.size(), n + 1);
  for (std::size_t r = 0; r < eq.size(); ++r) {
    for (const auto& [i, v] : eq[r].coeffs) full(r, i) = v;
    full(r, n) = eq[r].rhs;
  }
  const linalg::Echelon ech = linalg::row_reduce(full);
  const std::size_t rows = ech.reduced.rows();
  linalg::Matrix a(rows, n);
  RationalVector b(rows);
  std::vector<double> ad(rows * n), bd(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      a(r, c) = ech.reduced(r, c);
      ad[r * n + c] = a(r, c).get_d();
    }
    b[r] = ech.reduced(r, n);
    bd[r] = b[r].get_d();
  }

  std::vector<RationalVector> found;
  std::vector<std::size_t> basis;
  auto screen = [&]() {
    // Gaussian elimination with partial pivoting on the rows x rows system
    std::vector<double> m(rows * (rows + 1));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < rows; ++k) m[r * (rows + 1) + k] = ad[r * n + basis[k]];
      m[r * (rows + 1) + rows] = bd[r];
    }
    const std::size_t w = rows + 1;
    for (std::size_t c = 0; c < rows; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < rows; ++r)
        if (std::abs(m[r * w + c]) > std::abs(m[piv * w + c])) piv = r;
      if (std::abs(m[piv * w + c]) < 1e-9) return false;
      for (std::size_t k = 0; k < w; ++k) std::swap(m[c * w + k], m[piv * w + k]);
      for (std::size_t r = 0; r < rows; ++r) {
        if (r == c) continue;
        const double f = m[r * w + c] / m[c * w + c];
        for (std::size_t k = c; k < w; ++k) m[r * w + k] -= f * m[c * w + k];
      }
    }
    for (std::size_t c = 0; c < rows; ++c)
      if (m[c * w + rows] / m[c * w + c] < -1e-9) return false;
    return true;
  };
  auto visit = [&](auto&& self, std::size_t next) -> void {
    if (basis.size() == rows) {
      if (!screen()) return;
      linalg::Matrix sub(rows, rows);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < rows; ++k) sub(r, k) = a(r, basis[k]);
      const auto x = linalg::solve_unique(sub, b);
      if (!x) return;
      RationalVector p(n);
      for (std::size_t k = 0; k < rows; ++k) {
        if (sgn((*x)[k]) < 0) return;
        p[basis[k]] = (*x)[k];
      }
      found.push_back(std::move(p));
      return;
    }
    for (std::size_t j = next; j + (rows - basis.size()) <= n; ++j) {
      basis.push_back(j);
      self(self, j + 1);
      basis.pop_back();
    }
  };
  visit(visit, 0);
  std::sort(found.begin(), found.end(), lex_less);
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

// Random convex weights with small denominators.
inline std::vector<Rational> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(1, 12);
  std::vector<Rational> w(n);
  Rational total = 0;
  for (auto& v : w) {
    v = dist(rng);
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

inline Behavior random_mixture(const std::vector<Behavior>& pool, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::vector<Behavior> chosen;
  for (std::size_t k = 0; k < terms; ++k) chosen.push_back(pool[pick(rng)]);
  const auto w = random_weights(terms, rng);
  return mix(chosen, w);
}

inline std::vector<RationalVector> tables(const std::vector<Behavior>& bs) {
  std::vector<RationalVector> out;
  for (const auto& b : bs) out.push_back(b.table());
  return out;
}

}  // namespace nbts::testing
