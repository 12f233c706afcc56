#include "nbts/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "nbts/error.hpp"
#include "nbts/linalg.hpp"
#include "nbts/lp.hpp"

namespace nbts::geometry {

using constraints::LinearConstraint;
using constraints::Relation;

namespace {

void check_capacity(const HPolytope& h) {
  if (h.ambient_dim() > kMaxAmbientDim) {
    throw Error(ErrorKind::CapacityExceeded,
                "ambient dimension " + std::to_string(h.ambient_dim()) + " exceeds " +
                    std::to_string(kMaxAmbientDim));
  }
}

bool is_positivity(const LinearConstraint& c) {
  return c.coeffs.size() == 1 && c.coeffs.begin()->second == 1 && sgn(c.rhs) == 0;
}

// LP skeleton over h: positivity rows become variable bounds, the rest are rows.
lp::Problem base_problem(const HPolytope& h) {
  lp::Problem p;
  p.num_vars = h.ambient_dim();
  p.nonnegative.assign(p.num_vars, false);
  p.rows = h.equalities();
  for (const auto& c : h.inequalities()) {
    if (is_positivity(c)) {
      p.nonnegative[c.coeffs.begin()->first] = true;
    } else {
      p.rows.push_back(c);
    }
  }
  return p;
}

// Dynamic bitset over constraint rows.
class RowSet {
 public:
  explicit RowSet(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  RowSet operator&(const RowSet& o) const {
    RowSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool subset_of(const RowSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~o.words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

using IntVector = std::vector<mpz_class>;

struct Ray {
  IntVector coords;
  RowSet zeros;
};

mpz_class int_dot(const IntVector& a, const IntVector& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

void make_primitive(IntVector& v) {
  mpz_class g = 0;
  for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
  if (g > 1) {
    for (auto& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
  }
}

IntVector to_integer_row(const RationalVector& row) {
  mpz_class l = 1;
  for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.get_den_mpz_t());
  IntVector out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) {
    out[i] = row[i].get_num() * (l / row[i].get_den());
  }
  make_primitive(out);
  return out;
}

// Extreme rays of the pointed cone {y : rows[i].y >= 0}.
std::vector<IntVector> cone_extreme_rays(const std::vector<IntVector>& rows, std::size_t dim) {
  linalg::Matrix m(rows.size(), dim);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = rows[r][c];
  const auto basis = linalg::independent_rows(m);
  if (basis.size() < dim) throw Error(ErrorKind::Unbounded, "cone has a lineality space");

  linalg::Matrix b(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) b(r, c) = m(basis[r], c);
  const auto inv = linalg::inverse(b);
  if (!inv) throw Error(ErrorKind::InternalContradiction, "initial basis is singular");

  std::vector<Ray> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    RationalVector col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = (*inv)(r, j);
    Ray ray{to_integer_row(col), RowSet(rows.size())};
    for (std::size_t r = 0; r < dim; ++r)
      if (r != j) ray.zeros.set(basis[r]);
    rays.push_back(std::move(ray));
  }

  std::vector<bool> in_basis(rows.size(), false);
  for (auto r : basis) in_basis[r] = true;

  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (in_basis[r]) continue;
    std::vector<mpz_class> value(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      value[i] = int_dot(rows[r], rays[i].coords);
      const int s = sgn(value[i]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(i);
    }
    std::vector<Ray> next;
    next.reserve(pos.size() + zero.size());
    for (auto i : pos) next.push_back(rays[i]);
    for (auto i : zero) {
      next.push_back(rays[i]);
      next.back().zeros.set(r);
    }
    for (auto p : pos) {
      for (auto n : neg) {
        RowSet common = rays[p].zeros & rays[n].zeros;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o != p && o != n && common.subset_of(rays[o].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        IntVector coords(dim);
        const mpz_class wp = -value[n];
        const mpz_class& wn = value[p];
        for (std::size_t c = 0; c < dim; ++c) coords[c] = wp * rays[p].coords[c] + wn * rays[n].coords[c];
        make_primitive(coords);
        common.set(r);
        next.push_back({std::move(coords), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<IntVector> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.coords));
  return out;
}

}  // namespace

AffineHull affine_hull(const HPolytope& h) {
  check_capacity(h);
  const auto& ineqs = h.inequalities();
  std::vector<bool> strict(ineqs.size(), false);

  auto mark_slack = [&](const RationalVector& point) {
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
      if (!strict[i] && ineqs[i].evaluate(point) > ineqs[i].rhs) strict[i] = true;
    }
  };

  const lp::Problem base = base_problem(h);
  const lp::Result feasible = lp::solve(base);
  if (feasible.status != lp::Status::Optimal) throw Error(ErrorKind::Empty, "polytope is empty");
  mark_slack(feasible.x);

  AffineHull hull;
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (strict[i]) continue;
    lp::Problem probe = base;
    probe.objective = ineqs[i].coeffs;
    const lp::Result r = lp::solve(probe);
    if (r.status == lp::Status::Unbounded) {
      strict[i] = true;
      continue;
    }
    mark_slack(r.x);
    if (!strict[i]) hull.implicit_equalities.push_back(i);
  }

  auto rows = h.equalities();
  for (auto i : hull.implicit_equalities) {
    LinearConstraint c = ineqs[i];
    c.relation = Relation::Eq;
    rows.push_back(std::move(c));
  }
  std::size_t rank = 0;
  if (!rows.empty()) {
    linalg::Matrix m(rows.size(), h.ambient_dim());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [j, v] : rows[r].coeffs) m(r, j) = v;
    rank = linalg::rank(m);
  }
  hull.dimension = h.ambient_dim() - rank;
  return hull;
}

std::size_t affine_dimension(const HPolytope& h) { return affine_hull(h).dimension; }

VPolytope enumerate_vertices(const HPolytope& h) {
  const AffineHull hull = affine_hull(h);
  const std::size_t n = h.ambient_dim();
  const auto& ineqs = h.inequalities();

  // Parametrize the hull by its free coordinates: p = p0 + N z.
  std::vector<LinearConstraint> eq = h.equalities();
  std::vector<bool> implicit(ineqs.size(), false);
  for (auto i : hull.implicit_equalities) {
    implicit[i] = true;
    eq.push_back(ineqs[i]);
  }
  linalg::Matrix aug(eq.size(), n + 1);
  for (std::size_t r = 0; r < eq.size(); ++r) {
    for (const auto& [j, v] : eq[r].coeffs) aug(r, j) = v;
    aug(r, n) = eq[r].rhs;
  }
  const linalg::Echelon ech = linalg::row_reduce(std::move(aug));
  if (!ech.pivots.empty() && ech.pivots.back() == n) throw Error(ErrorKind::Empty, "inconsistent equalities");

  std::vector<bool> is_pivot(n, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  const std::size_t k = free_cols.size();

  RationalVector p0(n);
  std::vector<RationalVector> basis(n, RationalVector(k));  // N as rows per coordinate
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
    const std::size_t pc = ech.pivots[r];
    p0[pc] = ech.reduced(r, n);
    for (std::size_t f = 0; f < k; ++f) basis[pc][f] = -ech.reduced(r, free_cols[f]);
  }
  for (std::size_t f = 0; f < k; ++f) basis[free_cols[f]][f] = 1;

  auto lift = [&](const RationalVector& z) {
    RationalVector p = p0;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t f = 0; f < k; ++f)
        if (sgn(basis[c][f]) != 0 && sgn(z[f]) != 0) p[c] += basis[c][f] * z[f];
    return p;
  };

  VPolytope out;
  out.ambient_dim = n;
  if (k == 0) {
    out.vertices.push_back(p0);
    return out;
  }

  // Homogenized cone rows over (z, t): t >= 0 first, then each non-implicit
  // inequality g.(p0 + N z) - rhs * t >= 0 in listed order.
  std::vector<IntVector> rows;
  {
    RationalVector trow(k + 1);
    trow[k] = 1;
    rows.push_back(to_integer_row(trow));
  }
  for (std::size_t i = 0; i < ineqs.size(); ++i) {
    if (implicit[i]) continue;
    RationalVector row(k + 1);
    Rational offset = -ineqs[i].rhs;
    for (const auto& [j, v] : ineqs[i].coeffs) {
      offset += v * p0[j];
      for (std::size_t f = 0; f < k; ++f) row[f] += v * basis[j][f];
    }
    row[k] = offset;
    if (std::all_of(row.begin(), row.end() - 1, [](const Rational& e) { return sgn(e) == 0; })) {
      continue;  // constant on the hull, and the hull is feasible
    }
    rows.push_back(to_integer_row(row));
  }

  const auto rays = cone_extreme_rays(rows, k + 1);
  for (const auto& ray : rays) {
    if (sgn(ray[k]) == 0) throw Error(ErrorKind::Unbounded, "polytope has a recession direction");
    RationalVector z(k);
    for (std::size_t f = 0; f < k; ++f) {
      z[f] = Rational(ray[f], ray[k]);
      z[f].canonicalize();
    }
    out.vertices.push_back(lift(z));
  }
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  return out;
}

MembershipCertificate contains(const HPolytope& h, const RationalVector& point) {
  if (point.size() != h.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  MembershipCertificate cert;
  auto separator_from = [&](const LinearConstraint& c, bool flip) {
    Separator s;
    s.coeffs.assign(h.ambient_dim(), 0);
    for (const auto& [j, v] : c.coeffs) s.coeffs[j] = flip ? Rational(-v) : v;
    s.rhs = flip ? Rational(-c.rhs) : c.rhs;
    return s;
  };
  for (const auto& c : h.equalities()) {
    const Rational lhs = c.evaluate(point);
    if (lhs != c.rhs) {
      cert.separator = separator_from(c, lhs > c.rhs);
      return cert;
    }
  }
  for (const auto& c : h.inequalities()) {
    if (c.evaluate(point) < c.rhs) {
      cert.separator = separator_from(c, false);
      return cert;
    }
  }
  cert.member = true;
  return cert;
}

MembershipCertificate contains(const VPolytope& v, const RationalVector& point) {
  if (point.size() != v.ambient_dim) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  const std::size_t n = v.ambient_dim;
  const std::size_t count = v.vertices.size();
  MembershipCertificate cert;

  if (count > 0) {
    lp::Problem weights;
    weights.num_vars = count;
    weights.nonnegative.assign(count, true);
    LinearConstraint total;
    for (std::size_t i = 0; i < count; ++i) total.coeffs[i] = 1;
    total.rhs = 1;
    weights.rows.push_back(std::move(total));
    for (std::size_t c = 0; c < n; ++c) {
      LinearConstraint row;
      for (std::size_t i = 0; i < count; ++i)
        if (sgn(v.vertices[i][c]) != 0) row.coeffs[i] = v.vertices[i][c];
      row.rhs = point[c];
      weights.rows.push_back(std::move(row));
    }
    const lp::Result r = lp::solve(weights);
    if (r.status == lp::Status::Optimal) {
      cert.member = true;
      for (std::size_t i = 0; i < count; ++i)
        if (sgn(r.x[i]) != 0) cert.weights[i] = r.x[i];
      return cert;
    }
  }

  // maximize delta - c.point  s.t.  c.v_i >= delta,  -1 <= c_j <= 1
  lp::Problem sep;
  sep.num_vars = n + 1;  // c_0..c_{n-1}, delta
  for (std::size_t i = 0; i < count; ++i) {
    LinearConstraint row;
    row.relation = Relation::Geq;
    for (std::size_t c = 0; c < n; ++c)
      if (sgn(v.vertices[i][c]) != 0) row.coeffs[c] = v.vertices[i][c];
    row.coeffs[n] = -1;
    row.rhs = 0;
    sep.rows.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < n; ++c) {
    LinearConstraint lo, hi;
    lo.relation = hi.relation = Relation::Geq;
    lo.coeffs[c] = 1;
    lo.rhs = -1;
    hi.coeffs[c] = -1;
    hi.rhs = -1;
    sep.rows.push_back(std::move(lo));
    sep.rows.push_back(std::move(hi));
  }
  if (count == 0) {
    LinearConstraint cap;  // keeps delta bounded when there are no vertices
    cap.relation = Relation::Geq;
    cap.coeffs[n] = -1;
    cap.rhs = -1;
    sep.rows.push_back(std::move(cap));
  }
  sep.objective[n] = 1;
  for (std::size_t c = 0; c < n; ++c)
    if (sgn(point[c]) != 0) sep.objective[c] = -point[c];
  const lp::Result r = lp::solve(sep);
  if (r.status != lp::Status::Optimal || sgn(r.objective) <= 0) {
    throw Error(ErrorKind::InternalContradiction, "weights LP infeasible but no separator found");
  }
  Separator s;
  s.coeffs.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(n));
  s.rhs = r.x[n];
  cert.separator = std::move(s);
  return cert;
}

bool is_vertex(const HPolytope& h, const RationalVector& point) {
  if (point.size() != h.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "point dimension");
  if (!h.contains(point)) throw Error(ErrorKind::NotInPolytope, "point violates the polytope");
  std::vector<const LinearConstraint*> tight;
  for (const auto& c : h.equalities()) tight.push_back(&c);
  for (const auto& c : h.inequalities())
    if (c.evaluate(point) == c.rhs) tight.push_back(&c);
  linalg::Matrix m(tight.size(), h.ambient_dim());
  for (std::size_t r = 0; r < tight.size(); ++r)
    for (const auto& [j, v] : tight[r]->coeffs) m(r, j) = v;
  return linalg::rank(m) == h.ambient_dim();
}

bool verify_certificate(const VPolytope& v, const RationalVector& point,
                        const MembershipCertificate& certificate) {
  if (certificate.member) {
    Rational total = 0;
    RationalVector sum(v.ambient_dim);
    for (const auto& [i, w] : certificate.weights) {
      if (i >= v.vertices.size() || sgn(w) < 0) return false;
      total += w;
      for (std::size_t c = 0; c < v.ambient_dim; ++c) sum[c] += w * v.vertices[i][c];
    }
    return total == 1 && sum == point;
  }
  if (!certificate.separator) return false;
  const auto& s = *certificate.separator;
  if (!(linalg::dot(s.coeffs, point) < s.rhs)) return false;
  for (const auto& q : v.vertices)
    if (linalg::dot(s.coeffs, q) < s.rhs) return false;
  return true;
}

}  // namespace nbts::geometry
