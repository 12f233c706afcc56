#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "nbts/constraints.hpp"
#include "nbts/rational.hpp"

namespace nbts::geometry {

using constraints::HPolytope;

// Extremal points of a bounded polytope, deduplicated and sorted
// lexicographically.
struct VPolytope {
  std::size_t ambient_dim = 0;
  std::vector<RationalVector> vertices;

  friend bool operator==(const VPolytope&, const VPolytope&) = default;
};

// Hyperplane with coeffs.point < rhs <= coeffs.q for every q in the polytope.
struct Separator {
  RationalVector coeffs;
  Rational rhs;
};

struct MembershipCertificate {
  bool member = false;
  std::map<std::size_t, Rational> weights;  // vertex index -> convex weight (V-form only)
  std::optional<Separator> separator;       // set when not a member
};

struct AffineHull {
  std::size_t dimension = 0;
  std::vector<std::size_t> implicit_equalities;  // indices into h.inequalities()
};

/// Largest ambient dimension accepted by the exact kernel.
inline constexpr std::size_t kMaxAmbientDim = 256;

/// Affine hull of the feasible set. Inequalities tight on the whole polytope
/// are found with one exact LP each (skipping those already seen slack at a
/// previously found point). Throws Empty if infeasible.
AffineHull affine_hull(const HPolytope& h);

std::size_t affine_dimension(const HPolytope& h);

/// Double description: restrict to the affine hull, homogenize, then insert
/// the remaining inequalities one at a time in their listed order.
VPolytope enumerate_vertices(const HPolytope& h);

/// Membership in the H-polytope by exact evaluation. A non-member gets the
/// violated constraint (oriented) as its separator.
MembershipCertificate contains(const HPolytope& h, const RationalVector& point);

/// Membership in conv(vertices) by exact LP. Members get convex weights;
/// non-members get a separating hyperplane from a second LP.
MembershipCertificate contains(const VPolytope& v, const RationalVector& point);

/// True iff the constraints tight at `point` have rank equal to the ambient
/// dimension. Throws NotInPolytope if `point` violates h.
bool is_vertex(const HPolytope& h, const RationalVector& point);

/// Exact re-check of a certificate against its V-polytope.
bool verify_certificate(const VPolytope& v, const RationalVector& point,
                        const MembershipCertificate& certificate);

}  // namespace nbts::geometry
