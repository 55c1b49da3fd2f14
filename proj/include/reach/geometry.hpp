// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "reach/linalg.hpp"

namespace reach {

/// Closed halfspace {x : normal . x <= offset}. The normal is stored with
/// unit Euclidean length.
struct Halfspace {
    Vec normal;
    double offset = 0.0;

    Halfspace() = default;
    Halfspace(Vec n, double c);  ///< normalizes; throws on zero normal

    double eval(const Vec& x) const;  ///< normal . x - offset
};

/// Axis-aligned box, lower <= upper componentwise.
struct Box {
    Vec lower;
    Vec upper;

    Box() = default;
    Box(Vec lo, Vec hi);

    std::size_t dim() const { return lower.size(); }
    bool contains(const Vec& x) const;
    /// Largest |x|_inf over the box.
    double max_inf_norm() const;
};

/// Membership flavors: the closed set, its interior, or the complement of
/// the closed set.
enum class SetMode { Closed, Interior, Complement };

/// Bounded convex region of the plane, carried simultaneously in vertex form
/// (counterclockwise, minimal) and halfspace form. Degenerate regions are
/// first class: a segment has two vertices, a point one, and the empty set
/// none. All set predicates below are exact for convex operands; the only
/// tolerance in the kernel is the 1e-12 degeneracy snap used when collapsing
/// duplicate or collinear vertices during construction.
class Polytope {
public:
    Polytope() = default;  ///< the empty set

    /// Convex hull of the given points (any order, duplicates fine).
    static Polytope hull_of(const std::vector<Vec>& points);
    static Polytope empty() { return Polytope(); }

    bool is_empty() const { return verts_.empty(); }
    std::size_t dim() const { return 2; }
    const std::vector<Vec>& vertices() const { return verts_; }
    const std::vector<Halfspace>& halfspaces() const { return hs_; }

    bool contains(const Vec& x, SetMode mode = SetMode::Closed) const;

    Vec centroid() const;  ///< vertex average; requires nonempty

private:
    std::vector<Vec> verts_;       // CCW, minimal; size 1 = point, 2 = segment
    std::vector<Halfspace> hs_;
};

/// Hypercubic ball {y : |y - center|_inf <= r}; r = 0 yields the point.
Polytope linf_ball(const Vec& center, double r);

/// Convex hull of a nonempty finite point set.
Polytope convex_hull(const std::vector<Vec>& points);

/// Closed gamma-neighborhood of P in the infinity norm, built as the hull of
/// the vertex balls; for convex P this equals the Minkowski sum with the
/// gamma-cube exactly.
Polytope gamma_neighborhood(const Polytope& p, double gamma);

/// P clipped to the closed halfspace. Empty output means the sets are
/// disjoint; that is a value, not an error.
Polytope intersect_halfspace(const Polytope& p, const Halfspace& h);

/// P intersected with the boundary hyperplane of h (both closed halfspaces
/// applied); the result is degenerate (segment, point, or empty).
Polytope intersect_hyperplane(const Polytope& p, const Halfspace& h);

/// Intersection of two convex polytopes (P clipped by Q's halfspaces).
Polytope intersect(const Polytope& p, const Polytope& q);

bool contains(const Polytope& p, const Vec& x, SetMode mode);

/// True iff every vertex of P satisfies Q's halfspaces (strictly, for
/// Interior mode). Exact for convex P and Q.
bool subset_of(const Polytope& p, const Polytope& q, SetMode mode);

/// Maximum pairwise infinity-norm distance between vertices.
double diameter(const Polytope& p);

/// Infinity-norm Hausdorff distance between two nonempty convex polytopes,
/// evaluated vertex-to-set in both directions.
double hausdorff(const Polytope& p, const Polytope& q);

/// Shoelace area of the vertex polygon (0 for degenerate shapes).
double area(const Polytope& p);

/// Infinity-norm distance from a point to a nonempty convex polytope.
double distance_to(const Polytope& p, const Vec& x);

/// Box as a (2D) polytope.
Polytope box_polytope(const Box& b);

}  // namespace reach
