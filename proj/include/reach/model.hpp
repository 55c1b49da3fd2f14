// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reach/geometry.hpp"
#include "reach/linalg.hpp"

namespace reach {

/// One polyhedral cell of the state-space partition.
struct Cell {
    std::string name;
    Polytope poly;
};

/// A discrete mode: LTI dynamics xdot = A x + u active on the union of the
/// listed cells (its invariant set).
struct Location {
    std::string name;
    Mat A;
    Vec u;
    std::vector<std::size_t> cells;  ///< indices into LhaModel::cells()
};

/// A maximal straight piece of some boundary, with the plane oriented so
/// that `plane.normal` points out of the owning side.
struct FacetSegment {
    Halfspace plane;
    Vec a, b;                   ///< endpoints of the piece
    std::size_t cell_from = 0;  ///< cell whose edge produced the piece
    std::size_t cell_to = 0;    ///< adjacent cell across it (shared facets only)
};

/// How a convex set sits relative to a location's (possibly non-convex)
/// invariant: strictly inside its interior, disjoint from the closed set,
/// or neither.
enum class InvariantRelation { Inside, Outside, Straddle };

/// Immutable hybrid-automaton model: a box state space partitioned into
/// cells, each assigned to exactly one location. Structural preconditions
/// (dimensions, index ranges) are enforced by make(); semantic ones
/// (partition, connectivity, coverage) are checked by validate(), which
/// reports violations instead of throwing.
class LhaModel {
public:
    static LhaModel make(Box state_box, std::vector<Cell> cells, std::vector<Location> locations);

    std::size_t dim() const { return state_box_.dim(); }
    const Box& state_box() const { return state_box_; }
    const std::vector<Cell>& cells() const { return cells_; }
    const std::vector<Location>& locations() const { return locations_; }

    std::optional<std::size_t> location_index(std::string_view name) const;
    std::optional<std::size_t> cell_index(std::string_view name) const;

    /// Pieces of the topological boundary of Inv(loc) (edges of its cells not
    /// glued to another cell of the same location).
    const std::vector<FacetSegment>& invariant_boundary(std::size_t loc) const;

    /// True iff the two cells meet in a 1-dimensional facet.
    bool cells_adjacent(std::size_t i, std::size_t j) const;

private:
    Box state_box_;
    std::vector<Cell> cells_;
    std::vector<Location> locations_;
    std::vector<std::vector<FacetSegment>> boundary_;  // per location
    std::vector<std::vector<bool>> adjacency_;         // cell x cell
};

/// Initial hybrid state; x0 must lie in the closed invariant of `location`.
struct InitialCondition {
    std::size_t location = 0;
    Vec x0;
};

struct Violation {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Semantic model checks: cells partition the state box (coverage by area,
/// pairwise interior disjointness), every cell is assigned to exactly one
/// location, and each location's cells are facet-connected. Collects every
/// violation.
ValidationReport validate(const LhaModel& model);

/// All locations whose closed invariant contains x. Throws if x is outside
/// the state box.
std::vector<std::size_t> locate(const LhaModel& model, const Vec& x);

/// Shared facets between two locations' invariants, planes oriented outward
/// from `from`. Empty if the invariants are not facet-adjacent.
std::vector<FacetSegment> shared_facets(const LhaModel& model, std::size_t from, std::size_t to);

/// The shared facet hyperplane with outward normal from `from`; when the
/// boundary consists of several pieces the longest one wins. Throws if the
/// invariants are not facet-adjacent.
Halfspace shared_facet(const LhaModel& model, std::size_t from, std::size_t to);

/// Relation of a convex region to Inv(loc); exact disjointness via clipping,
/// interior containment via area covering plus boundary contact.
InvariantRelation classify_against_invariant(const LhaModel& model, std::size_t loc,
                                             const Polytope& p);

/// True iff p lies in the closed union of the listed locations' invariants.
bool invariant_union_contains(const LhaModel& model, const std::vector<std::size_t>& locs,
                              const Polytope& p);

/// Global speed bound max over locations of |A|_inf * x_bar + |u|_inf.
double v_bar(const LhaModel& model);

/// compute_mu_x over a state box and the model's input set.
double compute_mu_x(const NumericsBudget& budget, const Box& state_box,
                    const std::vector<Vec>& inputs);
double compute_mu_x(const NumericsBudget& budget, const LhaModel& model);

}  // namespace reach
