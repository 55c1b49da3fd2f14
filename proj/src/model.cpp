// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace reach {

namespace {

constexpr double kLineTol = 1e-9;   // matching edge lines across cells
constexpr double kFacetTol = 1e-9;  // minimum 1D measure of a shared facet

struct Edge {
    Vec a, b;
    Vec dir;       // unit, a -> b
    double len;
    Halfspace outward;  // out of the owning cell
    Vec line_n;    // canonical line key: unit normal with fixed sign
    double line_c;
};

std::vector<Edge> edges_of(const Polytope& poly) {
    std::vector<Edge> out;
    const auto& v = poly.vertices();
    if (v.size() < 2) return out;
    const std::size_t n = v.size() == 2 ? 1 : v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec& a = v[i];
        const Vec& b = v[(i + 1) % v.size()];
        const double dx = b[0] - a[0], dy = b[1] - a[1];
        const double len = std::hypot(dx, dy);
        if (!(len > 0.0)) continue;
        Edge e;
        e.a = a;
        e.b = b;
        e.dir = Vec{dx / len, dy / len};
        e.len = len;
        e.outward = Halfspace(Vec{dy, -dx}, dy * a[0] - dx * a[1]);
        e.line_n = e.outward.normal;
        e.line_c = e.outward.offset;
        if (e.line_n[0] < 0.0 || (e.line_n[0] == 0.0 && e.line_n[1] < 0.0)) {
            e.line_n = Vec{-e.line_n[0], -e.line_n[1]};
            e.line_c = -e.line_c;
        }
        out.push_back(std::move(e));
    }
    return out;
}

bool same_line(const Edge& x, const Edge& y) {
    return std::abs(x.line_n[0] - y.line_n[0]) <= kLineTol &&
           std::abs(x.line_n[1] - y.line_n[1]) <= kLineTol &&
           std::abs(x.line_c - y.line_c) <= kLineTol;
}

struct Interval {
    double lo, hi;
};

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const auto& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi + kFacetTol)
            out.back().hi = std::max(out.back().hi, iv.hi);
        else
            out.push_back(iv);
    }
    return out;
}

// Projection of the overlap of edge f onto edge e's parameter range.
std::optional<Interval> overlap_on(const Edge& e, const Edge& f) {
    if (!same_line(e, f)) return std::nullopt;
    const double t0 = e.dir[0] * (f.a[0] - e.a[0]) + e.dir[1] * (f.a[1] - e.a[1]);
    const double t1 = e.dir[0] * (f.b[0] - e.a[0]) + e.dir[1] * (f.b[1] - e.a[1]);
    Interval iv{std::min(t0, t1), std::max(t0, t1)};
    iv.lo = std::max(iv.lo, 0.0);
    iv.hi = std::min(iv.hi, e.len);
    if (iv.hi - iv.lo <= kFacetTol) return std::nullopt;
    return iv;
}

Vec along(const Edge& e, double t) {
    return Vec{e.a[0] + t * e.dir[0], e.a[1] + t * e.dir[1]};
}

}  // namespace

LhaModel LhaModel::make(Box state_box, std::vector<Cell> cells, std::vector<Location> locations) {
    if (state_box.dim() != 2)
        throw std::invalid_argument("LhaModel: exact geometry kernel supports dimension 2 only");
    if (cells.empty()) throw std::invalid_argument("LhaModel: no cells");
    if (locations.empty()) throw std::invalid_argument("LhaModel: no locations");

    std::set<std::string> names;
    for (const auto& c : cells) {
        if (c.poly.is_empty()) throw std::invalid_argument("LhaModel: empty cell polytope");
        if (!names.insert(c.name).second)
            throw std::invalid_argument("LhaModel: duplicate cell name '" + c.name + "'");
    }
    names.clear();
    for (const auto& l : locations) {
        if (!names.insert(l.name).second)
            throw std::invalid_argument("LhaModel: duplicate location name '" + l.name + "'");
        if (l.A.dim() != 2 || l.u.size() != 2)
            throw std::invalid_argument("LhaModel: dynamics of '" + l.name + "' must be 2-dimensional");
        for (std::size_t ci : l.cells)
            if (ci >= cells.size())
                throw std::invalid_argument("LhaModel: cell index out of range in '" + l.name + "'");
    }

    LhaModel m;
    m.state_box_ = std::move(state_box);
    m.cells_ = std::move(cells);
    m.locations_ = std::move(locations);

    std::vector<std::vector<Edge>> edges;
    edges.reserve(m.cells_.size());
    for (const auto& c : m.cells_) edges.push_back(edges_of(c.poly));

    const std::size_t nc = m.cells_.size();
    m.adjacency_.assign(nc, std::vector<bool>(nc, false));
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = i + 1; j < nc; ++j) {
            bool adj = false;
            for (const auto& e : edges[i]) {
                for (const auto& f : edges[j])
                    if (overlap_on(e, f)) { adj = true; break; }
                if (adj) break;
            }
            m.adjacency_[i][j] = m.adjacency_[j][i] = adj;
        }

    m.boundary_.resize(m.locations_.size());
    for (std::size_t li = 0; li < m.locations_.size(); ++li) {
        for (std::size_t ci : m.locations_[li].cells) {
            for (const auto& e : edges[ci]) {
                std::vector<Interval> holes;
                for (std::size_t cj : m.locations_[li].cells) {
                    if (cj == ci) continue;
                    for (const auto& f : edges[cj])
                        if (auto iv = overlap_on(e, f)) holes.push_back(*iv);
                }
                holes = merge_intervals(holes);
                double cursor = 0.0;
                auto emit = [&](double lo, double hi) {
                    if (hi - lo <= kFacetTol) return;
                    m.boundary_[li].push_back(FacetSegment{e.outward, along(e, lo), along(e, hi), ci, ci});
                };
                for (const auto& h : holes) {
                    emit(cursor, h.lo);
                    cursor = std::max(cursor, h.hi);
                }
                emit(cursor, e.len);
            }
        }
    }
    return m;
}

std::optional<std::size_t> LhaModel::location_index(std::string_view name) const {
    for (std::size_t i = 0; i < locations_.size(); ++i)
        if (locations_[i].name == name) return i;
    return std::nullopt;
}

std::optional<std::size_t> LhaModel::cell_index(std::string_view name) const {
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].name == name) return i;
    return std::nullopt;
}

const std::vector<FacetSegment>& LhaModel::invariant_boundary(std::size_t loc) const {
    return boundary_.at(loc);
}

bool LhaModel::cells_adjacent(std::size_t i, std::size_t j) const {
    return adjacency_.at(i).at(j);
}

ValidationReport validate(const LhaModel& model) {
    ValidationReport rep;
    auto add = [&](std::string code, std::string msg) {
        rep.violations.push_back(Violation{std::move(code), std::move(msg)});
    };

    const Polytope box = box_polytope(model.state_box());
    const double box_area = area(box);
    double covered = 0.0;

    for (std::size_t i = 0; i < model.cells().size(); ++i) {
        const Cell& c = model.cells()[i];
        const double a = area(c.poly);
        covered += a;
        if (a <= 1e-12)
            add("cell_degenerate", "cell '" + c.name + "' has empty interior");
        for (const auto& v : c.poly.vertices()) {
            bool in = true;
            for (std::size_t d = 0; d < 2; ++d)
                in = in && v[d] >= model.state_box().lower[d] - 1e-9 &&
                     v[d] <= model.state_box().upper[d] + 1e-9;
            if (!in) {
                add("cell_outside_box", "cell '" + c.name + "' leaves the state box");
                break;
            }
        }
    }

    if (std::abs(covered - box_area) > 1e-9 * std::max(1.0, box_area))
        add("coverage", "cells do not tile the state box: cell area sum " + std::to_string(covered) +
                            " vs box area " + std::to_string(box_area));

    for (std::size_t i = 0; i < model.cells().size(); ++i)
        for (std::size_t j = i + 1; j < model.cells().size(); ++j) {
            const double ov = area(intersect(model.cells()[i].poly, model.cells()[j].poly));
            const double tol =
                1e-9 * std::max(1.0, std::min(area(model.cells()[i].poly), area(model.cells()[j].poly)));
            if (ov > tol)
                add("cells_overlap", "cells '" + model.cells()[i].name + "' and '" +
                                         model.cells()[j].name + "' share interior");
        }

    std::vector<int> assigned(model.cells().size(), 0);
    for (const auto& l : model.locations())
        for (std::size_t ci : l.cells) ++assigned[ci];
    for (std::size_t i = 0; i < assigned.size(); ++i) {
        if (assigned[i] == 0)
            add("cell_unassigned", "cell '" + model.cells()[i].name + "' belongs to no location");
        if (assigned[i] > 1)
            add("cell_shared", "cell '" + model.cells()[i].name + "' belongs to several locations");
    }

    for (const auto& l : model.locations()) {
        if (l.cells.empty()) {
            add("invariant_empty", "location '" + l.name + "' has no cells");
            continue;
        }
        std::vector<bool> seen(model.cells().size(), false);
        std::deque<std::size_t> queue{l.cells.front()};
        seen[l.cells.front()] = true;
        while (!queue.empty()) {
            const std::size_t c = queue.front();
            queue.pop_front();
            for (std::size_t o : l.cells)
                if (!seen[o] && model.cells_adjacent(c, o)) {
                    seen[o] = true;
                    queue.push_back(o);
                }
        }
        for (std::size_t o : l.cells)
            if (!seen[o]) {
                add("invariant_disconnected", "location '" + l.name + "' is not facet-connected");
                break;
            }
    }
    return rep;
}

std::vector<std::size_t> locate(const LhaModel& model, const Vec& x) {
    if (!model.state_box().contains(x))
        throw std::domain_error("locate: point outside the state box");
    std::vector<std::size_t> out;
    for (std::size_t li = 0; li < model.locations().size(); ++li)
        for (std::size_t ci : model.locations()[li].cells)
            if (model.cells()[ci].poly.contains(x, SetMode::Closed)) {
                out.push_back(li);
                break;
            }
    return out;
}

std::vector<FacetSegment> shared_facets(const LhaModel& model, std::size_t from, std::size_t to) {
    std::vector<FacetSegment> out;
    if (from >= model.locations().size() || to >= model.locations().size() || from == to)
        throw std::invalid_argument("shared_facets: bad location pair");
    for (std::size_t ci : model.locations()[from].cells) {
        const auto ei = edges_of(model.cells()[ci].poly);
        for (std::size_t cj : model.locations()[to].cells) {
            const auto ej = edges_of(model.cells()[cj].poly);
            for (const auto& e : ei)
                for (const auto& f : ej)
                    if (auto iv = overlap_on(e, f))
                        out.push_back(FacetSegment{e.outward, along(e, iv->lo), along(e, iv->hi), ci, cj});
        }
    }
    return out;
}

Halfspace shared_facet(const LhaModel& model, std::size_t from, std::size_t to) {
    const auto segs = shared_facets(model, from, to);
    if (segs.empty()) throw std::invalid_argument("shared_facet: invariants are not facet-adjacent");
    const FacetSegment* best = &segs.front();
    double best_len = -1.0;
    for (const auto& s : segs) {
        const double len = std::hypot(s.b[0] - s.a[0], s.b[1] - s.a[1]);
        if (len > best_len) {
            best_len = len;
            best = &s;
        }
    }
    return best->plane;
}

namespace {

bool segment_touches(const Polytope& p, const FacetSegment& seg) {
    return !intersect(Polytope::hull_of({seg.a, seg.b}), p).is_empty();
}

}  // namespace

InvariantRelation classify_against_invariant(const LhaModel& model, std::size_t loc,
                                             const Polytope& p) {
    if (p.is_empty()) return InvariantRelation::Outside;
    const Location& l = model.locations().at(loc);
    double inside_area = 0.0;
    bool any = false;
    for (std::size_t ci : l.cells) {
        const Polytope piece = intersect(p, model.cells()[ci].poly);
        if (!piece.is_empty()) any = true;
        inside_area += area(piece);
    }
    if (!any) return InvariantRelation::Outside;
    const double pa = area(p);
    if (pa > 0.0 && inside_area < pa - std::max(1e-9 * pa, 1e-18))
        return InvariantRelation::Straddle;
    for (const auto& seg : model.invariant_boundary(loc))
        if (segment_touches(p, seg)) return InvariantRelation::Straddle;
    return InvariantRelation::Inside;
}

bool invariant_union_contains(const LhaModel& model, const std::vector<std::size_t>& locs,
                              const Polytope& p) {
    if (p.is_empty()) return true;
    const double pa = area(p);
    if (pa > 0.0) {
        double inside = 0.0;
        for (std::size_t li : locs)
            for (std::size_t ci : model.locations().at(li).cells)
                inside += area(intersect(p, model.cells()[ci].poly));
        return inside >= pa - std::max(1e-9 * pa, 1e-18);
    }
    // Degenerate region: cover its segment parameter range by the pieces the
    // cells carve out of it.
    const auto& v = p.vertices();
    if (v.size() == 1) {
        for (std::size_t li : locs)
            for (std::size_t ci : model.locations().at(li).cells)
                if (model.cells()[ci].poly.contains(v[0], SetMode::Closed)) return true;
        return false;
    }
    const double dx = v[1][0] - v[0][0], dy = v[1][1] - v[0][1];
    const double len = std::hypot(dx, dy);
    std::vector<Interval> pieces;
    for (std::size_t li : locs)
        for (std::size_t ci : model.locations().at(li).cells) {
            const Polytope q = intersect(p, model.cells()[ci].poly);
            if (q.is_empty()) continue;
            double lo = len, hi = 0.0;
            for (const auto& w : q.vertices()) {
                const double t = ((w[0] - v[0][0]) * dx + (w[1] - v[0][1]) * dy) / len;
                lo = std::min(lo, t);
                hi = std::max(hi, t);
            }
            pieces.push_back(Interval{lo, hi});
        }
    pieces = merge_intervals(pieces);
    return pieces.size() == 1 && pieces.front().lo <= kFacetTol && pieces.front().hi >= len - kFacetTol;
}

double v_bar(const LhaModel& model) {
    const double x_bar = model.state_box().max_inf_norm();
    double v = 0.0;
    for (const auto& l : model.locations())
        v = std::max(v, l.A.inf_norm() * x_bar + l.u.inf_norm());
    return v;
}

double compute_mu_x(const NumericsBudget& budget, const Box& state_box,
                    const std::vector<Vec>& inputs) {
    double u_bar = 0.0;
    for (const auto& u : inputs) u_bar = std::max(u_bar, u.inf_norm());
    return compute_mu_x(budget, state_box.max_inf_norm(), u_bar);
}

double compute_mu_x(const NumericsBudget& budget, const LhaModel& model) {
    std::vector<Vec> inputs;
    inputs.reserve(model.locations().size());
    for (const auto& l : model.locations()) inputs.push_back(l.u);
    return compute_mu_x(budget, model.state_box(), inputs);
}

}  // namespace reach
