// Copyright (c) 2026 the reach developers
// SPDX-License-Identifier: Apache-2.0
#include "reach/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace reach {

namespace {

// Degeneracy snap for vertex dedup and collinearity decisions. Set predicates
// (contains, subset_of) stay exact; only construction uses this.
constexpr double kSnap = 1e-12;

double cross(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Strict left turn o->a->b. The collinearity snap scales with the edge
// lengths (a sine tolerance): an absolute cross-product cutoff would flatten
// thin slivers whose area is tiny only because one side is short.
bool turns_left(const Vec& o, const Vec& a, const Vec& b) {
    const double sa = std::max(std::abs(a[0] - o[0]), std::abs(a[1] - o[1]));
    const double sb = std::max(std::abs(b[0] - o[0]), std::abs(b[1] - o[1]));
    return cross(o, a, b) > kSnap * sa * sb;
}

bool same_point(const Vec& a, const Vec& b) {
    return std::abs(a[0] - b[0]) <= kSnap && std::abs(a[1] - b[1]) <= kSnap;
}

double linf(const Vec& a, const Vec& b) {
    return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

void require_planar(const std::vector<Vec>& pts) {
    if (pts.empty()) throw std::invalid_argument("polytope: empty point set");
    for (const auto& p : pts)
        if (p.size() != 2) throw std::invalid_argument("polytope: kernel is 2-dimensional");
}

// Andrew monotone chain; returns the hull CCW starting from the
// lexicographically smallest vertex. Inputs are deduplicated first; collinear
// and duplicate points collapse. 1 output = point, 2 = segment.
std::vector<Vec> hull_ccw(std::vector<Vec> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    std::vector<Vec> uniq;
    for (const auto& p : pts) {
        bool dup = false;
        for (const auto& q : uniq)
            if (same_point(p, q)) { dup = true; break; }
        if (!dup) uniq.push_back(p);
    }
    if (uniq.size() <= 2) return uniq;

    std::vector<Vec> h(2 * uniq.size());
    std::size_t k = 0;
    for (const auto& p : uniq) {
        while (k >= 2 && !turns_left(h[k - 2], h[k - 1], p)) --k;
        h[k++] = p;
    }
    const std::size_t lower_end = k + 1;
    for (auto it = uniq.rbegin() + 1; it != uniq.rend(); ++it) {
        while (k >= lower_end && !turns_left(h[k - 2], h[k - 1], *it)) --k;
        h[k++] = *it;
    }
    h.resize(k - 1);
    if (h.size() == 2 && same_point(h[0], h[1])) h.resize(1);
    return h;
}

std::vector<Halfspace> halfspaces_of(const std::vector<Vec>& v) {
    std::vector<Halfspace> hs;
    if (v.empty()) return hs;
    if (v.size() == 1) {
        hs.emplace_back(Vec{1.0, 0.0}, v[0][0]);
        hs.emplace_back(Vec{-1.0, 0.0}, -v[0][0]);
        hs.emplace_back(Vec{0.0, 1.0}, v[0][1]);
        hs.emplace_back(Vec{0.0, -1.0}, -v[0][1]);
        return hs;
    }
    if (v.size() == 2) {
        const double dx = v[1][0] - v[0][0], dy = v[1][1] - v[0][1];
        const double len = std::hypot(dx, dy);
        const Vec d{dx / len, dy / len};
        const Vec n{d[1], -d[0]};
        hs.emplace_back(n, n[0] * v[0][0] + n[1] * v[0][1]);
        hs.emplace_back(Vec{-n[0], -n[1]}, -(n[0] * v[0][0] + n[1] * v[0][1]));
        hs.emplace_back(d, d[0] * v[1][0] + d[1] * v[1][1]);
        hs.emplace_back(Vec{-d[0], -d[1]}, -(d[0] * v[0][0] + d[1] * v[0][1]));
        return hs;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec& a = v[i];
        const Vec& b = v[(i + 1) % v.size()];
        // CCW cycle: the outward normal points right of the edge direction.
        hs.emplace_back(Vec{b[1] - a[1], a[0] - b[0]}, 0.0);
        Halfspace& h = hs.back();
        h.offset = h.normal[0] * a[0] + h.normal[1] * a[1];
    }
    return hs;
}

}  // namespace

Halfspace::Halfspace(Vec n, double c) : normal(std::move(n)), offset(c) {
    double len = 0.0;
    for (std::size_t i = 0; i < normal.size(); ++i) len += normal[i] * normal[i];
    len = std::sqrt(len);
    if (!(len > 0.0) || !std::isfinite(len))
        throw std::invalid_argument("Halfspace: zero or non-finite normal");
    for (std::size_t i = 0; i < normal.size(); ++i) normal[i] /= len;
    offset /= len;
}

double Halfspace::eval(const Vec& x) const {
    if (x.size() != normal.size()) throw std::invalid_argument("Halfspace: dimension mismatch");
    double s = -offset;
    for (std::size_t i = 0; i < normal.size(); ++i) s += normal[i] * x[i];
    return s;
}

Box::Box(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size()) throw std::invalid_argument("Box: dimension mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!(lower[i] <= upper[i])) throw std::invalid_argument("Box: lower > upper");
}

bool Box::contains(const Vec& x) const {
    if (x.size() != lower.size()) throw std::invalid_argument("Box: dimension mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    return true;
}

double Box::max_inf_norm() const {
    double m = 0.0;
    for (std::size_t i = 0; i < lower.size(); ++i)
        m = std::max(m, std::max(std::abs(lower[i]), std::abs(upper[i])));
    return m;
}

Polytope Polytope::hull_of(const std::vector<Vec>& points) {
    require_planar(points);
    Polytope p;
    p.verts_ = hull_ccw(points);
    p.hs_ = halfspaces_of(p.verts_);
    return p;
}

bool Polytope::contains(const Vec& x, SetMode mode) const {
    if (is_empty()) return mode == SetMode::Complement;
    switch (mode) {
        case SetMode::Closed:
            for (const auto& h : hs_)
                if (h.eval(x) > 0.0) return false;
            return true;
        case SetMode::Interior:
            for (const auto& h : hs_)
                if (h.eval(x) >= 0.0) return false;
            return true;
        case SetMode::Complement:
            for (const auto& h : hs_)
                if (h.eval(x) > 0.0) return true;
            return false;
    }
    return false;
}

Vec Polytope::centroid() const {
    if (is_empty()) throw std::invalid_argument("centroid: empty polytope");
    Vec c(2);
    for (const auto& v : verts_) c += v;
    c *= 1.0 / static_cast<double>(verts_.size());
    return c;
}

Polytope linf_ball(const Vec& center, double r) {
    if (center.size() != 2) throw std::invalid_argument("linf_ball: kernel is 2-dimensional");
    if (!(r >= 0.0)) throw std::invalid_argument("linf_ball: negative radius");
    return Polytope::hull_of({Vec{center[0] - r, center[1] - r}, Vec{center[0] + r, center[1] - r},
                              Vec{center[0] + r, center[1] + r}, Vec{center[0] - r, center[1] + r}});
}

Polytope convex_hull(const std::vector<Vec>& points) { return Polytope::hull_of(points); }

Polytope gamma_neighborhood(const Polytope& p, double gamma) {
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma_neighborhood: negative radius");
    if (p.is_empty()) return Polytope::empty();
    if (gamma == 0.0) return p;
    std::vector<Vec> pts;
    pts.reserve(4 * p.vertices().size());
    for (const auto& v : p.vertices()) {
        pts.push_back(Vec{v[0] - gamma, v[1] - gamma});
        pts.push_back(Vec{v[0] + gamma, v[1] - gamma});
        pts.push_back(Vec{v[0] + gamma, v[1] + gamma});
        pts.push_back(Vec{v[0] - gamma, v[1] + gamma});
    }
    return Polytope::hull_of(pts);
}

Polytope intersect_halfspace(const Polytope& p, const Halfspace& h) {
    if (p.is_empty()) return Polytope::empty();
    const auto& v = p.vertices();
    std::vector<Vec> out;
    if (v.size() == 1) {
        if (h.eval(v[0]) <= 0.0) return p;
        return Polytope::empty();
    }
    if (v.size() == 2) {
        const double da = h.eval(v[0]), db = h.eval(v[1]);
        if (da <= 0.0) out.push_back(v[0]);
        if (db <= 0.0) out.push_back(v[1]);
        if ((da > 0.0) != (db > 0.0) && da != db) {
            const double t = da / (da - db);
            out.push_back(Vec{v[0][0] + t * (v[1][0] - v[0][0]), v[0][1] + t * (v[1][1] - v[0][1])});
        }
        if (out.empty()) return Polytope::empty();
        return Polytope::hull_of(out);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec& a = v[i];
        const Vec& b = v[(i + 1) % v.size()];
        const double da = h.eval(a), db = h.eval(b);
        if (da <= 0.0) out.push_back(a);
        if ((da > 0.0) != (db > 0.0)) {
            const double t = da / (da - db);
            out.push_back(Vec{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
        }
    }
    if (out.empty()) return Polytope::empty();
    return Polytope::hull_of(out);
}

Polytope intersect_hyperplane(const Polytope& p, const Halfspace& h) {
    Polytope once = intersect_halfspace(p, h);
    if (once.is_empty()) return once;
    Vec flipped(h.normal.size());
    for (std::size_t i = 0; i < h.normal.size(); ++i) flipped[i] = -h.normal[i];
    return intersect_halfspace(once, Halfspace(flipped, -h.offset));
}

Polytope intersect(const Polytope& p, const Polytope& q) {
    if (p.is_empty() || q.is_empty()) return Polytope::empty();
    Polytope r = p;
    for (const auto& h : q.halfspaces()) {
        r = intersect_halfspace(r, h);
        if (r.is_empty()) break;
    }
    return r;
}

bool contains(const Polytope& p, const Vec& x, SetMode mode) { return p.contains(x, mode); }

bool subset_of(const Polytope& p, const Polytope& q, SetMode mode) {
    if (mode == SetMode::Complement) throw std::invalid_argument("subset_of: closed or interior only");
    if (p.is_empty()) return true;
    if (q.is_empty()) return false;
    for (const auto& v : p.vertices())
        if (!q.contains(v, mode)) return false;
    return true;
}

double diameter(const Polytope& p) {
    if (p.is_empty()) throw std::invalid_argument("diameter: empty polytope");
    const auto& v = p.vertices();
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) d = std::max(d, linf(v[i], v[j]));
    return d;
}

namespace {

// min over t in [0,1] of |p - (a + t(b-a))|_inf. The objective is a max of
// two absolute affine functions of t, so the minimum sits at an interval
// endpoint or a kink; all kinks are enumerated below.
double point_segment_linf(const Vec& p, const Vec& a, const Vec& b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double rx = p[0] - a[0], ry = p[1] - a[1];
    auto value = [&](double t) { return std::max(std::abs(rx - t * dx), std::abs(ry - t * dy)); };
    double best = std::min(value(0.0), value(1.0));
    auto consider = [&](double t) {
        if (t > 0.0 && t < 1.0) best = std::min(best, value(t));
    };
    if (dx != 0.0) consider(rx / dx);
    if (dy != 0.0) consider(ry / dy);
    if (dx != dy) consider((rx - ry) / (dx - dy));
    if (dx != -dy) consider((rx + ry) / (dx + dy));
    return best;
}

}  // namespace

double distance_to(const Polytope& p, const Vec& x) {
    if (p.is_empty()) throw std::invalid_argument("distance_to: empty polytope");
    if (p.contains(x, SetMode::Closed)) return 0.0;
    const auto& v = p.vertices();
    if (v.size() == 1) return linf(x, v[0]);
    double best = point_segment_linf(x, v[0], v[1 % v.size()]);
    for (std::size_t i = 1; i < v.size(); ++i)
        best = std::min(best, point_segment_linf(x, v[i], v[(i + 1) % v.size()]));
    return best;
}

double hausdorff(const Polytope& p, const Polytope& q) {
    if (p.is_empty() || q.is_empty()) throw std::invalid_argument("hausdorff: empty polytope");
    double d = 0.0;
    for (const auto& v : p.vertices()) d = std::max(d, distance_to(q, v));
    for (const auto& v : q.vertices()) d = std::max(d, distance_to(p, v));
    return d;
}

double area(const Polytope& p) {
    const auto& v = p.vertices();
    if (v.size() < 3) return 0.0;
    // Shoelace anchored at the first vertex: keeps tiny polygons far from
    // the origin from losing their area to cancellation.
    const double ox = v[0][0], oy = v[0][1];
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double ax = v[i][0] - ox, ay = v[i][1] - oy;
        const double bx = v[i + 1][0] - ox, by = v[i + 1][1] - oy;
        s += ax * by - bx * ay;
    }
    return std::abs(s) * 0.5;
}

Polytope box_polytope(const Box& b) {
    if (b.dim() != 2) throw std::invalid_argument("box_polytope: kernel is 2-dimensional");
    return Polytope::hull_of({Vec{b.lower[0], b.lower[1]}, Vec{b.upper[0], b.lower[1]},
                              Vec{b.upper[0], b.upper[1]}, Vec{b.lower[0], b.upper[1]}});
}

}  // namespace reach
