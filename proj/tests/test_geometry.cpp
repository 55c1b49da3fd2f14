#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "reach/geometry.hpp"
#include "support/test_oracles.hpp"

using namespace reach;
using namespace reach::testing;

namespace {

Polytope unit_square() {
    return Polytope::hull_of({Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}});
}

Polytope random_polytope(std::mt19937& rng, int max_pts = 10) {
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::uniform_int_distribution<int> count(3, max_pts);
    std::vector<Vec> pts;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) pts.push_back(Vec{coord(rng), coord(rng)});
    return Polytope::hull_of(pts);
}

}  // namespace

TEST_CASE("linf_ball builds squares and degenerate points") {
    const Polytope b = linf_ball(Vec{0, 0}, 1.0);
    CHECK(b.vertices().size() == 4);
    CHECK(same_point_set(b.vertices(), {Vec{-1, -1}, Vec{1, -1}, Vec{1, 1}, Vec{-1, 1}}, 0.0));

    const Polytope small = linf_ball(Vec{2.5, 6.0}, 1e-5);
    CHECK(diameter(small) == doctest::Approx(2e-5).epsilon(1e-12));
    CHECK(area(small) == doctest::Approx(4e-10).epsilon(1e-9));

    const Polytope pt = linf_ball(Vec{3, 4}, 0.0);
    CHECK(pt.vertices().size() == 1);
    CHECK(diameter(pt) == 0.0);

    CHECK_THROWS_AS(linf_ball(Vec{0, 0}, -1.0), std::invalid_argument);
}

TEST_CASE("convex_hull drops interior points and collapses collinear input") {
    const Polytope sq =
        convex_hull({Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}, Vec{0.5, 0.5}});
    CHECK(sq.vertices().size() == 4);
    CHECK(same_point_set(sq.vertices(), {Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}}, 0.0));

    const Polytope seg = convex_hull({Vec{0, 0}, Vec{1, 0}, Vec{2, 0}});
    CHECK(seg.vertices().size() == 2);
    CHECK(same_point_set(seg.vertices(), {Vec{0, 0}, Vec{2, 0}}, 0.0));

    CHECK_THROWS_AS(convex_hull({}), std::invalid_argument);
}

TEST_CASE("convex_hull matches the brute-force extreme-point oracle") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<Vec> pts;
    while (pts.size() < 100) {
        const double x = unit(rng), y = unit(rng);
        if (x * x + y * y <= 1.0) pts.push_back(Vec{x, y});
    }
    const Polytope hull = convex_hull(pts);
    const std::vector<Vec> want = hull_vertices_oracle(pts);
    CHECK(same_point_set(hull.vertices(), want, 1e-9));
}

TEST_CASE("convex_hull is idempotent") {
    std::mt19937 rng(29);
    for (int it = 0; it < 50; ++it) {
        const Polytope p = random_polytope(rng);
        const Polytope q = convex_hull(p.vertices());
        REQUIRE(q.vertices().size() == p.vertices().size());
        for (std::size_t i = 0; i < p.vertices().size(); ++i) {
            CHECK(q.vertices()[i][0] == p.vertices()[i][0]);
            CHECK(q.vertices()[i][1] == p.vertices()[i][1]);
        }
    }
}

TEST_CASE("gamma_neighborhood grows squares exactly") {
    const Polytope grown = gamma_neighborhood(unit_square(), 0.5);
    CHECK(same_point_set(grown.vertices(),
                         {Vec{-0.5, -0.5}, Vec{1.5, -0.5}, Vec{1.5, 1.5}, Vec{-0.5, 1.5}}, 0.0));

    const Polytope same = gamma_neighborhood(unit_square(), 0.0);
    CHECK(same.vertices().size() == 4);

    CHECK_THROWS_AS(gamma_neighborhood(unit_square(), -0.1), std::invalid_argument);
}

TEST_CASE("gamma_neighborhood is the closed neighborhood: Hausdorff distance is gamma") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> g(0.01, 2.0);
    for (int it = 0; it < 100; ++it) {
        const Polytope p = random_polytope(rng);
        const double gamma = g(rng);
        const Polytope q = gamma_neighborhood(p, gamma);
        CHECK(subset_of(p, q, SetMode::Closed));
        CHECK(hausdorff(p, q) == doctest::Approx(gamma).epsilon(1e-10));
    }
}

TEST_CASE("gamma_neighborhood sampled distance check on a triangle") {
    std::mt19937 rng(37);
    const Polytope tri = Polytope::hull_of({Vec{0, 0}, Vec{1.2, 0.3}, Vec{0.4, 1.1}});
    const Polytope grown = gamma_neighborhood(tri, 0.3);
    std::uniform_real_distribution<double> coord(-1.0, 2.0);
    int hits = 0;
    for (int it = 0; it < 1000; ++it) {
        const Vec x{coord(rng), coord(rng)};
        const bool in_grown = grown.contains(x, SetMode::Closed);
        const double d = distance_to(tri, x);
        if (d <= 0.3 - 1e-12) CHECK(in_grown);
        if (d > 0.3 + 1e-12) CHECK(!in_grown);
        hits += in_grown;
    }
    CHECK(hits > 0);
}

TEST_CASE("gamma_neighborhood composes additively") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> g(0.05, 1.0);
    for (int it = 0; it < 60; ++it) {
        const Polytope p = random_polytope(rng);
        const double a = g(rng), b = g(rng);
        const Polytope two = gamma_neighborhood(gamma_neighborhood(p, a), b);
        const Polytope one = gamma_neighborhood(p, a + b);
        CHECK(hausdorff(two, one) < 1e-10);
    }
}

TEST_CASE("diameter grows by exactly twice the neighborhood radius") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> g(0.05, 1.5);
    for (int it = 0; it < 60; ++it) {
        const Polytope p = random_polytope(rng);
        const double gamma = g(rng);
        CHECK(diameter(gamma_neighborhood(p, gamma)) ==
              doctest::Approx(diameter(p) + 2.0 * gamma).epsilon(1e-12));
    }
}

TEST_CASE("intersect_halfspace axis cut and disjoint cases") {
    const Halfspace cut(Vec{1, 0}, 0.5);
    const Polytope clipped = intersect_halfspace(unit_square(), cut);
    CHECK(same_point_set(clipped.vertices(),
                         {Vec{0, 0}, Vec{0.5, 0}, Vec{0.5, 1}, Vec{0, 1}}, 1e-15));

    const Polytope gone = intersect_halfspace(unit_square(), Halfspace(Vec{1, 0}, -1.0));
    CHECK(gone.is_empty());
}

TEST_CASE("intersect_halfspace matches the edge-walk oracle") {
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> coord(-2.0, 2.0), off(-1.5, 1.5);
    for (int it = 0; it < 300; ++it) {
        const Polytope p = random_polytope(rng);
        const Halfspace h(Vec{coord(rng), coord(rng) + 1e-3}, off(rng));
        const Polytope got = intersect_halfspace(p, h);
        const std::vector<Vec> want_raw = clip_oracle(p.vertices(), h);
        if (want_raw.empty()) {
            CHECK(got.is_empty());
            continue;
        }
        const Polytope want = Polytope::hull_of(want_raw);
        REQUIRE(!got.is_empty());
        CHECK(same_point_set(got.vertices(), want.vertices(), 1e-12));
    }
}

TEST_CASE("intersect_halfspace result is a subset of both operands") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> coord(-2.0, 2.0), off(-1.0, 1.0);
    for (int it = 0; it < 100; ++it) {
        const Polytope p = random_polytope(rng);
        const Halfspace h(Vec{coord(rng), coord(rng) + 1e-3}, off(rng));
        const Polytope q = intersect_halfspace(p, h);
        if (q.is_empty()) continue;
        CHECK(subset_of(q, p, SetMode::Closed));
        for (const auto& v : q.vertices()) CHECK(h.eval(v) <= 1e-9);
    }
}

TEST_CASE("intersect_hyperplane yields the degenerate cut") {
    const Polytope seg = intersect_hyperplane(unit_square(), Halfspace(Vec{1, 0}, 0.5));
    REQUIRE(seg.vertices().size() == 2);
    CHECK(same_point_set(seg.vertices(), {Vec{0.5, 0}, Vec{0.5, 1}}, 1e-12));
    CHECK(area(seg) == 0.0);
}

TEST_CASE("contains distinguishes closed, interior and complement") {
    const Polytope sq = unit_square();
    CHECK(sq.contains(Vec{0.5, 0.5}, SetMode::Interior));
    CHECK(!sq.contains(Vec{1.0, 0.5}, SetMode::Interior));
    CHECK(sq.contains(Vec{1.0, 0.5}, SetMode::Closed));
    CHECK(sq.contains(Vec{2.0, 0.0}, SetMode::Complement));
    CHECK(!sq.contains(Vec{0.5, 0.5}, SetMode::Complement));
}

TEST_CASE("subset_of closed and interior modes") {
    const Polytope outer = unit_square();
    const Polytope inner =
        Polytope::hull_of({Vec{0.2, 0.2}, Vec{0.8, 0.2}, Vec{0.8, 0.8}, Vec{0.2, 0.8}});
    CHECK(subset_of(inner, outer, SetMode::Interior));
    CHECK(subset_of(outer, outer, SetMode::Closed));
    CHECK(!subset_of(outer, outer, SetMode::Interior));
}

TEST_CASE("subset_of agrees with a sampling check") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int it = 0; it < 40; ++it) {
        const Polytope p = random_polytope(rng, 6);
        const Polytope q = random_polytope(rng, 6);
        const bool sub = subset_of(p, q, SetMode::Closed);
        if (sub) continue;  // sampling can only refute
        // not a subset: find a witness among p's vertices
        bool witness = false;
        for (const auto& v : p.vertices()) witness = witness || !q.contains(v, SetMode::Closed);
        CHECK(witness);
    }
    // rejection-sampling agreement on a known pair
    const Polytope inner = Polytope::hull_of({Vec{-0.5, -0.5}, Vec{0.5, -0.5}, Vec{0, 0.6}});
    const Polytope outer = gamma_neighborhood(inner, 0.2);
    CHECK(subset_of(inner, outer, SetMode::Interior));
    for (int it = 0; it < 10000; ++it) {
        const Vec x{coord(rng), coord(rng)};
        if (inner.contains(x, SetMode::Closed)) CHECK(outer.contains(x, SetMode::Closed));
    }
}

TEST_CASE("diameter of squares, points, rotated squares") {
    CHECK(diameter(unit_square()) == doctest::Approx(1.0));
    CHECK(diameter(linf_ball(Vec{1, 2}, 0.0)) == 0.0);

    // Square of side s rotated 45 degrees: per-axis extent s*sqrt(2).
    const double s = 0.7;
    const double r = s / std::sqrt(2.0);
    const Polytope rot = Polytope::hull_of({Vec{r, 0}, Vec{0, r}, Vec{-r, 0}, Vec{0, -r}});
    double brute = 0.0;
    for (const auto& a : rot.vertices())
        for (const auto& b : rot.vertices())
            brute = std::max(brute, std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])));
    CHECK(diameter(rot) == doctest::Approx(s * std::sqrt(2.0)).epsilon(1e-12));
    CHECK(diameter(rot) == doctest::Approx(brute));

    CHECK_THROWS_AS(diameter(Polytope::empty()), std::invalid_argument);
}

TEST_CASE("hausdorff trivial cases") {
    const Polytope sq = unit_square();
    CHECK(hausdorff(sq, sq) == 0.0);

    const Polytope moved =
        Polytope::hull_of({Vec{1, 0}, Vec{2, 0}, Vec{2, 1}, Vec{1, 1}});
    CHECK(hausdorff(sq, moved) == doctest::Approx(1.0).epsilon(1e-12));

    const Polytope grown = gamma_neighborhood(sq, 0.25);
    CHECK(hausdorff(sq, grown) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("area of squares, segments, triangles") {
    CHECK(area(unit_square()) == doctest::Approx(1.0));
    CHECK(area(convex_hull({Vec{0, 0}, Vec{2, 0}})) == 0.0);

    const Vec a{0.3, -0.2}, b{1.4, 0.4}, c{0.1, 1.2};
    const double want =
        0.5 * std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
    CHECK(area(Polytope::hull_of({a, b, c})) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("area survives tiny polygons far from the origin") {
    // A 1e-11-wide sliver anchored at (3, 3): the anchored shoelace keeps
    // its area meaningful.
    const double w = 1e-11;
    const Polytope sliver =
        Polytope::hull_of({Vec{3, 3}, Vec{3.004, 3.004}, Vec{3.004 - w, 3.004 + w}, Vec{3 - w, 3 + w}});
    CHECK(area(sliver) == doctest::Approx(0.004 * std::sqrt(2.0) * w * std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("halfspace constructor normalizes and validates") {
    const Halfspace h(Vec{3, 4}, 10.0);
    CHECK(std::hypot(h.normal[0], h.normal[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(h.offset == doctest::Approx(2.0));
    CHECK_THROWS_AS(Halfspace(Vec{0, 0}, 1.0), std::invalid_argument);
}

TEST_CASE("box membership and norms") {
    const Box b(Vec{-1, -2}, Vec{3, 4});
    CHECK(b.contains(Vec{0, 0}));
    CHECK(!b.contains(Vec{3.1, 0}));
    CHECK(b.max_inf_norm() == doctest::Approx(4.0));
    CHECK_THROWS_AS(Box(Vec{1, 0}, Vec{0, 1}), std::invalid_argument);
}
