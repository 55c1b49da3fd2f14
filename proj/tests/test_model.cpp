#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "reach/model.hpp"
#include "support/test_models.hpp"

using namespace reach;
using namespace reach::testing;

namespace {

bool has_code(const ValidationReport& rep, const std::string& code) {
    for (const auto& v : rep.violations)
        if (v.code == code) return true;
    return false;
}

}  // namespace

TEST_CASE("the shipped quadrant model validates cleanly") {
    const ValidationReport rep = validate(make_quadrants());
    CHECK(rep.valid());
}

TEST_CASE("overlapping cells are reported") {
    std::vector<Cell> cells = {
        {"a", Polytope::hull_of({Vec{-1, -1}, Vec{0.5, -1}, Vec{0.5, 1}, Vec{-1, 1}})},
        {"b", Polytope::hull_of({Vec{0, -1}, Vec{1, -1}, Vec{1, 1}, Vec{0, 1}})},
    };
    std::vector<Location> locs = {
        {"l", Mat(2), Vec{1, 0}, {0}},
        {"r", Mat(2), Vec{1, 0}, {1}},
    };
    const auto rep = validate(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells, locs));
    CHECK(!rep.valid());
    CHECK(has_code(rep, "cells_overlap"));
    CHECK(has_code(rep, "coverage"));
}

TEST_CASE("coverage gaps are reported") {
    std::vector<Cell> cells = {
        {"half", Polytope::hull_of({Vec{-1, -1}, Vec{0, -1}, Vec{0, 1}, Vec{-1, 1}})}};
    std::vector<Location> locs = {{"l", Mat(2), Vec{1, 0}, {0}}};
    const auto rep = validate(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells, locs));
    CHECK(!rep.valid());
    CHECK(has_code(rep, "coverage"));
}

TEST_CASE("unassigned and doubly assigned cells are reported") {
    std::vector<Cell> cells = {
        {"lhs", Polytope::hull_of({Vec{-1, -1}, Vec{0, -1}, Vec{0, 1}, Vec{-1, 1}})},
        {"rhs", Polytope::hull_of({Vec{0, -1}, Vec{1, -1}, Vec{1, 1}, Vec{0, 1}})},
    };
    std::vector<Location> locs = {{"both", Mat(2), Vec{1, 0}, {0, 0}}};
    // "lhs" listed twice, "rhs" never.
    const auto rep = validate(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells, locs));
    CHECK(has_code(rep, "cell_unassigned"));
    CHECK(has_code(rep, "cell_shared"));
}

TEST_CASE("disconnected invariants are reported") {
    std::vector<Cell> cells = {
        {"a", Polytope::hull_of({Vec{-1, -1}, Vec{-0.5, -1}, Vec{-0.5, 1}, Vec{-1, 1}})},
        {"mid", Polytope::hull_of({Vec{-0.5, -1}, Vec{0.5, -1}, Vec{0.5, 1}, Vec{-0.5, 1}})},
        {"b", Polytope::hull_of({Vec{0.5, -1}, Vec{1, -1}, Vec{1, 1}, Vec{0.5, 1}})},
    };
    std::vector<Location> locs = {
        {"split", Mat(2), Vec{1, 0}, {0, 2}},
        {"middle", Mat(2), Vec{1, 0}, {1}},
    };
    const auto rep = validate(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells, locs));
    CHECK(has_code(rep, "invariant_disconnected"));
}

TEST_CASE("multi-cell connected invariants validate") {
    std::vector<Cell> cells = {
        {"a", Polytope::hull_of({Vec{-1, -1}, Vec{0, -1}, Vec{0, 1}, Vec{-1, 1}})},
        {"b", Polytope::hull_of({Vec{0, -1}, Vec{1, -1}, Vec{1, 1}, Vec{0, 1}})},
    };
    std::vector<Location> locs = {{"whole", Mat(2), Vec{1, 0}, {0, 1}}};
    const auto rep = validate(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells, locs));
    CHECK(rep.valid());
}

TEST_CASE("locate returns every closed invariant containing the point") {
    const LhaModel quad = make_quadrants();
    const auto up = quad.location_index("up");
    REQUIRE(up.has_value());

    const auto interior = locate(quad, Vec{0, 4});
    REQUIRE(interior.size() == 1);
    CHECK(interior.front() == *up);

    // Shared facet: both adjacent invariants report it.
    const auto facet = locate(quad, Vec{-2, 2});
    CHECK(facet.size() == 2);

    // The central corner belongs to all four invariants.
    const auto corner = locate(quad, Vec{0, 0});
    CHECK(corner.size() == 4);

    CHECK_THROWS_AS(locate(quad, Vec{9, 0}), std::domain_error);
}

TEST_CASE("locate statistics on random points") {
    const LhaModel quad = make_quadrants();
    std::mt19937 rng(61);
    std::uniform_real_distribution<double> coord(-8.0, 8.0);
    for (int it = 0; it < 10000; ++it) {
        const Vec x{coord(rng), coord(rng)};
        const auto locs = locate(quad, x);
        CHECK(locs.size() >= 1);
        const bool near_boundary = std::abs(x[0] - x[1]) < 1e-9 || std::abs(x[0] + x[1]) < 1e-9;
        if (!near_boundary) CHECK(locs.size() == 1);
    }
}

TEST_CASE("shared_facet orientation on axis-aligned neighbors") {
    const LhaModel m = make_two_cell_drift();
    const auto west = *m.location_index("west");
    const auto east = *m.location_index("east");
    const Halfspace we = shared_facet(m, west, east);
    CHECK(we.normal[0] == doctest::Approx(1.0));
    CHECK(we.normal[1] == doctest::Approx(0.0));
    const Halfspace ew = shared_facet(m, east, west);
    CHECK(ew.normal[0] == -we.normal[0]);
    CHECK(ew.normal[1] == -we.normal[1]);
    CHECK_THROWS_AS(shared_facet(m, west, west), std::invalid_argument);
}

TEST_CASE("shared_facet on a diagonal boundary") {
    std::vector<Cell> cells = {
        {"below", Polytope::hull_of({Vec{0, 0}, Vec{1, 0}, Vec{1, 1}})},
        {"above", Polytope::hull_of({Vec{0, 0}, Vec{1, 1}, Vec{0, 1}})},
    };
    std::vector<Location> locs = {
        {"lo", Mat(2), Vec{0, 1}, {0}},
        {"hi", Mat(2), Vec{0, 1}, {1}},
    };
    const LhaModel m = LhaModel::make(Box(Vec{0, 0}, Vec{1, 1}), cells, locs);
    const Halfspace h = shared_facet(m, 0, 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h.normal[0]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(std::abs(h.normal[1]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    // Outward from the lower triangle means pointing up-left.
    CHECK(h.normal[0] * 1.0 + h.normal[1] * 0.0 < 0.0);
    CHECK(h.normal[1] > 0.0);
}

TEST_CASE("shared_facet antisymmetry on the quadrant model") {
    const LhaModel quad = make_quadrants();
    for (std::size_t a = 0; a < quad.locations().size(); ++a)
        for (std::size_t b = 0; b < quad.locations().size(); ++b) {
            if (a == b) continue;
            const auto segs = shared_facets(quad, a, b);
            if (segs.empty()) continue;
            const Halfspace ab = shared_facet(quad, a, b);
            const Halfspace ba = shared_facet(quad, b, a);
            CHECK(ab.normal[0] == -ba.normal[0]);
            CHECK(ab.normal[1] == -ba.normal[1]);
        }
}

TEST_CASE("classification against an invariant") {
    const LhaModel m = make_two_cell_drift();
    const auto west = *m.location_index("west");
    CHECK(classify_against_invariant(m, west, linf_ball(Vec{-0.5, 0}, 0.1)) ==
          InvariantRelation::Inside);
    CHECK(classify_against_invariant(m, west, linf_ball(Vec{0.5, 0}, 0.1)) ==
          InvariantRelation::Outside);
    CHECK(classify_against_invariant(m, west, linf_ball(Vec{0, 0}, 0.1)) ==
          InvariantRelation::Straddle);
    // Touching the facet from inside is not strictly interior.
    CHECK(classify_against_invariant(m, west, linf_ball(Vec{-0.1, 0}, 0.1)) ==
          InvariantRelation::Straddle);
}

TEST_CASE("classification spans multiple cells of one location") {
    std::vector<Cell> cells = {
        {"a", Polytope::hull_of({Vec{-1, -1}, Vec{0, -1}, Vec{0, 1}, Vec{-1, 1}})},
        {"b", Polytope::hull_of({Vec{0, -1}, Vec{1, -1}, Vec{1, 1}, Vec{0, 1}})},
    };
    std::vector<Location> locs = {{"whole", Mat(2), Vec{1, 0}, {0, 1}}};
    const LhaModel m = LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells, locs);
    // Straddles the internal cell joint but stays interior to the union.
    CHECK(classify_against_invariant(m, 0, linf_ball(Vec{0, 0}, 0.2)) ==
          InvariantRelation::Inside);
    CHECK(invariant_union_contains(m, {0}, linf_ball(Vec{0, 0}, 0.2)));
    CHECK(!invariant_union_contains(m, {0}, linf_ball(Vec{0.95, 0}, 0.2)));
}

TEST_CASE("structural errors throw at construction") {
    std::vector<Cell> cells = {
        {"all", Polytope::hull_of({Vec{-1, -1}, Vec{1, -1}, Vec{1, 1}, Vec{-1, 1}})}};
    CHECK_THROWS_AS(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells,
                                   {{"l", Mat(2), Vec{1, 0}, {5}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), cells,
                                   {{"l", Mat(3), Vec{1, 0, 0}, {0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(LhaModel::make(Box(Vec{-1, -1}, Vec{1, 1}), {}, {}), std::invalid_argument);
}
