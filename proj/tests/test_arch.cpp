#include "doctest.h"

#include <set>

#include "oracles.hpp"
#include "sqbench/arch.hpp"
#include "sqbench/rng.hpp"

using namespace sqbench;

TEST_CASE("standard variant edge counts") {
    // CG1 needs a third rung besides the end columns: on a bare ring the
    // cyclic order of qubits is frozen and degree-3 interaction patterns
    // could never be routed.
    CHECK(build_cg(CgVariant::CG1, 4).num_edges() == 9);
    CHECK(build_cg(CgVariant::CG2, 4).num_edges() == 10);
    CHECK(build_cg(CgVariant::CG3, 4).num_edges() == 16);
    CHECK(build_cg(CgVariant::CG1, 7).num_edges() == 15);
    CHECK(build_cg(CgVariant::CG2, 7).num_edges() == 19);
    CHECK(build_cg(CgVariant::CG3, 7).num_edges() == 31);
}

TEST_CASE("connectivity strictly increases across variants") {
    for (int cols = 4; cols <= 7; ++cols) {
        auto cg1 = build_cg(CgVariant::CG1, cols);
        auto cg2 = build_cg(CgVariant::CG2, cols);
        auto cg3 = build_cg(CgVariant::CG3, cols);
        CHECK(cg1.num_edges() < cg2.num_edges());
        CHECK(cg2.num_edges() < cg3.num_edges());
        CHECK(cg1.measurement_dot() == Dot{1, 0});
    }
}

TEST_CASE("average degree") {
    CHECK(build_cg(CgVariant::CG2, 4).average_degree() == doctest::Approx(2.5));
    CHECK(build_cg(CgVariant::CG3, 4).average_degree() == doctest::Approx(4.0));
    CHECK(build_cg(CgVariant::CG1, 4).average_degree() == doctest::Approx(2.25));
}

TEST_CASE("edges are symmetric and inside the grid") {
    for (auto v : {CgVariant::CG1, CgVariant::CG2, CgVariant::CG3})
        for (int cols = 4; cols <= 7; ++cols) {
            auto cg = build_cg(v, cols);
            for (Dot d : cg.grid().all_dots())
                for (Dot n : cg.neighbors(d)) {
                    CHECK(cg.grid().contains(n));
                    CHECK(cg.adjacent(n, d));
                }
        }
}

TEST_CASE("custom graphs") {
    // Minimal connected custom graph over a 2x4 grid: a single path.
    std::vector<std::pair<Dot, Dot>> path_edges;
    for (int c = 0; c + 1 < 4; ++c) {
        path_edges.push_back({{0, c}, {0, c + 1}});
        path_edges.push_back({{1, c}, {1, c + 1}});
    }
    path_edges.push_back({{0, 3}, {1, 3}});
    auto cg = build_custom_cg(4, path_edges);
    CHECK(cg.num_edges() == 7);
    CHECK(cg.variant() == CgVariant::Custom);

    SUBCASE("disconnected edge sets are rejected") {
        std::vector<std::pair<Dot, Dot>> disconnected = {{{0, 0}, {0, 1}},
                                                         {{1, 2}, {1, 3}}};
        CHECK_THROWS_AS(build_custom_cg(4, disconnected), std::invalid_argument);
    }

    SUBCASE("json load") {
        auto loaded = load_cg_json(
            R"({"cols": 4, "edges": [[[0,0],[0,1]], [[0,1],[0,2]], [[0,2],[0,3]],
                 [[0,3],[1,3]], [[1,3],[1,2]], [[1,2],[1,1]], [[1,1],[1,0]],
                 [[1,0],[0,0]]]})");
        CHECK(loaded.num_edges() == 8);
        CHECK(loaded.average_degree() == doctest::Approx(2.0));
    }
}

TEST_CASE("shortest path basics") {
    auto cg = build_cg(CgVariant::CG2, 4);
    OccupancySet empty(cg.grid());

    auto straight = shortest_path(cg, empty, {0, 0}, {0, 3}, false);
    REQUIRE(straight);
    CHECK(straight->size() == 4);  // 3 hops along the row

    auto single = shortest_path(cg, empty, {0, 0}, {0, 1}, true);
    REQUIRE(single);
    CHECK(single->size() == 2);

    SUBCASE("occupied interior dots are avoided") {
        OccupancySet occ(cg.grid());
        occ.set({0, 1}, true);
        auto detour = shortest_path(cg, occ, {0, 0}, {0, 2}, true);
        REQUIRE(detour);
        CHECK(detour->size() == 5);  // down, across, across, up
        CHECK(detour->at(1) == Dot{1, 0});

        // unreachable when boxed in
        OccupancySet boxed(cg.grid());
        boxed.set({0, 1}, true);
        boxed.set({1, 0}, true);
        CHECK(!shortest_path(cg, boxed, {0, 0}, {0, 2}, true));
        CHECK(shortest_path(cg, boxed, {0, 0}, {0, 2}, false));
    }
}

TEST_CASE("shortest path matches the BFS oracle over random occupancies") {
    Rng rng(20240811);
    for (auto v : {CgVariant::CG1, CgVariant::CG2, CgVariant::CG3})
        for (int cols = 4; cols <= 7; ++cols) {
            auto cg = build_cg(v, cols);
            auto dots = cg.grid().all_dots();
            for (int rep = 0; rep < 60; ++rep) {
                OccupancySet occ(cg.grid());
                for (Dot d : dots)
                    if (rng.bernoulli(0.35)) occ.set(d, true);
                Dot from = dots[rng.uniform_int(dots.size())];
                Dot to = dots[rng.uniform_int(dots.size())];
                if (from == to) continue;
                bool avoid = rng.bernoulli(0.5);
                auto path = shortest_path(cg, occ, from, to, avoid);
                int expected = oracle::bfs_distance(cg, occ, from, to, avoid);
                if (expected < 0) {
                    CHECK(!path);
                } else {
                    REQUIRE(path);
                    CHECK(static_cast<int>(path->size()) - 1 == expected);
                    for (std::size_t i = 0; i + 1 < path->size(); ++i)
                        CHECK(cg.adjacent((*path)[i], (*path)[i + 1]));
                    if (avoid)
                        for (std::size_t i = 1; i + 1 < path->size(); ++i)
                            CHECK(!occ.occupied((*path)[i]));
                }
            }
        }
}

TEST_CASE("shortest path is deterministic") {
    auto cg = build_cg(CgVariant::CG3, 5);
    OccupancySet occ(cg.grid());
    occ.set({0, 2}, true);
    auto a = shortest_path(cg, occ, {0, 0}, {1, 4}, true);
    auto b = shortest_path(cg, occ, {0, 0}, {1, 4}, true);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(*a == *b);
}

TEST_CASE("grid bounds") {
    CHECK_THROWS_AS(build_cg(CgVariant::CG2, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_cg(CgVariant::CG2, 8), std::invalid_argument);
    CHECK(build_cg(CgVariant::CG2, 4).num_dots() == 8);
    CHECK(build_cg(CgVariant::CG2, 7).num_dots() == 14);
}
