#include <doctest.h>

#include "curvgraph/generators.hpp"
#include "curvgraph/sweep.hpp"
#include "test_support.hpp"

using namespace curvgraph;

TEST_CASE("ordered pairs: both orientations, within R") {
    const auto c = cycle_graph(6);
    const auto p = ordered_pairs(c, 2);
    CHECK(p.size() == 24);
    for (const auto& [x, y] : p) {
        CHECK(c.distance(x, y) >= 1);
        CHECK(c.distance(x, y) <= 2);
    }
    CHECK(p == curvgraph::testing::pairs_within(c, 2));
    CHECK_THROWS_AS(ordered_pairs(c, 0), InputError);
}

TEST_CASE("parallel sweeps match the serial reference") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto g = gnp_graph(10, 0.4, seed);
        for (int radius = 1; radius <= 2; ++radius) {
            const auto a = sweep_linear(g, radius, 1);
            const auto b = sweep_linear(g, radius, 4);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].x == b[i].x);
                CHECK(a[i].y == b[i].y);
                CHECK(a[i].value == b[i].value);
                CHECK(a[i].witness == b[i].witness);
            }
            const auto da = sweep_defect(g, radius, 1);
            const auto db = sweep_defect(g, radius, 3);
            for (std::size_t i = 0; i < da.size(); ++i) {
                CHECK(da[i].defect == db[i].defect);
                CHECK(da[i].assignment == db[i].assignment);
            }
            CHECK(min_linear_curvature(g, radius, 1).value == min_linear_curvature(g, radius, 4).value);
        }
    }
}

TEST_CASE("exceptions propagate out of parallel sweeps") {
    const auto g = cycle_graph(5);
    const auto pairs = ordered_pairs(g, 1);
    auto fn = [](Vertex x, Vertex) -> int {
        if (x == 3) throw InputError("boom");
        return x;
    };
    CHECK_THROWS_AS(sweep_pairs(pairs, fn, 4), InputError);
    CHECK_THROWS_AS(sweep_pairs(pairs, fn, 1), InputError);
}
