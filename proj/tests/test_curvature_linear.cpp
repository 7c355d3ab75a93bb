#include <doctest.h>

#include <cmath>

#include "curvgraph/curvature_linear.hpp"
#include "curvgraph/json_io.hpp"
#include "test_support.hpp"

using namespace curvgraph;
using curvgraph::testing::pairs_within;
using curvgraph::testing::random_weighted;
using curvgraph::testing::ollivier_integer_oracle;
using curvgraph::testing::single_edge;

TEST_CASE("single edge") {
    const auto e = single_edge();
    const auto lin = k_linear(e, 0, 1, 1);
    CHECK(std::abs(lin.value - 2.0) < 1e-9);
    CHECK(lin.kind == BoundKind::exact);
    const auto ol = k_ollivier(e, 0, 1);
    CHECK(std::abs(ol.value - 2.0) < 1e-9);
    CHECK(k_linear_sampling_oracle(e, 0, 1, 1, 20, 3) == doctest::Approx(2.0));
}

TEST_CASE("cycle C6") {
    const auto c6 = cycle_graph(6);
    const auto lin = k_linear(c6, 0, 1, 1);
    CHECK(lin.value >= -1e-9);
    const auto ol = k_ollivier(c6, 0, 1);
    CHECK(ol.value == doctest::Approx(0.0));
    CHECK(ol.value == doctest::Approx(ollivier_integer_oracle(c6, 0, 1)));
}

TEST_CASE("star: -inf without a transport map, LP agrees") {
    const auto star = star_graph(3);
    const auto r = k_linear(star, 1, 0, 1, {.lp_crosscheck = true});
    CHECK(std::isinf(r.value));
    CHECK(r.value < 0);
    REQUIRE(r.transport.has_value());
    CHECK_FALSE(r.transport->map_exists());
    CHECK(r.witness.empty());

    const auto other = k_linear(star, 0, 1, 1);
    CHECK(std::isfinite(other.value));
    CHECK(other.value >= -1.0 - 1e-9);
}

TEST_CASE("input validation") {
    const auto c6 = cycle_graph(6);
    CHECK_THROWS_AS(k_linear(c6, 0, 3, 2), InputError);
    CHECK_THROWS_AS(k_linear(c6, 0, 0, 2), InputError);
    CHECK_THROWS_AS(k_ollivier(c6, 0, 2), InputError);
}

TEST_CASE("hex torus is non-negatively curved at R = 2") {
    const auto hex = hex_torus(6, 6);
    // Translation symmetry: vertex 0 and 1 represent both sublattices.
    for (Vertex x : {0, 1}) {
        for (Vertex y : hex.ball(x, 2)) {
            if (y == x) continue;
            CHECK(k_linear(hex, x, y, 2).value >= -1e-9);
        }
    }
}

TEST_CASE("witness reproduces the LP value through the graph operators") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto g = random_weighted(9, 0.45, seed);
        for (int radius = 1; radius <= 2; ++radius) {
            for (const auto& [x, y] : pairs_within(g, radius)) {
                const auto r = k_linear(g, x, y, radius);
                if (!std::isfinite(r.value)) continue;
                const auto eval = linear_objective(g, r.witness_on(g), x, y, radius);
                CHECK(eval.violation < 1e-7);
                CHECK(std::abs(eval.value - r.value) < 1e-7);
                CHECK(k_linear_sampling_oracle(g, x, y, radius, 30, seed) >= r.value - 1e-7);
            }
        }
    }
}

TEST_CASE("Ollivier LP matches the integer-profile oracle") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto g = gnp_graph(8, 0.4, seed);
        for (const auto& e : g.edges()) {
            if (g.ball(e.u, 1).size() + g.ball(e.v, 1).size() > 12) continue;
            CHECK(k_ollivier(g, e.u, e.v).value == doctest::Approx(ollivier_integer_oracle(g, e.u, e.v)));
        }
    }
}

TEST_CASE("Ollivier curvature dominates K_1") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = random_weighted(10, 0.4, seed);
        for (const auto& e : g.edges()) {
            for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                CHECK(k_ollivier(g, x, y).value >= k_linear(g, x, y, 1).value - 1e-8);
            }
        }
    }
}

TEST_CASE("curvature is bounded below by minus the defect") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = gnp_graph(10, 0.4, seed);
        for (int radius = 1; radius <= 2; ++radius) {
            for (const auto& [x, y] : pairs_within(g, radius)) {
                const auto r = k_linear(g, x, y, radius);
                const auto& cert = *r.transport;
                CHECK(cert.map_exists() == std::isfinite(r.value));
                if (cert.map_exists()) CHECK(r.value >= -*cert.defect - 1e-8);
                if (cert.defect == 0) {
                    CHECK(r.value >= -1e-9);
                    CHECK(k_linear(g, y, x, radius).value >= -1e-9);
                }
            }
        }
    }
}

TEST_CASE("scaling weights and measures together leaves K_R unchanged") {
    const auto g = random_weighted(9, 0.5, 77);
    std::vector<Edge> scaled_edges;
    for (auto e : g.edges()) scaled_edges.push_back({e.u, e.v, 3.0 * e.weight});
    std::vector<double> measure(g.measures().begin(), g.measures().end());
    for (double& m : measure) m *= 3.0;
    const WeightedGraph scaled(g.size(), scaled_edges, measure);
    for (const auto& [x, y] : pairs_within(g, 2)) {
        const double a = k_linear(g, x, y, 2).value;
        const double b = k_linear(scaled, x, y, 2).value;
        if (std::isfinite(a))
            CHECK(b == doctest::Approx(a).epsilon(1e-9));
        else
            CHECK(a == b);
    }
}

TEST_CASE("growing the LP support does not change the value") {
    const auto g = gnp_graph(12, 0.3, 5);
    for (const auto& [x, y] : pairs_within(g, 2)) {
        const auto base = k_linear(g, x, y, 2);
        if (!std::isfinite(base.value)) continue;
        const auto wide = k_linear(g, x, y, 2, {.extra_support = 2});
        CHECK(wide.value == doctest::Approx(base.value).epsilon(1e-9));
    }
}

TEST_CASE("LP instances are byte-stable") {
    const auto hex = hex_torus(6, 6);
    const Vertex y = hex.ball(0, 2).back();
    REQUIRE(hex.distance(0, y) == 2);
    const auto a = linear_curvature_program(hex, 0, y, 2).lp.dump();
    const auto b = linear_curvature_program(hex, 0, y, 2).lp.dump();
    CHECK(a == b);
}
